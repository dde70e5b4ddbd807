#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mems/branch.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace mems;

namespace {

double sup_diff(const RadialField& a, const RadialField& b) {
  double d = 0.0;
  for (size_t i = 0; i < a.values.size(); ++i) d = std::max(d, std::abs(a.values[i] - b.values[i]));
  return d;
}

RadialField zero_field(const GridPtr& g) { return sample(g, {}, [](double) { return 0.0; }); }

}  // namespace

TEST_CASE("monotone scheme at lambda = 0 returns the lift") {
  const GridPtr g = build_grid(3, 256);
  const SolveOutcome z = monotone_solve(0.0, {}, g);
  REQUIRE(z.converged());
  CHECK(z.iterations <= 1);
  for (double v : z.field.values) CHECK(v == 0.0);

  const BoundaryData bc{0.2, -0.5};
  const SolveOutcome p = monotone_solve(0.0, bc, g);
  REQUIRE(p.converged());
  for (size_t i = 0; i < g->nodes().size(); ++i) {
    const double r = g->nodes()[i];
    CHECK(p.field.values[i] == doctest::Approx(0.45 - 0.25 * r * r).epsilon(1e-14));
  }
}

TEST_CASE("Newton at lambda = 0 returns the lift in one step") {
  const GridPtr g = build_grid(4, 256);
  const BoundaryData bc{0.2, -0.5};
  const SolveOutcome n = newton_solve(0.0, sample(g, bc, [](double) { return 0.0; }));
  REQUIRE(n.converged());
  CHECK(n.iterations <= 1);
  for (size_t i = 0; i < g->nodes().size(); ++i) {
    const double r = g->nodes()[i];
    CHECK(n.field.values[i] == doctest::Approx(0.45 - 0.25 * r * r).epsilon(1e-13));
  }
}

TEST_CASE("N=2, lambda=4 regression and comparison bounds") {
  const GridPtr g = build_grid(2, 4096);
  const SolveOutcome m = monotone_solve(4.0, {}, g);
  REQUIRE(m.converged());
  const double s = m.field.sup();
  CHECK(s > 0.0);
  CHECK(s < 1.0);
  // frozen from a tol 1e-12 run at M=4096
  CHECK(s == doctest::Approx(0.068388315440281).epsilon(1e-11));
  // 1 <= (1-u)^-2 <= (1-s)^-2 and G[1](0) = 1/(8N(N+2)) = 1/64
  CHECK(s >= 4.0 / 64.0);
  CHECK(s <= 4.0 / 64.0 / ((1 - s) * (1 - s)));
  CHECK(m.monotonicity_defect == 0.0);
}

TEST_CASE("Newton and monotone agree at N=3, lambda=10") {
  const GridPtr g = build_grid(3, 2048);
  const SolveOutcome a = monotone_solve(10.0, {}, g);
  const SolveOutcome b = newton_solve(10.0, zero_field(g));
  REQUIRE(a.converged());
  REQUIRE(b.converged());
  CHECK(sup_diff(a.field, b.field) < 1e-8);
}

TEST_CASE("warm-started Newton converges quickly") {
  const GridPtr g = build_grid(2, 4096);
  const SolveOutcome a = monotone_solve(4.0, {}, g);
  REQUIRE(a.converged());
  const SolveOutcome b = newton_solve(4.1, a.field);
  REQUIRE(b.converged());
  CHECK(b.iterations <= 8);
  CHECK(b.field.sup() > a.field.sup());
}

TEST_CASE("beyond the fold the solvers fail") {
  const GridPtr g = build_grid(2, 512);
  const SolveOutcome m = monotone_solve(20.0, {}, g);
  CHECK_FALSE(m.converged());
  CHECK(m.touched());
  const SolveOutcome n = newton_solve(20.0, zero_field(g));
  CHECK_FALSE(n.converged());
}

TEST_CASE("solver preconditions") {
  const GridPtr g = build_grid(2, 64);
  CHECK_THROWS_AS(monotone_solve(1.0, BoundaryData{0.0, 1.0}, g), std::invalid_argument);
  CHECK_THROWS_AS(monotone_solve(1.0, BoundaryData{1.2, 0.0}, g), std::invalid_argument);
  CHECK_THROWS_AS(monotone_solve(-1.0, {}, g), std::invalid_argument);
  RadialField touching = sample(g, {}, [](double) { return 1.0; });
  CHECK_THROWS(newton_solve(1.0, touching));
}

TEST_CASE("pull-in bounds in exact arithmetic") {
  const PullinBounds b2 = pullin_bounds(2, 104.363106);
  CHECK(b2.lower_exact == Rational(128, 27));
  CHECK(b2.lower == doctest::Approx(4.7407407407));
  CHECK(b2.upper == doctest::Approx(4 * 104.363106 / 27));
  CHECK(b2.consistent);

  const PullinBounds b9 = pullin_bounds(9, 3604.878545);
  CHECK(b9.lower_exact == Rational(3800, 81));
  CHECK(b9.lower_exact == oracle::lambda_bar(9));
  CHECK(b9.consistent);

  for (int N = 1; N <= 16; ++N) {
    const Rational quad = Rational(32 * (10 * N - N * N - 12), 27);
    const Rational expect = std::max(quad, oracle::lambda_bar(N));
    CHECK(pullin_bounds(N, 1e4).lower_exact == expect);
  }
  // a tiny nu1 puts the upper bound below the lower one
  CHECK_FALSE(pullin_bounds(9, 1.0).consistent);
}

TEST_CASE("sandwich examples") {
  const GridPtr g = build_grid(9, 2048);
  const double lb = lambda_bar(9);
  const RadialField exact = sample(g, {}, [](double r) { return 1.0 - std::pow(r, 4.0 / 3.0); });
  const SandwichReport e = sandwich_check(exact, lb, lb);
  CHECK(e.C0 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(e.max_violation() <= 1e-14);
  CHECK(e.holds(0.0 + 1e-14));

  const SandwichReport z = sandwich_check(zero_field(g), lb, lb);
  CHECK(z.upper_violation == 0.0);
  CHECK(z.lower_violation > 0.9);
  CHECK(z.lower_argmax < 0.1);
  CHECK_FALSE(z.holds(5e-2));

  CHECK(sandwich_check(exact, lb, 8 * lb).C0 == doctest::Approx(2.0));
  CHECK_THROWS(sandwich_check(zero_field(build_grid(8, 64)), 1.0, 1.0));
}

TEST_CASE("profile fit and classification rule") {
  const GridPtr g = build_grid(12, 2048);
  const RadialField u = sample(g, {}, [](double r) { return 1.0 - 2.0 * std::pow(r, 4.0 / 3.0); });
  const ProfileFit f = fit_profile(u);
  CHECK(f.C0 == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(f.exponent == doctest::Approx(4.0 / 3.0).epsilon(1e-10));
  CHECK(classify({1.6, 1.30}, 0.995) == Classification::Singular);
  CHECK(classify({1.6, 1.10}, 0.995) == Classification::Regular);
  CHECK(classify({1.6, 1.30}, 0.90) == Classification::Regular);
  CHECK(classify({0.7, 0.10}, 0.50) == Classification::Regular);
}

TEST_CASE("default continuation step") {
  CHECK(default_step(9) == doctest::Approx(lambda_bar(9) / 20));
  CHECK(default_step(2) == 0.25);
  CHECK(default_step(1) == 0.25);
}

TEST_CASE("N=2 sweep brackets lambda* inside the bounds") {
  ContinuationConfig c;
  c.N = 2;
  c.M = 1024;
  const BranchResult b = sweep_branch(c);
  const double lo = 128.0 / 27.0, hi = 4 * oracle::plate_nu1(2) / 27;
  CHECK(b.bracket.first >= lo);
  CHECK(b.bracket.second <= hi);
  CHECK(b.bracket.second - b.bracket.first <= 1e-7 * b.bracket.second);
  CHECK(b.bracket.first <= b.lambda_star_estimate);
  CHECK(b.lambda_star_estimate <= b.bracket.second);
  for (const auto& p : b.points) CHECK(p.lambda < b.bracket.second);
  CHECK(b.classification == Classification::Regular);
  CHECK(b.extremal_profile.sup() < 1.0);
  CHECK(b.sup_coarse > 0.0);
}

TEST_CASE("N=9 sweep is singular and below the tabulated upper bound") {
  ContinuationConfig c;
  c.N = 9;
  c.M = 1024;
  const BranchResult b = sweep_branch(c);
  CHECK(b.lambda_star_estimate > lambda_bar(9));
  CHECK(b.lambda_star_estimate <= 366.0);
  CHECK(b.classification == Classification::Singular);
  CHECK(std::abs(b.fit.exponent - 4.0 / 3.0) <= 0.15);
  CHECK(b.sup_extrapolated >= 0.98);
}

TEST_CASE("N=8 sweep is regular") {
  ContinuationConfig c;
  c.N = 8;
  c.M = 1024;
  const BranchResult b = sweep_branch(c);
  CHECK(b.classification == Classification::Regular);
  CHECK(b.lambda_star_estimate > lambda_bar(8));
}

TEST_CASE("sweep rejects inadmissible data") {
  ContinuationConfig c;
  c.N = 3;
  c.M = 64;
  c.bc = {0.5, 0.5};
  CHECK_THROWS(sweep_branch(c));
}
