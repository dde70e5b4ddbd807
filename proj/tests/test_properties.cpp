#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mems/branch.hpp"
#include "mems/stability.hpp"

#include <cmath>
#include <random>

using namespace mems;

namespace {

struct Case {
  int N;
  BoundaryData bc;
};

// Random dimension and admissible boundary data.
Case draw(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dim(1, 16);
  std::uniform_real_distribution<double> a(-0.3, 0.3), b(-0.5, 0.0);
  Case c{dim(rng), {a(rng), b(rng)}};
  REQUIRE(c.bc.admissible());
  return c;
}

BranchResult sweep(const Case& c) {
  ContinuationConfig cfg;
  cfg.N = c.N;
  cfg.bc = c.bc;
  cfg.M = 512;
  cfg.refinement_check = false;
  return sweep_branch(cfg);
}

double max_increase(const std::vector<double>& u) {
  double worst = 0.0;
  for (size_t i = 0; i + 1 < u.size(); ++i) worst = std::max(worst, u[i + 1] - u[i]);
  return worst;
}

}  // namespace

TEST_CASE("properties hold for seeds 1, 2, 3") {
  for (std::uint64_t seed : {1, 2, 3}) {
    std::mt19937_64 rng(seed);
    for (int k = 0; k < 3; ++k) {
      const Case c = draw(rng);
      CAPTURE(seed);
      CAPTURE(c.N);
      CAPTURE(c.bc.alpha);
      CAPTURE(c.bc.beta);
      const BranchResult b = sweep(c);
      REQUIRE(b.points.size() >= 2);

      {  // branch monotonicity and radial decrease
        for (size_t i = 0; i < b.points.size(); ++i) {
          const auto& u = b.points[i].profile.values;
          CHECK(max_increase(u) <= 1e-10);
          if (i == 0) continue;
          const auto& prev = b.points[i - 1].profile.values;
          double worst = 0.0;
          for (size_t j = 0; j < u.size(); ++j) worst = std::max(worst, prev[j] - u[j]);
          CHECK(worst <= 1e-10);
        }
      }

      {  // monotone iterates and solver agreement
        std::uniform_real_distribution<double> frac(0.2, 0.9);
        const double lambda = frac(rng) * b.bracket.first;
        CAPTURE(lambda);
        const GridPtr g = b.points.front().profile.grid;
        const SolveOutcome m = monotone_solve(lambda, c.bc, g);
        REQUIRE(m.converged());
        CHECK(m.monotonicity_defect <= 1e-12);
        const SolveOutcome n = newton_solve(lambda, b.points.front().profile);
        REQUIRE(n.converged());
        double d = 0.0;
        for (size_t j = 0; j < m.field.values.size(); ++j) d = std::max(d, std::abs(m.field.values[j] - n.field.values[j]));
        CHECK(d < 1e-8);
        CHECK(max_increase(m.field.values) <= 1e-10);
      }

      {  // stability is positive below the fold
        const size_t last = b.points.size() - 1;
        for (size_t i : {size_t{0}, last / 2, last - 1}) {
          const EigenResult e = mu1(b.points[i].profile, b.points[i].lambda);
          CHECK(e.definite);
          CHECK(e.value > 0.0);
        }
      }
    }
  }
}
