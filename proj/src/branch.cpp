#include "mems/branch.hpp"

#include "mems/simd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mems {

const char* to_string(SolverKind s) { return s == SolverKind::Monotone ? "monotone" : "newton"; }

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged:
      return "converged";
    case SolveStatus::Touched:
      return "touched";
    case SolveStatus::MaxIterations:
      return "max_iterations";
    case SolveStatus::SingularJacobian:
      return "singular_jacobian";
  }
  return "unknown";
}

const char* to_string(Classification c) { return c == Classification::Singular ? "Singular" : "Regular"; }

namespace {

constexpr BoundaryData kHomogeneous{0.0, 0.0};

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double sup_of(std::span<const double> v) { return *std::max_element(v.begin(), v.end()); }

}  // namespace

SolveOutcome monotone_solve(double lambda, const BoundaryData& bc, GridPtr grid, SolveOptions opt) {
  if (lambda < 0.0) throw std::invalid_argument("lambda must be >= 0");
  if (!bc.admissible()) throw std::invalid_argument("boundary data not admissible");
  const ClampedSolver G(grid);
  const int M = grid->size();
  const size_t n = M - 1;
  const auto& kt = simd::kernels();

  SolveOutcome out;
  out.field.grid = grid;
  out.field.boundary = bc;

  const std::vector<double> zero(n, 0.0);
  const std::vector<double> phi = G.solve(zero, bc);
  std::vector<double> u = phi;
  std::vector<double> f(n), next(M);
  for (int it = 1; it <= opt.max_iter; ++it) {
    kt.reaction(u.data(), lambda, f.data(), nullptr, n);
    G.solve(f, kHomogeneous, next);
    double diff = 0.0;
    for (int i = 0; i < M; ++i) {
      next[i] += phi[i];
      out.monotonicity_defect = std::max(out.monotonicity_defect, u[i] - next[i]);
      diff = std::max(diff, std::abs(next[i] - u[i]));
    }
    u.swap(next);
    out.iterations = it;
    out.last_update = diff;
    if (!(sup_of(u) < opt.touchdown)) {
      out.status = SolveStatus::Touched;
      return out;
    }
    if (diff < opt.tol) {
      out.status = SolveStatus::Converged;
      out.field.values = std::move(u);
      return out;
    }
  }
  out.status = SolveStatus::MaxIterations;
  return out;
}

SolveOutcome newton_solve(double lambda, const RadialField& guess, SolveOptions opt) {
  if (!guess.grid) throw std::invalid_argument("guess without grid");
  if (lambda < 0.0) throw std::invalid_argument("lambda must be >= 0");
  if (!(guess.sup() < 1.0)) throw std::domain_error("guess must satisfy sup u < 1");
  const GridPtr& grid = guess.grid;
  const BoundaryData bc = guess.boundary;
  const ClampedSolver G(grid);
  const int M = grid->size();
  const size_t n = M - 1;
  const auto& kt = simd::kernels();

  SolveOutcome out;
  out.field.grid = grid;
  out.field.boundary = bc;

  const std::vector<double> zero(n, 0.0);
  const std::vector<double> phi = G.solve(zero, bc);
  std::vector<double> u = guess.values;
  if (static_cast<int>(u.size()) != M) throw std::invalid_argument("guess size mismatch");
  u[M - 1] = bc.alpha;

  std::vector<double> f(n), q(n), Gf(M), R(n), b(n), dx(n), trial(M);
  for (int it = 0; it <= opt.max_iter; ++it) {
    if (!(sup_of(u) < opt.touchdown)) {
      out.status = SolveStatus::Touched;
      out.iterations = it;
      return out;
    }
    kt.reaction(u.data(), lambda, f.data(), q.data(), n);
    G.solve(f, kHomogeneous, Gf);
    for (size_t i = 0; i < n; ++i) R[i] = u[i] - phi[i] - Gf[i];
    const double rnorm = max_abs(R);
    if (rnorm <= opt.tol) {
      out.status = SolveStatus::Converged;
      out.iterations = it;
      out.field.values = std::move(u);
      return out;
    }
    if (it == opt.max_iter) break;

    for (size_t i = 0; i < n; ++i) b[i] = -R[i];
    if (!G.solve_shifted(q, b, dx)) {
      out.status = SolveStatus::SingularJacobian;
      out.iterations = it;
      return out;
    }

    double t = 1.0;
    for (;;) {
      for (size_t i = 0; i < n; ++i) trial[i] = u[i] + t * dx[i];
      trial[M - 1] = bc.alpha;
      if (sup_of(trial) < opt.touchdown) break;
      t *= 0.5;
      if (t < 1e-6) {
        out.status = SolveStatus::Touched;
        out.iterations = it + 1;
        return out;
      }
    }
    u.swap(trial);
    out.last_update = t * max_abs(dx);
    out.iterations = it + 1;
    if (out.last_update < opt.tol) {
      out.status = SolveStatus::Converged;
      out.field.values = std::move(u);
      return out;
    }
  }
  out.status = SolveStatus::MaxIterations;
  return out;
}

double default_step(int N) {
  const double lb = lambda_bar(N);
  return lb > 0.0 ? lb / 20.0 : 0.25;
}

double exponent_fit_window_start(const RadialGrid& grid) {
  return 2.0 * std::pow(1.0 / grid.size(), 1.0 / grid.grading());
}

ProfileFit fit_profile(const RadialField& profile) {
  const auto& r = profile.grid->nodes();
  const double r_lo = exponent_fit_window_start(*profile.grid);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (size_t i = 0; i < r.size(); ++i) {
    if (r[i] < r_lo || r[i] > 0.3) continue;
    const double gap = 1.0 - profile.values[i];
    if (!(gap > 0.0)) continue;
    const double x = std::log(r[i]);
    const double y = std::log(gap);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  ProfileFit fit;
  if (n < 2) return fit;
  const double det = n * sxx - sx * sx;
  fit.exponent = (n * sxy - sx * sy) / det;
  fit.C0 = std::exp((sy - fit.exponent * sx) / n);
  return fit;
}

Classification classify(const ProfileFit& fit, double sup_extrapolated) {
  const bool exponent_ok = std::abs(fit.exponent - 4.0 / 3.0) <= 0.15;
  const bool touches = std::abs(sup_extrapolated - 1.0) <= 2e-2;
  return exponent_ok && touches ? Classification::Singular : Classification::Regular;
}

namespace {

struct SweepCore {
  std::vector<BranchPoint> points;
  std::pair<double, double> bracket;
  RadialField extremal;
  SolveStatus failure = SolveStatus::Touched;
};

SweepCore run_sweep(const ContinuationConfig& cfg, int M) {
  const GridPtr grid = build_grid(cfg.N, M, cfg.gamma);
  const double step = cfg.step > 0.0 ? cfg.step : default_step(cfg.N);
  const SolveOptions opt{cfg.newton_tol, cfg.newton_max_iter, cfg.touchdown};

  SweepCore core;
  RadialField seed{grid, std::vector<double>(M, cfg.bc.alpha), cfg.bc};
  SolveOutcome first = newton_solve(0.0, seed, opt);
  if (!first.converged()) throw std::runtime_error("lambda = 0 solve failed");

  auto record = [&](double lambda, const SolveOutcome& o) {
    BranchPoint p;
    p.lambda = lambda;
    p.profile = o.field;
    p.sup_norm = o.field.sup();
    p.solver = SolverKind::Newton;
    p.iterations = o.iterations;
    core.points.push_back(std::move(p));
  };
  record(0.0, first);

  double lo = 0.0;
  RadialField last = first.field;
  double hi = 0.0;
  for (;;) {
    const double next = lo + step;
    SolveOutcome o = newton_solve(next, last, opt);
    if (!o.converged()) {
      hi = next;
      core.failure = o.status;
      break;
    }
    lo = next;
    last = o.field;
    record(lo, o);
  }

  for (;;) {
    const double tol = cfg.bisection_tol > 0.0 ? cfg.bisection_tol : 1e-7 * std::max(1.0, lo);
    if (hi - lo <= tol) break;
    const double mid = 0.5 * (lo + hi);
    SolveOutcome o = newton_solve(mid, last, opt);
    if (o.converged()) {
      lo = mid;
      last = std::move(o.field);
    } else {
      hi = mid;
      core.failure = o.status;
    }
  }
  if (core.points.back().lambda < lo) {
    BranchPoint p;
    p.lambda = lo;
    p.profile = last;
    p.sup_norm = last.sup();
    core.points.push_back(std::move(p));
  }
  core.bracket = {lo, hi};
  core.extremal = std::move(last);
  return core;
}

}  // namespace

BranchResult sweep_branch(const ContinuationConfig& config) {
  if (!config.bc.admissible()) throw std::invalid_argument("boundary data not admissible");
  if (!(config.touchdown < 1.0) || !(config.touchdown > 0.0)) throw std::invalid_argument("touchdown must lie in (0,1)");
  if (!(config.newton_tol > 0.0) || config.bisection_tol < 0.0 || config.step < 0.0)
    throw std::invalid_argument("tolerances must be positive");

  BranchResult out;
  out.config = config;
  SweepCore fine = run_sweep(config, config.M);
  out.points = std::move(fine.points);
  out.bracket = fine.bracket;
  out.lambda_star_estimate = 0.5 * (fine.bracket.first + fine.bracket.second);
  out.extremal_profile = std::move(fine.extremal);
  out.failure = fine.failure;
  out.fit = fit_profile(out.extremal_profile);
  out.sup_norm = out.extremal_profile.sup();
  out.sup_extrapolated = out.sup_norm;

  if (config.refinement_check && config.M / 2 >= 16) {
    SweepCore coarse = run_sweep(config, config.M / 2);
    out.sup_coarse = coarse.extremal.sup();
    out.sup_extrapolated = out.sup_norm + (out.sup_norm - out.sup_coarse) / 3.0;
    const ProfileFit coarse_fit = fit_profile(coarse.extremal);
    const bool fine_exp = std::abs(out.fit.exponent - 4.0 / 3.0) <= 0.15;
    const bool coarse_exp = std::abs(coarse_fit.exponent - 4.0 / 3.0) <= 0.15;
    if (fine_exp != coarse_exp)
      out.warnings.push_back("grid resolution: exponent fit disagrees between M and M/2");
  } else {
    out.sup_coarse = out.sup_norm;
  }
  out.classification = classify(out.fit, out.sup_extrapolated);
  return out;
}

PullinBounds pullin_bounds(int N, double nu1) {
  if (!(nu1 > 0.0)) throw std::invalid_argument("nu1 must be positive");
  const Rational quad = Rational(32) * (10 * N - N * N - 12) / 27;
  const Rational lb = lambda_bar_exact(N);
  PullinBounds b;
  b.lower_exact = quad > lb ? quad : lb;
  b.lower = to_double(b.lower_exact);
  b.upper = 4.0 * nu1 / 27.0;
  b.consistent = b.lower < b.upper;
  return b;
}

SandwichReport sandwich_check(const RadialField& profile, double lambda, double lambda_star) {
  const int N = profile.grid->dimension();
  if (N < 9) throw std::domain_error("sandwich bounds need N >= 9");
  if (!(lambda >= 0.0) || lambda > lambda_star * (1.0 + 1e-6))
    throw std::invalid_argument("profile lambda must not exceed lambda*");
  SandwichReport rep;
  rep.C0 = std::cbrt(lambda_star / lambda_bar(N));
  const auto& r = profile.grid->nodes();
  for (size_t i = 0; i < r.size(); ++i) {
    const double p = std::pow(r[i], 4.0 / 3.0);
    const double lower_gap = (1.0 - rep.C0 * p) - profile.values[i];
    const double upper_gap = profile.values[i] - (1.0 - p);
    if (lower_gap > rep.lower_violation) {
      rep.lower_violation = lower_gap;
      rep.lower_argmax = r[i];
    }
    if (upper_gap > rep.upper_violation) {
      rep.upper_violation = upper_gap;
      rep.upper_argmax = r[i];
    }
  }
  return rep;
}

}  // namespace mems
