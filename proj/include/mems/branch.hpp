#pragma once

#include "mems/radial_core.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mems {

enum class SolverKind { Monotone, Newton };
enum class SolveStatus { Converged, Touched, MaxIterations, SingularJacobian };
enum class Classification { Regular, Singular };

const char* to_string(SolverKind s);
const char* to_string(SolveStatus s);
const char* to_string(Classification c);

struct SolveOptions {
  double tol = 1e-12;
  int max_iter = 50;
  double touchdown = 1.0 - 1e-3;
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::MaxIterations;
  RadialField field;
  int iterations = 0;
  double last_update = 0.0;
  // Largest decrease u_{n-1} - u_n seen between monotone iterates (0 when monotone).
  double monotonicity_defect = 0.0;

  bool converged() const { return status == SolveStatus::Converged; }
  // touched=true signals lambda beyond the fold, touched=false an exhausted iteration budget.
  bool touched() const { return status == SolveStatus::Touched; }
};

// u_0 = Phi, Delta^2 (u_n - Phi) = lambda / (1 - u_{n-1})^2.
SolveOutcome monotone_solve(double lambda, const BoundaryData& bc, GridPtr grid, SolveOptions opt = {1e-12, 100000});

// Damped Newton on u - Phi - lambda G[(1-u)^-2] = 0, starting from guess (its boundary data is used).
SolveOutcome newton_solve(double lambda, const RadialField& guess, SolveOptions opt = {});

struct ContinuationConfig {
  int N = 2;
  BoundaryData bc;
  int M = 2048;
  double gamma = 2.0;
  // 0 selects lambda_bar/20, or 0.25 when lambda_bar <= 0.
  double step = 0.0;
  double newton_tol = 1e-12;
  int newton_max_iter = 50;
  double touchdown = 1.0 - 1e-3;
  // 0 selects 1e-7 * max(1, lambda).
  double bisection_tol = 0.0;
  // Repeat the sweep on M/2 nodes for the sup-norm extrapolation and the resolution warning.
  bool refinement_check = true;
};

struct BranchPoint {
  double lambda = 0.0;
  RadialField profile;
  double sup_norm = 0.0;
  std::optional<double> mu1;
  SolverKind solver = SolverKind::Newton;
  int iterations = 0;
};

struct ProfileFit {
  double C0 = 0.0;
  double exponent = 0.0;
};

struct BranchResult {
  ContinuationConfig config;
  std::vector<BranchPoint> points;
  double lambda_star_estimate = 0.0;
  std::pair<double, double> bracket{0.0, 0.0};
  RadialField extremal_profile;
  SolveStatus failure = SolveStatus::Touched;
  Classification classification = Classification::Regular;
  ProfileFit fit;
  double sup_norm = 0.0;
  double sup_coarse = 0.0;
  double sup_extrapolated = 0.0;
  std::vector<std::string> warnings;
};

double default_step(int N);
double exponent_fit_window_start(const RadialGrid& grid);
// Least-squares fit of log(1-u) = log C + e log r over r in [2 h^{1/gamma}... , 0.3].
ProfileFit fit_profile(const RadialField& profile);
Classification classify(const ProfileFit& fit, double sup_extrapolated);

BranchResult sweep_branch(const ContinuationConfig& config);

struct PullinBounds {
  Rational lower_exact;
  double lower = 0.0;
  double upper = 0.0;
  bool consistent = false;
};

// max{32(10N - N^2 - 12)/27, lambda_bar} <= lambda* <= 4 nu1 / 27
PullinBounds pullin_bounds(int N, double nu1);

struct SandwichReport {
  double C0 = 0.0;
  double lower_violation = 0.0;
  double lower_argmax = 0.0;
  double upper_violation = 0.0;
  double upper_argmax = 0.0;

  double max_violation() const { return std::max(lower_violation, upper_violation); }
  bool holds(double tol) const { return max_violation() <= tol; }
};

// Violations of 1 - C0 r^{4/3} <= u <= 1 - r^{4/3} with C0 = (lambda*/lambda_bar)^{1/3}.
SandwichReport sandwich_check(const RadialField& profile, double lambda, double lambda_star);

}  // namespace mems
