#pragma once

#include "mems/expr.hpp"
#include "mems/prover.hpp"
#include "mems/radial_core.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mems {

enum class HrVariant { HR1, HR2, HR3 };

const char* to_string(HrVariant v);
// "hr1", "HR2", ... ; throws std::invalid_argument.
HrVariant parse_variant(std::string_view text);

// Weight of the Hardy-Rellich inequality int (Delta phi)^2 >= int W phi^2.
// HR1 and HR2 need N >= 5, HR3 needs N = 9; throws std::domain_error otherwise.
RadialExpr hr_weight(HrVariant v, int N);

struct PQFunctions {
  RadialExpr phi;
  RadialExpr psi;
  RadialExpr P;
  RadialExpr Q;
};

// phi = r^{-7/2} + r - 19/10, psi = r^{-5/2} + 20 r^{-169/100} + 10/r + 10 r + 7 r^2 - 48,
// P = -(phi'' + 8 phi'/r) / phi, Q = -(psi'' + 6 psi'/r) / psi.
PQFunctions pq_functions(int N = 9);

struct BesselPairSpec {
  RadialExpr V;
  RadialExpr W;
  int N = 5;
  double R = 1.0;
};

struct OdeOptions {
  double r0 = 1e-6;
  // Start from this function instead of the leading power r^k.
  std::optional<RadialExpr> seed;
  double rel_tol = 1e-12;
  double abs_tol = 0.0;
  long max_steps = 2'000'000;
};

struct PositivityReport {
  bool positive_on_interval = false;
  std::optional<double> first_zero;
  double r_start = 0.0;
  double r_end = 0.0;
  // k with y ~ r^k at the origin (from k^2 + a0 k + b0 = 0), NaN when seeded.
  double start_exponent = 0.0;
  std::string start;
  long steps = 0;
  // max |y - seed| / |seed| along the trajectory when seeded.
  std::optional<double> seed_deviation;
  std::string failure;
};

// Integrates y'' + ((N-1)/r + V'/V) y' + (W/V) y = 0 in s = ln r from r0 towards R and reports sign changes.
PositivityReport bessel_ode_positive(const BesselPairSpec& spec, const OdeOptions& opt = {});

// Sign check of a quantity that must be positive on (0,1).
struct SignCheck {
  std::string name;
  double margin = 0.0;
  double argmin = 0.0;
  std::string method;
  bool passed = false;
  std::string detail;
};

// Interval tier: a proof of f > 0 on (0,1). Sampled tier: 10^6 log-uniform points plus endpoint limits.
SignCheck positivity_check(std::string name, const RatFunc& f, Rigor rigor, const ProverOptions& opt = {});

struct SupersolutionReport {
  SignCheck positive;
  // -(y'' + ((N-1)/r + V'/V) y' + (W/V) y) >= 0
  SignCheck residual;
  bool confirmed() const { return positive.passed && residual.passed; }
};

SupersolutionReport supersolution_check(const RadialExpr& y, const BesselPairSpec& spec, Rigor rigor = Rigor::Interval,
                                        const ProverOptions& opt = {});

enum class IntegralBehavior { Convergent, Divergent, Inconclusive };

const char* to_string(IntegralBehavior b);

struct BesselSideConditions {
  // Leading power of V at the origin.
  Rational v_exponent = 0;
  IntegralBehavior inverse_integral = IntegralBehavior::Inconclusive;  // int 1/(r^{N-1} V), needs Divergent
  IntegralBehavior volume_integral = IntegralBehavior::Inconclusive;   // int r^{N-1} V, needs Convergent
  // W - 2V/r^2 + 2V'/r - V'' >= 0
  SignCheck pointwise;
  bool holds() const {
    return inverse_integral == IntegralBehavior::Divergent && volume_integral == IntegralBehavior::Convergent &&
           pointwise.passed;
  }
};

BesselSideConditions bessel_side_conditions(const BesselPairSpec& spec, Rigor rigor = Rigor::Interval, const ProverOptions& opt = {});

// Cell averages of W over the finite-volume cells (r^{N-1} weighted, Gauss-Legendre), for the M-1 interior nodes.
std::vector<double> cell_weights(const RatFunc& W, const RadialGrid& grid);

// (int (Delta phi)^2 - int W phi^2) / int (Delta phi)^2 for phi on the interior nodes.
double form_gap(const RadialGrid& grid, std::span<const double> W_cells, std::span<const double> phi);

struct FormCheckReport {
  HrVariant variant = HrVariant::HR1;
  int N = 0;
  int M = 0;
  int trials = 0;
  int violations = 0;
  double tolerance = 1e-8;
  double worst_gap = 0.0;
  int worst_trial = -1;
  std::string worst_family;
  // min over trials of (int (Delta phi)^2 - int W phi^2) / int phi^2
  double remainder_estimate = 0.0;
};

// Random clamped radial phi: polynomials in r^2 times (1-r^2)^2, interior bumps, and Hardy-type profiles.
FormCheckReport discrete_form_check(HrVariant v, int N, const RadialGrid& grid, int trials, std::uint64_t seed = 1);

struct HrReport {
  HrVariant variant = HrVariant::HR1;
  int N = 0;
  Rigor rigor = Rigor::Interval;
  std::vector<SignCheck> checks;
  bool verdict() const;
};

struct HrVerifyOptions {
  Rigor rigor = Rigor::Interval;
  int M = 2048;
  double gamma = 2.0;
  int trials = 1000;
  std::uint64_t seed = 1;
};

HrReport hr_verify(HrVariant v, int N, const HrVerifyOptions& opt = {});

// y = r^{1-N/2} - alpha against the pair (1, ((N-2)^2/4) / (r^2 - alpha r^{N/2+1})): the symbolic residual
// and the largest interval enclosure width of the residual, relative to the sum of its three term magnitudes,
// over points of [1e-4, 1 - 1e-4].
struct ExactPairResidual {
  bool exact_zero = false;
  double enclosure_width = 0.0;
  bool contains_zero = false;
};

ExactPairResidual exact_pair_residual(int N, const Rational& alpha, int points = 10'000);

}  // namespace mems
