#pragma once

#include "mems/expr.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mems {

enum class Rigor { Sampled, Interval };

const char* to_string(Rigor r);

struct ProverOptions {
  double min_width = 1e-12;
  long max_boxes = 4'000'000;
  int max_inconclusive = 4;
};

enum class ProofStatus { Proven, Refuted, Inconclusive };

const char* to_string(ProofStatus s);

// Outcome of proving a strict sign on the open interval (0,1).
struct SignProof {
  ProofStatus status = ProofStatus::Inconclusive;
  long boxes = 0;
  std::vector<Interval> inconclusive;
  std::optional<double> counterexample;
  // Order of the zero at r = 1 (0 when the value there is nonzero), per factor proved.
  int zero_order_at_one = 0;
  // (0, near_zero_cut] is decided by the leading term, [near_one_cut, 1) by a Taylor remainder.
  double near_zero_cut = 0.0;
  double near_one_cut = 1.0;
  std::string detail;

  bool proven() const { return status == ProofStatus::Proven; }
};

// g > 0 on (0,1). Endpoint behaviour is decided exactly: the lowest-order coefficient at r -> 0
// and the first nonvanishing derivative at r = 1.
SignProof prove_positive(const GPoly& g, const ProverOptions& opt = {});
// sign * f > 0 on (0,1), with the denominator's sign proved separately.
SignProof prove_sign(const RatFunc& f, int sign, const ProverOptions& opt = {});

struct EndpointLimit {
  enum class Kind { Finite, PlusInfinity, MinusInfinity } kind = Kind::Finite;
  Rational value = 0;

  bool finite() const { return kind == Kind::Finite; }
  double as_double() const;
};

EndpointLimit limit_at_zero(const RatFunc& f);
EndpointLimit limit_at_one(const RatFunc& f);

struct SampleSummary {
  double min = 0.0;
  double argmin = 0.0;
  double max = 0.0;
  double argmax = 0.0;
  size_t points = 0;
};

// Log-uniform samples r = e^t, t in [ln r_min, 0), evaluated through the batched exp-sum kernel.
SampleSummary sample_log_uniform(const RatFunc& f, size_t n = 1'000'000, double r_min = 1e-12);

// Extremum of f over (0,1): the sampled estimate (including finite endpoint limits, refined locally),
// and for Rigor::Interval a proved bound (upper for sup, lower for inf).
struct ExtremumBound {
  double sampled = 0.0;
  double argument = 0.0;
  double bound = 0.0;
  // The proved bound as the exact rational it was certified with.
  Rational exact_bound = 0;
  bool certified = false;
  bool at_endpoint = false;
  long boxes = 0;
};

ExtremumBound sup_bound(const RatFunc& f, Rigor rigor, const ProverOptions& opt = {});
ExtremumBound inf_bound(const RatFunc& f, Rigor rigor, const ProverOptions& opt = {});

// Minimum of f over (0,1) from samples and endpoint limits, with its location (0 or 1 for limits).
struct MarginEstimate {
  double value = 0.0;
  double argmin = 0.0;
  bool boundary_limit = false;
};

MarginEstimate estimate_margin(const RatFunc& f);

}  // namespace mems
