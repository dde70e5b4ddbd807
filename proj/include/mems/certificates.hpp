#pragma once

#include "mems/expr.hpp"
#include "mems/hardy_rellich.hpp"
#include "mems/prover.hpp"

#include <string>
#include <vector>

namespace mems {

// w_m = 1 - (3m/(3m-4)) r^{4/3} + (4/(3m-4)) r^m with the constants of a singularity certificate.
struct CandidateW {
  Rational m = 3;
  int N = 10;
  Rational lambda_prime = 0;
  Rational beta = 0;
  HrVariant variant = HrVariant::HR2;
};

// Throw std::domain_error for m <= 4/3.
RadialExpr wm_expr(const Rational& m);
RadialExpr wm_bilaplacian_expr(const Rational& m, int N);
double wm_value(double m, double r);
double wm_bilaplacian(double m, int N, double r);

struct ConditionReport {
  // lambda' for cond1, beta for cond2
  double value = 0.0;
  // min over (0,1) of lambda'/(1-w)^2 - Delta^2 w, or of W (1-w)^3 / 2 - beta
  double margin = 0.0;
  double argmin = 0.0;
  bool boundary_limit = false;
  bool holds = false;
  std::string method;
  std::string detail;
  long boxes = 0;
};

ConditionReport check_cond1(const CandidateW& c, Rigor rigor, const ProverOptions& opt = {});
// The weight must be the one of c.variant in dimension c.N.
ConditionReport check_cond2(const CandidateW& c, const RadialExpr& weight, Rigor rigor, const ProverOptions& opt = {});
ConditionReport check_cond2(const CandidateW& c, Rigor rigor, const ProverOptions& opt = {});

// Delta^2 w (1-w)^2, whose sup is the least admissible lambda'.
RatFunc cond1_ratio(const CandidateW& c);
// W (1-w)^3 / 2, whose inf is the largest admissible beta.
RatFunc cond2_ratio(const CandidateW& c, const RadialExpr& weight);

enum class Verdict { Pass, Fail };

const char* to_string(Verdict v);

struct Claim {
  std::string label;
  bool supported = false;
  std::string detail;
};

struct CertificateReport {
  CandidateW candidate;
  Rigor rigor = Rigor::Interval;
  // Conditions at the candidate's own lambda' and beta.
  ConditionReport cond1;
  ConditionReport cond2;
  Verdict candidate_verdict = Verdict::Fail;

  // Sampled sharpest values and, in the interval tier, proved bounds (upper for lambda', lower for beta).
  double sharpest_lambda_prime = 0.0;
  double sharpest_beta = 0.0;
  double lambda_prime_bound = 0.0;
  double beta_bound = 0.0;
  bool bounds_certified = false;
  // Bounds rounded outward to 4 significant digits; the verdict is decided with these.
  Rational lambda_prime_computed = 0;
  Rational beta_computed = 0;
  ConditionReport cond1_computed;
  ConditionReport cond2_computed;
  Verdict verdict = Verdict::Fail;

  std::vector<Claim> claims;
  std::string note;
};

CertificateReport certify(const CandidateW& c, Rigor rigor, const ProverOptions& opt = {});

// Candidate of the tabulated case for N >= 9; throws std::domain_error below.
CandidateW dimension_candidate(int N);
CertificateReport certify_dimension(int N, Rigor rigor = Rigor::Interval, const ProverOptions& opt = {});

// Rounds x > 0 to `digits` significant decimal digits, upwards or downwards.
Rational round_significant(const Rational& x, int digits, bool up);

struct ThresholdRelation {
  int N = 0;
  Rational two_lambda_bar = 0;
  Rational hardy = 0;
  bool holds = false;
};

// 2 lambda_bar_N <= H_N, exactly; N >= 5.
ThresholdRelation threshold_relation(int N);

struct Table1Row {
  int N = 0;
  Rational m = 0;
  std::string lambda_prime_claimed;
  std::string beta_claimed;
  CertificateReport report;
};

std::vector<int> table1_default_dimensions();
std::vector<Table1Row> table1(const std::vector<int>& dims, Rigor rigor = Rigor::Interval, const ProverOptions& opt = {});
std::string table1_markdown(const std::vector<Table1Row>& rows);
std::string table1_csv(const std::vector<Table1Row>& rows);

// Decimal rendering used in tables and reports.
std::string format_rational(const Rational& q, int digits = 10);

}  // namespace mems
