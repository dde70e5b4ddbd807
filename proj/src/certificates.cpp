#include "mems/certificates.hpp"

#include "mems/radial_core.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

namespace mems {

namespace {

using E = RadialExpr;

const Rational kFourThirds = Rational(4) / 3;

void require_m(const Rational& m) {
  if (m <= kFourThirds) throw std::domain_error("w_m needs m > 4/3");
}

Rational coef_a(const Rational& m) { return 3 * m / (3 * m - 4); }
Rational coef_b(const Rational& m) { return Rational(4) / (3 * m - 4); }

// 1 - w_m, built without the cancelling constant.
E one_minus_w(const Rational& m) { return E::power(kFourThirds, coef_a(m)) - E::power(m, coef_b(m)); }

ConditionReport evaluate(const RatFunc& F, double value, Rigor rigor, const ProverOptions& opt) {
  ConditionReport c;
  c.value = value;
  const MarginEstimate m = estimate_margin(F);
  c.margin = m.value;
  c.argmin = m.argmin;
  c.boundary_limit = m.boundary_limit;
  if (rigor == Rigor::Sampled) {
    c.method = "sampled";
    c.holds = m.value >= -1e-10 * std::max(1.0, std::abs(value));
    if (m.boundary_limit) c.detail = m.argmin == 0.0 ? "minimum as r -> 0" : "boundary-limit: minimum as r -> 1";
    return c;
  }
  c.method = "interval";
  const SignProof p = prove_sign(F, +1, opt);
  c.holds = p.proven();
  c.boxes = p.boxes;
  std::ostringstream d;
  d << to_string(p.status) << ", " << p.boxes << " boxes";
  if (m.boundary_limit && m.argmin == 1.0) d << ", boundary-limit at r -> 1";
  if (p.counterexample) d << ", counterexample r = " << *p.counterexample;
  if (!p.detail.empty()) d << ", " << p.detail;
  c.detail = d.str();
  return c;
}

bool ordering_holds(const Rational& lambda_prime, const Rational& beta, int N) {
  return beta > lambda_prime || (beta == lambda_prime && beta == hardy_constant_exact(N) / 2);
}

Verdict verdict_of(bool ok) { return ok ? Verdict::Pass : Verdict::Fail; }

const std::map<int, std::pair<const char*, const char*>>& claimed_table() {
  static const std::map<int, std::pair<const char*, const char*>> t = {
      {9, {"366", "366.5"}},   {10, {"450", "487"}},   {11, {"560", "739"}},    {12, {"680", "1071"}},
      {13, {"802", "1495"}},   {14, {"940", "2026"}},  {15, {"1100", "2678"}},  {16, {"1260", "3469"}},
  };
  return t;
}

}  // namespace

const char* to_string(Verdict v) { return v == Verdict::Pass ? "Pass" : "Fail"; }

RadialExpr wm_expr(const Rational& m) {
  require_m(m);
  return E(1) - E::power(kFourThirds, coef_a(m)) + E::power(m, coef_b(m));
}

RadialExpr wm_bilaplacian_expr(const Rational& m, int N) {
  require_m(m);
  E out = E::power(Rational(-8) / 3, coef_a(m) * lambda_bar_exact(N));
  const Rational c = coef_b(m) * power_bilaplacian_coeff(m, N);
  if (c != 0) out = out + E::power(m - 4, c);
  return out;
}

double wm_value(double m, double r) {
  if (m <= 4.0 / 3.0) throw std::domain_error("w_m needs m > 4/3");
  return 1.0 - 3.0 * m / (3.0 * m - 4.0) * std::pow(r, 4.0 / 3.0) + 4.0 / (3.0 * m - 4.0) * std::pow(r, m);
}

double wm_bilaplacian(double m, int N, double r) {
  if (m <= 4.0 / 3.0) throw std::domain_error("w_m needs m > 4/3");
  return 3.0 * m / (3.0 * m - 4.0) * lambda_bar(N) * std::pow(r, -8.0 / 3.0) +
         4.0 / (3.0 * m - 4.0) * power_bilaplacian_coeff(m, N) * std::pow(r, m - 4.0);
}

RatFunc cond1_ratio(const CandidateW& c) {
  const E omw = one_minus_w(c.m);
  return (wm_bilaplacian_expr(c.m, c.N) * omw * omw).normalize();
}

RatFunc cond2_ratio(const CandidateW& c, const RadialExpr& weight) {
  const E omw = one_minus_w(c.m);
  return (weight * omw * omw * omw / E(2)).normalize();
}

ConditionReport check_cond1(const CandidateW& c, Rigor rigor, const ProverOptions& opt) {
  const E omw = one_minus_w(c.m);
  const RatFunc F = (E(c.lambda_prime) / (omw * omw) - wm_bilaplacian_expr(c.m, c.N)).normalize();
  return evaluate(F, to_double(c.lambda_prime), rigor, opt);
}

ConditionReport check_cond2(const CandidateW& c, const RadialExpr& weight, Rigor rigor, const ProverOptions& opt) {
  const RatFunc F = cond2_ratio(c, weight) - RatFunc(GPoly(c.beta));
  return evaluate(F, to_double(c.beta), rigor, opt);
}

ConditionReport check_cond2(const CandidateW& c, Rigor rigor, const ProverOptions& opt) {
  return check_cond2(c, hr_weight(c.variant, c.N), rigor, opt);
}

Rational round_significant(const Rational& x, int digits, bool up) {
  if (x <= 0) throw std::domain_error("round_significant needs x > 0");
  auto pow10 = [](int e) {
    Rational p = 1;
    for (int i = 0; i < std::abs(e); ++i) p *= 10;
    return e >= 0 ? p : Rational(1) / p;
  };
  int e = static_cast<int>(std::floor(std::log10(to_double(x)))) - (digits - 1);
  const Rational hi = pow10(digits);
  const Rational lo = pow10(digits - 1);
  Rational q = x / pow10(e);
  while (q >= hi) q = x / pow10(++e);
  while (q < lo) q = x / pow10(--e);
  using boost::multiprecision::cpp_int;
  const cpp_int n = numerator(q);
  const cpp_int d = denominator(q);
  cpp_int f = n / d;
  if (up && f * d != n) f += 1;
  return Rational(f) * pow10(e);
}

CertificateReport certify(const CandidateW& c, Rigor rigor, const ProverOptions& opt) {
  CertificateReport rep;
  rep.candidate = c;
  rep.rigor = rigor;
  const RadialExpr weight = hr_weight(c.variant, c.N);

  rep.cond1 = check_cond1(c, rigor, opt);
  rep.cond2 = check_cond2(c, weight, rigor, opt);
  rep.candidate_verdict = verdict_of(rep.cond1.holds && rep.cond2.holds && ordering_holds(c.lambda_prime, c.beta, c.N));

  const ExtremumBound lp = sup_bound(cond1_ratio(c), rigor, opt);
  const ExtremumBound bt = inf_bound(cond2_ratio(c, weight), rigor, opt);
  rep.sharpest_lambda_prime = lp.sampled;
  rep.sharpest_beta = bt.sampled;
  rep.lambda_prime_bound = lp.bound;
  rep.beta_bound = bt.bound;
  rep.bounds_certified = lp.certified && bt.certified;

  const bool usable = rigor == Rigor::Sampled ? std::isfinite(lp.sampled) && bt.sampled > 0.0
                                              : rep.bounds_certified && std::isfinite(lp.bound) && bt.bound > 0.0;
  if (!usable) {
    rep.note = "sharpest values could not be bounded";
    return rep;
  }
  const Rational lp_exact = rigor == Rigor::Interval ? lp.exact_bound : Rational(lp.sampled);
  const Rational bt_exact = rigor == Rigor::Interval ? bt.exact_bound : Rational(bt.sampled);
  rep.lambda_prime_computed = round_significant(lp_exact, 4, true);
  rep.beta_computed = round_significant(bt_exact, 4, false);

  CandidateW computed = c;
  computed.lambda_prime = rep.lambda_prime_computed;
  computed.beta = rep.beta_computed;
  rep.cond1_computed = check_cond1(computed, rigor, opt);
  rep.cond2_computed = check_cond2(computed, weight, rigor, opt);
  rep.verdict = verdict_of(rep.cond1_computed.holds && rep.cond2_computed.holds &&
                           ordering_holds(computed.lambda_prime, computed.beta, c.N));
  return rep;
}

CandidateW dimension_candidate(int N) {
  if (N < 9) throw std::domain_error("certificates are tabulated for N >= 9");
  CandidateW c;
  c.N = N;
  const Rational half_h = hardy_constant_exact(N) / 2;
  if (N <= 16) {
    const auto& row = claimed_table().at(N);
    c.m = N == 9 ? parse_rational("2.8") : Rational(3);
    c.lambda_prime = parse_rational(row.first);
    c.beta = parse_rational(row.second);
    c.variant = N == 9 ? HrVariant::HR3 : HrVariant::HR2;
  } else if (N <= 30) {
    c.m = 3;
    c.lambda_prime = half_h;
    c.beta = half_h;
    c.variant = HrVariant::HR1;
  } else {
    c.m = 2;
    c.lambda_prime = 27 * lambda_bar_exact(N);
    c.beta = half_h;
    c.variant = HrVariant::HR1;
  }
  return c;
}

CertificateReport certify_dimension(int N, Rigor rigor, const ProverOptions& opt) {
  const CandidateW c = dimension_candidate(N);
  CertificateReport rep = certify(c, rigor, opt);
  if (N != 9) return rep;

  const RadialExpr weight = hr_weight(c.variant, N);
  CandidateW at_368 = c;
  at_368.beta = parse_rational("368.5");
  const ConditionReport cond2_368 = check_cond2(at_368, weight, rigor, opt);
  CandidateW at_361 = c;
  at_361.beta = parse_rational("361.5");
  const ConditionReport cond2_361 = check_cond2(at_361, weight, rigor, opt);

  char sharp[64];
  std::snprintf(sharp, sizeof sharp, "%.6f", rep.sharpest_beta);
  rep.claims.push_back({"tabulated: lambda' = 366, beta = 366.5", rep.candidate_verdict == Verdict::Pass,
                        std::string("cond1 ") + (rep.cond1.holds ? "holds" : "fails") + ", cond2 " +
                            (rep.cond2.holds ? "holds" : "fails") + ", sharpest beta " + sharp});
  rep.claims.push_back({"lambda' = 366 < beta = 368.5", cond2_368.holds && ordering_holds(c.lambda_prime, at_368.beta, N),
                        std::string("cond2 at beta = 368.5 ") + (cond2_368.holds ? "holds" : "fails") + ", sharpest beta " + sharp});
  rep.claims.push_back({"723/(1-w)^3 <= Q(P + 8/r^2), i.e. beta = 361.5", cond2_361.holds,
                        std::string("cond2 at beta = 361.5 ") + (cond2_361.holds ? "holds" : "fails")});
  rep.claims.push_back({"723 > 2 x 366", Rational(723) > 2 * c.lambda_prime, "2 x 366 = 732"});
  rep.note = std::string("N = 9 beta values disagree: 366.5 (tabulated), 368.5 and 723/2 = 361.5; computed sharpest beta ") +
             sharp;
  return rep;
}

ThresholdRelation threshold_relation(int N) {
  if (N < 5) throw std::domain_error("threshold relation needs N >= 5");
  ThresholdRelation t;
  t.N = N;
  t.two_lambda_bar = 2 * lambda_bar_exact(N);
  t.hardy = hardy_constant_exact(N);
  t.holds = t.two_lambda_bar <= t.hardy;
  return t;
}

std::vector<int> table1_default_dimensions() { return {9, 10, 11, 12, 13, 14, 15, 16, 17, 20, 30, 31, 40}; }

std::string format_rational(const Rational& q, int digits) {
  if (denominator(q) == 1) return numerator(q).str();
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, to_double(q));
  return buf;
}

std::vector<Table1Row> table1(const std::vector<int>& dims, Rigor rigor, const ProverOptions& opt) {
  std::vector<Table1Row> rows;
  for (int N : dims) {
    Table1Row row;
    row.N = N;
    row.report = certify_dimension(N, rigor, opt);
    row.m = row.report.candidate.m;
    const auto& c = row.report.candidate;
    if (N <= 16) {
      row.lambda_prime_claimed = claimed_table().at(N).first;
      row.beta_claimed = claimed_table().at(N).second;
    } else {
      row.lambda_prime_claimed = (N <= 30 ? "H_N/2 = " : "27 lambda_bar = ") + format_rational(c.lambda_prime);
      row.beta_claimed = "H_N/2 = " + format_rational(c.beta);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string table1_markdown(const std::vector<Table1Row>& rows) {
  std::ostringstream out;
  out << "| N | m | λ′ (claimed) | λ′ (computed) | β (claimed) | β (computed) | verdict | claimed verdict | note |\n";
  out << "|---|---|---|---|---|---|---|---|---|\n";
  for (const auto& r : rows) {
    out << "| " << r.N << " | " << format_rational(r.m) << " | " << r.lambda_prime_claimed << " | "
        << format_rational(r.report.lambda_prime_computed) << " | " << r.beta_claimed << " | "
        << format_rational(r.report.beta_computed) << " | " << to_string(r.report.verdict) << " | "
        << to_string(r.report.candidate_verdict) << " | " << r.report.note << " |\n";
  }
  return out.str();
}

std::string table1_csv(const std::vector<Table1Row>& rows) {
  std::ostringstream out;
  out << "N,m,lambda_prime_claimed,lambda_prime_computed,beta_claimed,beta_computed,verdict,claimed_verdict,note\n";
  auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  };
  for (const auto& r : rows) {
    out << r.N << ',' << format_rational(r.m) << ',' << quote(r.lambda_prime_claimed) << ','
        << format_rational(r.report.lambda_prime_computed) << ',' << quote(r.beta_claimed) << ','
        << format_rational(r.report.beta_computed) << ',' << to_string(r.report.verdict) << ','
        << to_string(r.report.candidate_verdict) << ',' << quote(r.report.note) << '\n';
  }
  return out.str();
}

}  // namespace mems
