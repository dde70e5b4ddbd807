#pragma once

#include "mems/interval.hpp"
#include "mems/rational.hpp"

#include <memory>
#include <string>
#include <vector>

namespace mems {

struct Term {
  Rational coef;
  Rational expo;
};

// Finite sum  sum_k c_k r^{p_k}  with exact rational coefficients and exponents.
// Terms are kept sorted by increasing exponent, with distinct exponents and nonzero coefficients.
class GPoly {
public:
  GPoly() = default;
  GPoly(const Rational& c);  // NOLINT(google-explicit-constructor)
  static GPoly monomial(const Rational& c, const Rational& p);
  static GPoly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  const Rational& lowest_exponent() const { return terms_.front().expo; }
  const Rational& lowest_coef() const { return terms_.front().coef; }

  GPoly derivative() const;
  // Multiplies by r^dp.
  GPoly shifted(const Rational& dp) const;
  GPoly scaled(const Rational& c) const;

  // k-th derivative at r = 1, exactly.
  Rational derivative_at_one(int k) const;
  Rational value_at_one() const { return derivative_at_one(0); }

  double eval(double r) const;
  // sum_k c_k exp((p_k - p_0) t), i.e. the value divided by r^{p_0} at r = e^t.
  double eval_scaled_log(double t) const;
  Interval enclose(const Interval& x) const;
  // Encloses g(x) / x^{p_0}, usable on boxes reaching down to 0.
  Interval enclose_scaled(const Interval& x) const;

  const std::vector<double>& coef_double() const { return cd_; }
  const std::vector<double>& expo_double() const { return pd_; }
  // p_k - p_0, rounded once from the exact difference.
  const std::vector<double>& expo_offsets() const { return dd_; }

  std::string str() const;

  friend GPoly operator+(const GPoly& a, const GPoly& b);
  friend GPoly operator-(const GPoly& a, const GPoly& b);
  friend GPoly operator-(const GPoly& a);
  friend GPoly operator*(const GPoly& a, const GPoly& b);
  friend bool operator==(const GPoly& a, const GPoly& b);

private:
  void refresh();

  std::vector<Term> terms_;
  std::vector<double> cd_;
  std::vector<double> pd_;
  std::vector<double> dd_;
  std::vector<Interval> ci_;
};

// num / den, both GPoly; the denominator is shifted so that its lowest exponent is 0,
// and a single-term denominator is divided out.
class RatFunc {
public:
  RatFunc() : den_(Rational(1)) {}
  RatFunc(GPoly num);  // NOLINT(google-explicit-constructor)
  RatFunc(GPoly num, GPoly den);

  const GPoly& num() const { return num_; }
  const GPoly& den() const { return den_; }
  bool is_polynomial() const { return den_.size() == 1; }

  RatFunc derivative() const;
  double eval(double r) const;
  Interval enclose(const Interval& x) const;

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);

private:
  void normalize();

  GPoly num_;
  GPoly den_;
};

// Expression tree over c r^p terms with sums, products, quotients and negation.
class RadialExpr {
public:
  enum class Kind { Const, Power, Sum, Product, Quotient, Neg };

  RadialExpr();  // zero
  RadialExpr(const Rational& c);  // NOLINT(google-explicit-constructor)
  RadialExpr(int c) : RadialExpr(Rational(c)) {}  // NOLINT(google-explicit-constructor)

  // c r^p
  static RadialExpr power(const Rational& p, const Rational& c = 1);
  static RadialExpr r() { return power(1); }

  Kind kind() const;
  bool is_zero() const;
  // For Const/Power nodes.
  const Rational& coef() const;
  const Rational& expo() const;
  const std::vector<RadialExpr>& children() const;

  double eval(double r) const;
  Interval enclose(const Interval& x) const;
  RadialExpr derivative() const;
  RatFunc normalize() const;
  std::string str() const;

  friend RadialExpr operator+(const RadialExpr& a, const RadialExpr& b);
  friend RadialExpr operator-(const RadialExpr& a, const RadialExpr& b);
  friend RadialExpr operator-(const RadialExpr& a);
  friend RadialExpr operator*(const RadialExpr& a, const RadialExpr& b);
  friend RadialExpr operator/(const RadialExpr& a, const RadialExpr& b);

private:
  struct Node;
  explicit RadialExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static RadialExpr make(Kind k, std::vector<RadialExpr> children);

  std::shared_ptr<const Node> node_;
};

}  // namespace mems
