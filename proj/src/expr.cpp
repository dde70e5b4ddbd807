#include "mems/expr.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace mems {

namespace {

Interval rational_interval(const Rational& q) {
  const double d = to_double(q);
  return {next_down(d), next_up(d)};
}

Rational falling(const Rational& p, int k) {
  Rational f = 1;
  for (int i = 0; i < k; ++i) f *= p - i;
  return f;
}

}  // namespace

GPoly::GPoly(const Rational& c) {
  if (c != 0) terms_.push_back({c, Rational(0)});
  refresh();
}

GPoly GPoly::monomial(const Rational& c, const Rational& p) {
  GPoly g;
  if (c != 0) g.terms_.push_back({c, p});
  g.refresh();
  return g;
}

GPoly GPoly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.expo < b.expo; });
  GPoly g;
  for (auto& t : terms) {
    if (!g.terms_.empty() && g.terms_.back().expo == t.expo) {
      g.terms_.back().coef += t.coef;
    } else {
      if (!g.terms_.empty() && g.terms_.back().coef == 0) g.terms_.pop_back();
      g.terms_.push_back(std::move(t));
    }
  }
  if (!g.terms_.empty() && g.terms_.back().coef == 0) g.terms_.pop_back();
  g.refresh();
  return g;
}

void GPoly::refresh() {
  cd_.clear();
  pd_.clear();
  dd_.clear();
  ci_.clear();
  for (const auto& t : terms_) {
    cd_.push_back(to_double(t.coef));
    pd_.push_back(to_double(t.expo));
    dd_.push_back(to_double(t.expo - terms_.front().expo));
    ci_.push_back(rational_interval(t.coef));
  }
}

GPoly GPoly::derivative() const {
  std::vector<Term> out;
  for (const auto& t : terms_)
    if (t.expo != 0) out.push_back({t.coef * t.expo, t.expo - 1});
  return from_terms(std::move(out));
}

GPoly GPoly::shifted(const Rational& dp) const {
  GPoly g = *this;
  for (auto& t : g.terms_) t.expo += dp;
  g.refresh();
  return g;
}

GPoly GPoly::scaled(const Rational& c) const {
  if (c == 0) return {};
  GPoly g = *this;
  for (auto& t : g.terms_) t.coef *= c;
  g.refresh();
  return g;
}

Rational GPoly::derivative_at_one(int k) const {
  Rational s = 0;
  for (const auto& t : terms_) s += t.coef * falling(t.expo, k);
  return s;
}

double GPoly::eval(double r) const {
  double s = 0.0;
  for (size_t k = 0; k < cd_.size(); ++k) s += cd_[k] * std::pow(r, pd_[k]);
  return s;
}

double GPoly::eval_scaled_log(double t) const {
  if (terms_.empty()) return 0.0;
  double s = 0.0;
  for (size_t k = 0; k < cd_.size(); ++k) s += cd_[k] * std::exp(dd_[k] * t);
  return s;
}

Interval GPoly::enclose(const Interval& x) const {
  Interval s(0.0);
  for (size_t k = 0; k < ci_.size(); ++k) s = s + ci_[k] * pow_nonneg(x, pd_[k]);
  return s;
}

Interval GPoly::enclose_scaled(const Interval& x) const {
  if (terms_.empty()) return Interval(0.0);
  Interval s = ci_[0];
  for (size_t k = 1; k < ci_.size(); ++k) s = s + ci_[k] * pow_nonneg(x, dd_[k]);
  return s;
}

std::string GPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << (t.coef < 0 ? " - " : " + ");
    else if (t.coef < 0) os << "-";
    first = false;
    const Rational a = t.coef < 0 ? Rational(-t.coef) : t.coef;
    os << a;
    if (t.expo != 0) os << "*r^(" << t.expo << ")";
  }
  return os.str();
}

GPoly operator+(const GPoly& a, const GPoly& b) {
  std::vector<Term> t = a.terms_;
  t.insert(t.end(), b.terms_.begin(), b.terms_.end());
  return GPoly::from_terms(std::move(t));
}

GPoly operator-(const GPoly& a) {
  GPoly g = a;
  for (auto& t : g.terms_) t.coef = -t.coef;
  g.refresh();
  return g;
}

GPoly operator-(const GPoly& a, const GPoly& b) { return a + (-b); }

GPoly operator*(const GPoly& a, const GPoly& b) {
  std::vector<Term> t;
  t.reserve(a.size() * b.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) t.push_back({x.coef * y.coef, x.expo + y.expo});
  return GPoly::from_terms(std::move(t));
}

bool operator==(const GPoly& a, const GPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].coef != b.terms_[i].coef || a.terms_[i].expo != b.terms_[i].expo) return false;
  return true;
}

RatFunc::RatFunc(GPoly num) : num_(std::move(num)), den_(Rational(1)) {}

RatFunc::RatFunc(GPoly num, GPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("zero denominator");
  normalize();
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = GPoly(Rational(1));
    return;
  }
  const Rational e = den_.lowest_exponent();
  if (e != 0) {
    num_ = num_.shifted(-e);
    den_ = den_.shifted(-e);
  }
  if (den_.size() == 1) {
    num_ = num_.scaled(1 / den_.lowest_coef());
    den_ = GPoly(Rational(1));
    return;
  }
  if (den_.lowest_coef() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ == den_) {
    num_ = GPoly(Rational(1));
    den_ = GPoly(Rational(1));
  }
}

RatFunc RatFunc::derivative() const {
  if (is_polynomial()) return RatFunc(num_.derivative());
  return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

double RatFunc::eval(double r) const {
  if (num_.is_zero()) return 0.0;
  const double t = std::log(r);
  const double e = to_double(num_.lowest_exponent() - den_.lowest_exponent());
  return std::exp(e * t) * num_.eval_scaled_log(t) / den_.eval_scaled_log(t);
}

Interval RatFunc::enclose(const Interval& x) const {
  if (num_.is_zero()) return Interval(0.0);
  const double e = to_double(num_.lowest_exponent() - den_.lowest_exponent());
  Interval scaled = pow_nonneg(x, e) * (num_.enclose_scaled(x) / den_.enclose_scaled(x));
  if (x.lo > 0.0) {
    const Interval direct = num_.enclose(x) / den_.enclose(x);
    const Interval both = intersect(scaled, direct);
    if (both.lo <= both.hi) scaled = both;
  }
  return scaled;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.num_.is_zero()) return b;
  if (b.num_.is_zero()) return a;
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a) {
  RatFunc out = a;
  out.num_ = -out.num_;
  return out;
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.num_.is_zero() || b.num_.is_zero()) return RatFunc();
  if (a.num_ == b.den_) return RatFunc(b.num_, a.den_);
  if (b.num_ == a.den_) return RatFunc(a.num_, b.den_);
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.num_.is_zero()) throw std::domain_error("division by zero expression");
  return a * RatFunc(b.den_, b.num_);
}

// ---------------------------------------------------------------------------

struct RadialExpr::Node {
  Kind kind = Kind::Const;
  Rational c = 0;
  Rational p = 0;
  std::vector<RadialExpr> kids;
};

RadialExpr::RadialExpr() : RadialExpr(Rational(0)) {}

RadialExpr::RadialExpr(const Rational& c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Const;
  n->c = c;
  node_ = std::move(n);
}

RadialExpr RadialExpr::power(const Rational& p, const Rational& c) {
  if (c == 0) return RadialExpr();
  if (p == 0) return RadialExpr(c);
  auto n = std::make_shared<Node>();
  n->kind = Kind::Power;
  n->c = c;
  n->p = p;
  return RadialExpr(std::shared_ptr<const Node>(std::move(n)));
}

RadialExpr RadialExpr::make(Kind k, std::vector<RadialExpr> children) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->kids = std::move(children);
  return RadialExpr(std::shared_ptr<const Node>(std::move(n)));
}

RadialExpr::Kind RadialExpr::kind() const { return node_->kind; }
bool RadialExpr::is_zero() const { return node_->kind == Kind::Const && node_->c == 0; }
const Rational& RadialExpr::coef() const { return node_->c; }
const Rational& RadialExpr::expo() const { return node_->p; }
const std::vector<RadialExpr>& RadialExpr::children() const { return node_->kids; }

namespace {

bool is_monomial(const RadialExpr& e) {
  return e.kind() == RadialExpr::Kind::Const || e.kind() == RadialExpr::Kind::Power;
}

bool is_one(const RadialExpr& e) { return e.kind() == RadialExpr::Kind::Const && e.coef() == 1; }

}  // namespace

RadialExpr operator+(const RadialExpr& a, const RadialExpr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (is_monomial(a) && is_monomial(b) && a.expo() == b.expo()) return RadialExpr::power(a.expo(), a.coef() + b.coef());
  std::vector<RadialExpr> kids;
  for (const RadialExpr* e : {&a, &b}) {
    if (e->kind() == RadialExpr::Kind::Sum)
      kids.insert(kids.end(), e->children().begin(), e->children().end());
    else
      kids.push_back(*e);
  }
  return RadialExpr::make(RadialExpr::Kind::Sum, std::move(kids));
}

RadialExpr operator-(const RadialExpr& a) {
  if (is_monomial(a)) return RadialExpr::power(a.expo(), -a.coef());
  if (a.kind() == RadialExpr::Kind::Neg) return a.children().front();
  return RadialExpr::make(RadialExpr::Kind::Neg, {a});
}

RadialExpr operator-(const RadialExpr& a, const RadialExpr& b) { return a + (-b); }

RadialExpr operator*(const RadialExpr& a, const RadialExpr& b) {
  if (a.is_zero() || b.is_zero()) return RadialExpr();
  if (is_one(a)) return b;
  if (is_one(b)) return a;
  if (is_monomial(a) && is_monomial(b)) return RadialExpr::power(a.expo() + b.expo(), a.coef() * b.coef());
  std::vector<RadialExpr> kids;
  for (const RadialExpr* e : {&a, &b}) {
    if (e->kind() == RadialExpr::Kind::Product)
      kids.insert(kids.end(), e->children().begin(), e->children().end());
    else
      kids.push_back(*e);
  }
  return RadialExpr::make(RadialExpr::Kind::Product, std::move(kids));
}

RadialExpr operator/(const RadialExpr& a, const RadialExpr& b) {
  if (b.is_zero()) throw std::domain_error("division by zero expression");
  if (a.is_zero()) return RadialExpr();
  if (is_one(b)) return a;
  if (is_monomial(b)) return a * RadialExpr::power(-b.expo(), 1 / b.coef());
  return RadialExpr::make(RadialExpr::Kind::Quotient, {a, b});
}

double RadialExpr::eval(double r) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Const:
      return to_double(n.c);
    case Kind::Power:
      return to_double(n.c) * std::pow(r, to_double(n.p));
    case Kind::Sum: {
      double s = 0.0;
      for (const auto& k : n.kids) s += k.eval(r);
      return s;
    }
    case Kind::Product: {
      double s = 1.0;
      for (const auto& k : n.kids) s *= k.eval(r);
      return s;
    }
    case Kind::Quotient:
      return n.kids[0].eval(r) / n.kids[1].eval(r);
    case Kind::Neg:
      return -n.kids[0].eval(r);
  }
  return 0.0;
}

Interval RadialExpr::enclose(const Interval& x) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Const:
      return rational_interval(n.c);
    case Kind::Power:
      return rational_interval(n.c) * pow_nonneg(x, to_double(n.p));
    case Kind::Sum: {
      Interval s(0.0);
      for (const auto& k : n.kids) s = s + k.enclose(x);
      return s;
    }
    case Kind::Product: {
      Interval s(1.0);
      for (const auto& k : n.kids) s = s * k.enclose(x);
      return s;
    }
    case Kind::Quotient:
      return n.kids[0].enclose(x) / n.kids[1].enclose(x);
    case Kind::Neg:
      return -n.kids[0].enclose(x);
  }
  return Interval::entire();
}

RadialExpr RadialExpr::derivative() const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Const:
      return RadialExpr();
    case Kind::Power:
      return power(n.p - 1, n.c * n.p);
    case Kind::Sum: {
      RadialExpr s;
      for (const auto& k : n.kids) s = s + k.derivative();
      return s;
    }
    case Kind::Product: {
      RadialExpr s;
      for (size_t i = 0; i < n.kids.size(); ++i) {
        RadialExpr t = n.kids[i].derivative();
        for (size_t j = 0; j < n.kids.size(); ++j)
          if (j != i) t = t * n.kids[j];
        s = s + t;
      }
      return s;
    }
    case Kind::Quotient: {
      const RadialExpr& a = n.kids[0];
      const RadialExpr& b = n.kids[1];
      return (a.derivative() * b - a * b.derivative()) / (b * b);
    }
    case Kind::Neg:
      return -n.kids[0].derivative();
  }
  return RadialExpr();
}

RatFunc RadialExpr::normalize() const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Const:
      return RatFunc(GPoly(n.c));
    case Kind::Power:
      return RatFunc(GPoly::monomial(n.c, n.p));
    case Kind::Sum: {
      RatFunc s;
      for (const auto& k : n.kids) s = s + k.normalize();
      return s;
    }
    case Kind::Product: {
      RatFunc s(GPoly(Rational(1)));
      for (const auto& k : n.kids) s = s * k.normalize();
      return s;
    }
    case Kind::Quotient:
      return n.kids[0].normalize() / n.kids[1].normalize();
    case Kind::Neg:
      return -n.kids[0].normalize();
  }
  return RatFunc();
}

std::string RadialExpr::str() const {
  const Node& n = *node_;
  std::ostringstream os;
  switch (n.kind) {
    case Kind::Const:
      os << n.c;
      break;
    case Kind::Power:
      if (n.c != 1) os << n.c << "*";
      os << "r^(" << n.p << ")";
      break;
    case Kind::Sum:
      os << "(";
      for (size_t i = 0; i < n.kids.size(); ++i) os << (i ? " + " : "") << n.kids[i].str();
      os << ")";
      break;
    case Kind::Product:
      for (size_t i = 0; i < n.kids.size(); ++i) os << (i ? "*" : "") << n.kids[i].str();
      break;
    case Kind::Quotient:
      os << n.kids[0].str() << "/(" << n.kids[1].str() << ")";
      break;
    case Kind::Neg:
      os << "-(" << n.kids[0].str() << ")";
      break;
  }
  return os.str();
}

}  // namespace mems
