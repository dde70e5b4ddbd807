#include "mems/prover.hpp"

#include "mems/simd.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mems {

const char* to_string(Rigor r) { return r == Rigor::Interval ? "interval" : "sampled"; }

const char* to_string(ProofStatus s) {
  switch (s) {
    case ProofStatus::Proven:
      return "proven";
    case ProofStatus::Refuted:
      return "refuted";
    case ProofStatus::Inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

double EndpointLimit::as_double() const {
  switch (kind) {
    case Kind::PlusInfinity:
      return INFINITY;
    case Kind::MinusInfinity:
      return -INFINITY;
    case Kind::Finite:
      break;
  }
  return to_double(value);
}

namespace {

int sgn(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

// First k >= 0 with g^{(k)}(1) != 0, or -1 when none up to max_order.
int zero_order_at_one(const GPoly& g, Rational& value, int max_order = 24) {
  for (int k = 0; k <= max_order; ++k) {
    value = g.derivative_at_one(k);
    if (value != 0) return k;
  }
  return -1;
}

Interval rational_enclosure(const Rational& q) {
  const double x = to_double(q);
  return Interval(next_down(x), next_up(x));
}

// Largest 1 - 2^{-e} such that h(1-d)/d^k > 0 for d in (0, 2^{-e}], from the exact Taylor coefficients
// of h at 1 up to order K-1 and an enclosure of h^{(K)} on [1 - 2^{-e}, 1]; -1 when none is found.
double taylor_cut_at_one(const GPoly& h, int k) {
  constexpr int kExtra = 12;
  std::vector<GPoly> derivs{h};
  for (int j = 1; j <= k + kExtra; ++j) derivs.push_back(derivs.back().derivative());
  std::vector<Interval> t;
  Rational fact = 1;
  for (int j = 0; j <= k + kExtra; ++j) {
    if (j > 0) fact *= j;
    Rational c = derivs[j].value_at_one() / fact;
    if (j % 2 == 1) c = -c;
    t.push_back(rational_enclosure(c));
  }
  for (int e = 1; e <= 60; ++e) {
    const double delta = std::ldexp(1.0, -e);
    const Interval D(0.0, delta);
    const Interval X(1.0 - delta, 1.0);
    for (int K : {k, k + 1, k + 2, k + 4, k + 8, k + 12}) {
      Interval poly(0.0);
      for (int j = K - 1; j >= k; --j) poly = poly * D + t[j];
      Rational kf = 1;
      for (int j = 2; j <= K; ++j) kf *= j;
      Interval rem = derivs[K].enclose(X) / rational_enclosure(K % 2 == 1 ? -kf : kf);
      for (int j = k; j < K; ++j) rem = rem * D;
      if ((poly + rem).lo > 0.0) return 1.0 - delta;
    }
  }
  return -1.0;
}

Interval lower_taylor2(const GPoly& h, const GPoly& d1, const GPoly& d2, const Interval& X, double m) {
  const Interval M(m);
  const Interval dx = X - M;
  const Interval sq = Interval(0.0, std::max(dx.lo * dx.lo, dx.hi * dx.hi) * (1 + 1e-15));
  return h.enclose(M) + d1.enclose(M) * dx + d2.enclose(X) * sq * Interval(0.5);
}

}  // namespace

SignProof prove_positive(const GPoly& g, const ProverOptions& opt) {
  SignProof proof;
  if (g.is_zero()) {
    proof.status = ProofStatus::Refuted;
    proof.detail = "identically zero";
    return proof;
  }
  if (g.lowest_coef() < 0) {
    proof.status = ProofStatus::Refuted;
    proof.counterexample = 0.0;
    proof.detail = "negative leading term as r -> 0";
    return proof;
  }

  // Same sign as g on (0,1), all exponents >= 0.
  const GPoly h = g.shifted(-g.lowest_exponent());
  const GPoly d1 = h.derivative();
  const GPoly d2 = d1.derivative();

  Rational v1;
  const int order = zero_order_at_one(h, v1);
  if (order < 0) {
    proof.detail = "no nonvanishing derivative at r = 1";
    return proof;
  }
  proof.zero_order_at_one = order;
  if (sgn(v1) * (order % 2 == 0 ? 1 : -1) < 0) {
    proof.status = ProofStatus::Refuted;
    proof.counterexample = 1.0;
    proof.detail = "negative as r -> 1";
    return proof;
  }

  double hi_cut = taylor_cut_at_one(h, order);
  if (hi_cut < 0.0) {
    if (order > 0) {
      proof.detail = "Taylor model at r = 1 not sign-definite";
      return proof;
    }
    hi_cut = 1.0;
  }
  proof.near_one_cut = hi_cut;

  double lo_cut = -1.0;
  for (double x : {1.0, 0.5, 0.25, 0.1, 1e-2, 1e-3, 1e-4, 1e-6, 1e-8, 1e-12, 1e-16, 1e-32, 1e-64, 1e-128, 1e-256}) {
    if (x > hi_cut) continue;
    if (h.enclose_scaled(Interval(0.0, x)).lo > 0.0) {
      lo_cut = x;
      break;
    }
  }
  if (lo_cut < 0.0) {
    proof.detail = "leading-term enclosure near r = 0 not positive";
    return proof;
  }
  proof.near_zero_cut = lo_cut;
  if (lo_cut >= hi_cut) {
    proof.status = ProofStatus::Proven;
    return proof;
  }

  std::vector<Interval> stack;
  {
    const int K = std::clamp(static_cast<int>(std::ceil(std::log2(hi_cut / lo_cut))), 1, 64);
    for (int i = K - 1; i >= 0; --i) {
      const double a = i == 0 ? lo_cut : lo_cut * std::pow(hi_cut / lo_cut, static_cast<double>(i) / K);
      const double b = i == K - 1 ? hi_cut : lo_cut * std::pow(hi_cut / lo_cut, static_cast<double>(i + 1) / K);
      stack.emplace_back(a, b);
    }
  }

  while (!stack.empty()) {
    const Interval X = stack.back();
    stack.pop_back();
    if (++proof.boxes > opt.max_boxes) {
      proof.detail = "box budget exhausted";
      return proof;
    }
    if (h.enclose(X).lo > 0.0) continue;

    const double m = X.hi > 2.0 * X.lo ? std::sqrt(X.lo * X.hi) : X.mid();
    const Interval hm = h.enclose(Interval(m));
    if (hm.hi < 0.0) {
      proof.status = ProofStatus::Refuted;
      proof.counterexample = m;
      proof.detail = "negative value found";
      return proof;
    }
    const Interval dX = d1.enclose(X);
    if (dX.lo > 0.0 || dX.hi < 0.0) {
      if (std::min(h.enclose(Interval(X.lo)).lo, h.enclose(Interval(X.hi)).lo) > 0.0) continue;
    }
    if ((hm + dX * (X - Interval(m))).lo > 0.0) continue;
    if (lower_taylor2(h, d1, d2, X, m).lo > 0.0) continue;

    if (X.width() < opt.min_width) {
      proof.inconclusive.push_back(X);
      if (static_cast<int>(proof.inconclusive.size()) >= opt.max_inconclusive) {
        proof.detail = "subintervals below minimum width";
        return proof;
      }
      continue;
    }
    stack.emplace_back(m, X.hi);
    stack.emplace_back(X.lo, m);
  }
  if (!proof.inconclusive.empty()) {
    proof.detail = "subintervals below minimum width";
    return proof;
  }
  proof.status = ProofStatus::Proven;
  return proof;
}

SignProof prove_sign(const RatFunc& f, int sign, const ProverOptions& opt) {
  SignProof den = prove_positive(f.den(), opt);
  int den_sign = 1;
  if (!den.proven()) {
    SignProof neg = prove_positive(-f.den(), opt);
    if (neg.proven()) {
      den = neg;
      den_sign = -1;
    }
  }
  if (!den.proven()) {
    den.detail = "denominator sign: " + den.detail;
    if (den.status == ProofStatus::Refuted) den.status = ProofStatus::Inconclusive;
    return den;
  }
  SignProof num = prove_positive(sign * den_sign > 0 ? f.num() : -f.num(), opt);
  num.boxes += den.boxes;
  num.near_zero_cut = std::min(num.near_zero_cut, den.near_zero_cut);
  num.near_one_cut = std::max(num.near_one_cut, den.near_one_cut);
  return num;
}

EndpointLimit limit_at_zero(const RatFunc& f) {
  EndpointLimit lim;
  if (f.num().is_zero()) return lim;
  const Rational e = f.num().lowest_exponent() - f.den().lowest_exponent();
  const Rational ratio = f.num().lowest_coef() / f.den().lowest_coef();
  if (e > 0) return lim;
  if (e == 0) {
    lim.value = ratio;
    return lim;
  }
  lim.kind = ratio > 0 ? EndpointLimit::Kind::PlusInfinity : EndpointLimit::Kind::MinusInfinity;
  return lim;
}

EndpointLimit limit_at_one(const RatFunc& f) {
  EndpointLimit lim;
  if (f.num().is_zero()) return lim;
  Rational vn, vd;
  const int jn = zero_order_at_one(f.num(), vn);
  const int jd = zero_order_at_one(f.den(), vd);
  if (jn < 0 || jd < 0) throw std::domain_error("cannot resolve limit at r = 1");
  if (jn > jd) return lim;
  if (jn == jd) {
    lim.value = vn / vd;
    return lim;
  }
  // (r-1)^{jn-jd} approached from the left
  const int s = sgn(vn) * sgn(vd) * ((jd - jn) % 2 == 0 ? 1 : -1);
  lim.kind = s > 0 ? EndpointLimit::Kind::PlusInfinity : EndpointLimit::Kind::MinusInfinity;
  return lim;
}

SampleSummary sample_log_uniform(const RatFunc& f, size_t n, double r_min) {
  SampleSummary s;
  s.points = n;
  s.min = INFINITY;
  s.max = -INFINITY;
  const auto& kt = simd::kernels();
  const double L = std::log(r_min);
  const double e = f.num().is_zero() ? 0.0 : to_double(f.num().lowest_exponent() - f.den().lowest_exponent());
  const GPoly& num = f.num();
  const GPoly& den = f.den();

  constexpr size_t chunk = 4096;
  std::vector<double> t(chunk), hn(chunk), hd(chunk);
  for (size_t base = 0; base < n; base += chunk) {
    const size_t len = std::min(chunk, n - base);
    for (size_t j = 0; j < len; ++j) t[j] = L * (1.0 - (static_cast<double>(base + j) + 0.5) / static_cast<double>(n));
    if (num.is_zero()) {
      std::fill(hn.begin(), hn.begin() + len, 0.0);
    } else {
      kt.exp_sum(num.coef_double().data(), num.expo_offsets().data(), num.size(), t.data(), hn.data(), len);
    }
    kt.exp_sum(den.coef_double().data(), den.expo_offsets().data(), den.size(), t.data(), hd.data(), len);
    for (size_t j = 0; j < len; ++j) {
      const double v = std::exp(e * t[j]) * hn[j] / hd[j];
      if (!std::isfinite(v)) continue;
      if (v < s.min) {
        s.min = v;
        s.argmin = std::exp(t[j]);
      }
      if (v > s.max) {
        s.max = v;
        s.argmax = std::exp(t[j]);
      }
    }
  }
  return s;
}

namespace {

// Refines a sampled extremum (sign = +1 for max, -1 for min) in log coordinates around r0.
std::pair<double, double> refine(const RatFunc& f, double r0, int sign, double spacing) {
  const double t0 = std::log(r0);
  const double a = t0 - 2.0 * spacing;
  const double b = std::min(t0 + 2.0 * spacing, -1e-300);
  auto obj = [&](double t) {
    const double v = f.eval(std::exp(t));
    return std::isfinite(v) ? -sign * v : INFINITY;
  };
  const auto res = boost::math::tools::brent_find_minima(obj, a, b, 52);
  return {std::exp(res.first), -sign * res.second};
}

std::vector<Rational> candidates(double sampled, int sign, const std::vector<EndpointLimit>& limits) {
  std::vector<Rational> out;
  for (const auto& l : limits) {
    if (!l.finite()) continue;
    const double v = to_double(l.value);
    if (sign * (v - sampled) >= -1e-9 * std::max(1.0, std::abs(sampled))) out.push_back(l.value);
  }
  for (double d : {1e-12, 1e-10, 1e-8, 1e-6, 1e-4, 1e-2}) {
    const double c = sampled + sign * d * std::max(std::abs(sampled), 1e-300);
    out.emplace_back(c);
  }
  std::sort(out.begin(), out.end());
  if (sign < 0) std::reverse(out.begin(), out.end());
  return out;
}

ExtremumBound extremum(const RatFunc& f, int sign, Rigor rigor, const ProverOptions& opt) {
  constexpr size_t kSamples = 1'000'000;
  constexpr double kRmin = 1e-12;
  ExtremumBound out;
  const EndpointLimit l0 = limit_at_zero(f);
  const EndpointLimit l1 = limit_at_one(f);
  const auto unbounded = sign > 0 ? EndpointLimit::Kind::PlusInfinity : EndpointLimit::Kind::MinusInfinity;
  if (l0.kind == unbounded || l1.kind == unbounded) {
    out.sampled = out.bound = sign * INFINITY;
    out.argument = l0.kind == unbounded ? 0.0 : 1.0;
    out.at_endpoint = true;
    out.certified = true;
    return out;
  }

  const SampleSummary s = sample_log_uniform(f, kSamples, kRmin);
  const double spacing = -std::log(kRmin) / static_cast<double>(kSamples);
  auto [arg, val] = refine(f, sign > 0 ? s.argmax : s.argmin, sign, spacing);
  const double raw = sign > 0 ? s.max : s.min;
  if (!(sign * (val - raw) >= 0.0)) {
    val = raw;
    arg = sign > 0 ? s.argmax : s.argmin;
  }
  out.sampled = val;
  out.argument = arg;
  for (const auto* l : {&l0, &l1}) {
    if (!l->finite()) continue;
    const double v = to_double(l->value);
    if (sign * (v - out.sampled) >= 0.0) {
      out.sampled = v;
      out.argument = l == &l0 ? 0.0 : 1.0;
      out.at_endpoint = true;
    }
  }
  out.bound = out.sampled;
  if (rigor == Rigor::Sampled) return out;

  for (const Rational& c : candidates(out.sampled, sign, {l0, l1})) {
    const RatFunc gap = sign > 0 ? RatFunc(GPoly(c)) - f : f - RatFunc(GPoly(c));
    const SignProof p = prove_sign(gap, +1, opt);
    out.boxes += p.boxes;
    if (p.proven()) {
      out.bound = to_double(c);
      out.exact_bound = c;
      out.certified = true;
      return out;
    }
  }
  out.bound = sign * INFINITY;
  return out;
}

}  // namespace

ExtremumBound sup_bound(const RatFunc& f, Rigor rigor, const ProverOptions& opt) { return extremum(f, +1, rigor, opt); }

ExtremumBound inf_bound(const RatFunc& f, Rigor rigor, const ProverOptions& opt) { return extremum(f, -1, rigor, opt); }

MarginEstimate estimate_margin(const RatFunc& f) {
  const SampleSummary s = sample_log_uniform(f);
  MarginEstimate m{s.min, s.argmin, false};
  const EndpointLimit l0 = limit_at_zero(f);
  const EndpointLimit l1 = limit_at_one(f);
  if (l0.as_double() < m.value) m = {l0.as_double(), 0.0, true};
  if (l1.as_double() <= m.value) m = {l1.as_double(), 1.0, true};
  return m;
}

}  // namespace mems
