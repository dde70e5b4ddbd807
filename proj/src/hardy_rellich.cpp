#include "mems/hardy_rellich.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace mems {

namespace odeint = boost::numeric::odeint;

const char* to_string(HrVariant v) {
  switch (v) {
    case HrVariant::HR1:
      return "hr1";
    case HrVariant::HR2:
      return "hr2";
    case HrVariant::HR3:
      return "hr3";
  }
  return "unknown";
}

HrVariant parse_variant(std::string_view text) {
  std::string s(text);
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "hr1") return HrVariant::HR1;
  if (s == "hr2") return HrVariant::HR2;
  if (s == "hr3") return HrVariant::HR3;
  throw std::invalid_argument("unknown variant '" + std::string(text) + "'");
}

const char* to_string(IntegralBehavior b) {
  switch (b) {
    case IntegralBehavior::Convergent:
      return "convergent";
    case IntegralBehavior::Divergent:
      return "divergent";
    case IntegralBehavior::Inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

namespace {

using E = RadialExpr;

E r_pow(const Rational& p, const Rational& c = 1) { return E::power(p, c); }

// r^2 - a r^{N/2+1}
E pair_denominator(int N, const Rational& a) { return r_pow(2) - r_pow(Rational(N) / 2 + 1, a); }

// r^2 - r^{N/2}
E pair_second_denominator(int N) { return r_pow(2) - r_pow(Rational(N) / 2); }

E laplacian_radial(const E& y, int dim) { return y.derivative().derivative() + E(dim - 1) / E::r() * y.derivative(); }

// y'' + ((N-1)/r + V'/V) y' + (W/V) y
E bessel_operator(const E& y, const BesselPairSpec& spec) {
  return y.derivative().derivative() + (E(spec.N - 1) / E::r() + spec.V.derivative() / spec.V) * y.derivative() +
         spec.W / spec.V * y;
}

void require_hr_dimension(HrVariant v, int N) {
  if ((v == HrVariant::HR1 || v == HrVariant::HR2) && N < 5)
    throw std::domain_error(std::string(to_string(v)) + " needs N >= 5");
  if (v == HrVariant::HR3 && N != 9) throw std::domain_error("hr3 is defined for N = 9 only");
}

SignCheck exact_check(std::string name, bool ok, double margin, std::string detail = {}) {
  SignCheck c;
  c.name = std::move(name);
  c.margin = margin;
  c.method = "exact";
  c.passed = ok;
  c.detail = std::move(detail);
  return c;
}

}  // namespace

RadialExpr hr_weight(HrVariant v, int N) {
  require_hr_dimension(v, N);
  switch (v) {
    case HrVariant::HR1:
      return r_pow(-4, hardy_constant_exact(N));
    case HrVariant::HR2: {
      const Rational n4sq = Rational((N - 4) * (N - 4));
      const Rational c1 = Rational((N - 2) * (N - 2)) * n4sq / 16;
      const Rational c2 = Rational(N - 1) * n4sq / 4;
      return E(c1) / (pair_denominator(N, 1) * pair_second_denominator(N)) + E(c2) / (r_pow(2) * pair_second_denominator(N));
    }
    case HrVariant::HR3: {
      const PQFunctions pq = pq_functions(N);
      return pq.Q * (pq.P + r_pow(-2, N - 1));
    }
  }
  throw std::domain_error("unknown variant");
}

PQFunctions pq_functions(int N) {
  if (N != 9) throw std::domain_error("P and Q are defined for N = 9 only");
  PQFunctions out;
  const Rational h = Rational(N) / 2;
  out.phi = r_pow(1 - h) + E::r() - E(parse_rational("1.9"));
  out.psi = r_pow(2 - h) + r_pow(parse_rational("-1.69"), 20) + r_pow(-1, 10) + r_pow(1, 10) + r_pow(2, 7) - E(48);
  out.P = -laplacian_radial(out.phi, N) / out.phi;
  out.Q = -laplacian_radial(out.psi, N - 2) / out.psi;
  return out;
}

PositivityReport bessel_ode_positive(const BesselPairSpec& spec, const OdeOptions& opt) {
  PositivityReport rep;
  const RatFunc a = (E(spec.N - 2) + E::r() * spec.V.derivative() / spec.V).normalize();
  const RatFunc b = (r_pow(2) * spec.W / spec.V).normalize();
  const double s0 = std::log(opt.r0);
  rep.r_start = opt.r0;

  std::array<double, 2> x{};
  if (opt.seed) {
    x = {opt.seed->eval(opt.r0), opt.r0 * opt.seed->derivative().eval(opt.r0)};
    rep.start_exponent = NAN;
    rep.start = "seed";
  } else {
    const EndpointLimit a0 = limit_at_zero(a);
    const EndpointLimit b0 = limit_at_zero(b);
    if (!a0.finite() || !b0.finite()) {
      rep.failure = "origin is not a regular singular point";
      rep.r_end = opt.r0;
      return rep;
    }
    const double A = to_double(a0.value);
    const double B = to_double(b0.value);
    const double disc = A * A - 4.0 * B;
    if (disc < -1e-14 * std::max(1.0, A * A)) {
      rep.failure = "oscillatory at the origin";
      rep.first_zero = opt.r0;
      rep.r_end = opt.r0;
      return rep;
    }
    rep.start_exponent = 0.5 * (-A + std::sqrt(std::max(disc, 0.0)));
    rep.start = "frobenius";
    x = {1.0, rep.start_exponent};
  }
  if (!(std::isfinite(x[0]) && std::isfinite(x[1])) || x[0] == 0.0) {
    rep.failure = "invalid initial data";
    rep.r_end = opt.r0;
    return rep;
  }
  const double sign = x[0] > 0 ? 1.0 : -1.0;
  const double scale = std::abs(x[0]);
  x[0] *= sign / scale;
  x[1] *= sign / scale;

  const bool singular_end = a.den().value_at_one() == 0 || b.den().value_at_one() == 0;
  const double s_end = singular_end ? std::log(spec.R * (1.0 - 1e-9)) : std::log(spec.R);

  auto rhs = [&](const std::array<double, 2>& y, std::array<double, 2>& dy, double s) {
    const double r = std::exp(s);
    dy[0] = y[1];
    dy[1] = -a.eval(r) * y[1] - b.eval(r) * y[0];
  };

  double seed_dev = 0.0;
  auto track_seed = [&](double s, double y) {
    if (!opt.seed) return;
    const double ref = opt.seed->eval(std::exp(s)) * sign / scale;
    if (ref != 0.0) seed_dev = std::max(seed_dev, std::abs(y - ref) / std::abs(ref));
  };

  auto stepper = odeint::make_dense_output(opt.abs_tol, opt.rel_tol, odeint::runge_kutta_dopri5<std::array<double, 2>>());
  double dt = std::min(1e-3, s_end - s0);
  stepper.initialize(x, s0, dt);
  while (stepper.current_time() < s_end) {
    if (++rep.steps > opt.max_steps) {
      rep.failure = "step budget exhausted";
      break;
    }
    const double remaining = s_end - stepper.current_time();
    if (stepper.current_time_step() > remaining) stepper.initialize(stepper.current_state(), stepper.current_time(), remaining);
    const auto [t0, t1] = stepper.do_step(rhs);
    const auto& st = stepper.current_state();
    if (!std::isfinite(st[0]) || !std::isfinite(st[1])) {
      rep.failure = "non-finite state";
      rep.r_end = std::exp(t0);
      return rep;
    }
    if (st[0] <= 0.0) {
      double lo = t0, hi = t1;
      std::array<double, 2> mid{};
      for (int k = 0; k < 100 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++k) {
        const double m = 0.5 * (lo + hi);
        stepper.calc_state(m, mid);
        (mid[0] > 0.0 ? lo : hi) = m;
      }
      rep.first_zero = std::exp(hi);
      rep.r_end = std::exp(hi);
      if (opt.seed) rep.seed_deviation = seed_dev;
      return rep;
    }
    track_seed(t1, st[0]);
    if (s_end - t1 <= 1e-15) break;
  }
  rep.r_end = std::exp(stepper.current_time());
  if (opt.seed) rep.seed_deviation = seed_dev;
  rep.positive_on_interval = rep.failure.empty();
  return rep;
}

SignCheck positivity_check(std::string name, const RatFunc& f, Rigor rigor, const ProverOptions& opt) {
  SignCheck c;
  c.name = std::move(name);
  if (f.num().is_zero()) {
    c.method = "exact";
    c.detail = "identically zero";
    return c;
  }
  const SampleSummary s = sample_log_uniform(f);
  const double l0 = limit_at_zero(f).as_double();
  const double l1 = limit_at_one(f).as_double();
  c.margin = s.min;
  c.argmin = s.argmin;
  if (l0 < c.margin) c.margin = l0, c.argmin = 0.0;
  if (l1 < c.margin) c.margin = l1, c.argmin = 1.0;
  if (rigor == Rigor::Sampled) {
    c.method = "sampled";
    c.passed = s.min > 0.0 && l0 >= 0.0 && l1 >= 0.0;
    return c;
  }
  c.method = "interval";
  const SignProof p = prove_sign(f, +1, opt);
  c.passed = p.proven();
  std::ostringstream d;
  d << to_string(p.status) << ", " << p.boxes << " boxes";
  if (p.counterexample) d << ", counterexample r = " << *p.counterexample;
  if (!p.detail.empty()) d << ", " << p.detail;
  c.detail = d.str();
  return c;
}

SupersolutionReport supersolution_check(const RadialExpr& y, const BesselPairSpec& spec, Rigor rigor,
                                        const ProverOptions& opt) {
  SupersolutionReport rep;
  rep.positive = positivity_check("y > 0", y.normalize(), rigor, opt);
  const RatFunc res = (-bessel_operator(y, spec)).normalize();
  if (res.num().is_zero()) {
    rep.residual = exact_check("-(ODE residual) >= 0", true, 0.0, "exact solution");
  } else {
    rep.residual = positivity_check("-(ODE residual) > 0", res, rigor, opt);
  }
  return rep;
}

BesselSideConditions bessel_side_conditions(const BesselPairSpec& spec, Rigor rigor, const ProverOptions& opt) {
  BesselSideConditions rep;
  const RatFunc V = spec.V.normalize();
  if (V.num().is_zero()) {
    rep.pointwise.name = "W - 2V/r^2 + 2V'/r - V''";
    return rep;
  }
  rep.v_exponent = V.num().lowest_exponent() - V.den().lowest_exponent();
  // r^s is integrable at 0 iff s > -1; r^{-1} itself diverges.
  const Rational inv = -Rational(spec.N - 1) - rep.v_exponent;
  const Rational vol = Rational(spec.N - 1) + rep.v_exponent;
  rep.inverse_integral = inv > -1 ? IntegralBehavior::Convergent : IntegralBehavior::Divergent;
  rep.volume_integral = vol > -1 ? IntegralBehavior::Convergent : IntegralBehavior::Divergent;

  const E& Vx = spec.V;
  const E cond = spec.W - E(2) * Vx / r_pow(2) + E(2) * Vx.derivative() / E::r() - Vx.derivative().derivative();
  const RatFunc g = cond.normalize();
  if (g.num().is_zero()) {
    rep.pointwise = exact_check("W - 2V/r^2 + 2V'/r - V''", true, 0.0, "identically zero");
  } else {
    rep.pointwise = positivity_check("W - 2V/r^2 + 2V'/r - V''", g, rigor, opt);
  }
  return rep;
}

std::vector<double> cell_weights(const RatFunc& W, const RadialGrid& grid) {
  using GL = boost::math::quadrature::gauss<double, 8>;
  const int M = grid.size();
  const int N = grid.dimension();
  const auto& f = grid.faces();
  const auto& V = grid.volumes();
  std::vector<double> out(M - 1);
  for (int i = 0; i < M - 1; ++i) {
    const double integral = GL::integrate([&](double r) { return W.eval(r) * std::pow(r, N - 1); }, f[i], f[i + 1]);
    out[i] = integral / V[i];
  }
  return out;
}

namespace {

struct FormTerms {
  double energy = 0.0;
  double weighted = 0.0;
  double mass = 0.0;
};

FormTerms form_terms(const RadialGrid& grid, std::span<const double> W_cells, std::span<const double> phi) {
  FormTerms t;
  t.energy = plate_energy(grid, phi);
  const auto& V = grid.volumes();
  for (size_t i = 0; i < phi.size(); ++i) {
    t.weighted += V[i] * W_cells[i] * phi[i] * phi[i];
    t.mass += V[i] * phi[i] * phi[i];
  }
  return t;
}

}  // namespace

double form_gap(const RadialGrid& grid, std::span<const double> W_cells, std::span<const double> phi) {
  const FormTerms t = form_terms(grid, W_cells, phi);
  return (t.energy - t.weighted) / t.energy;
}

FormCheckReport discrete_form_check(HrVariant v, int N, const RadialGrid& grid, int trials, std::uint64_t seed) {
  if (grid.dimension() != N) throw std::invalid_argument("grid dimension mismatch");
  FormCheckReport rep;
  rep.variant = v;
  rep.N = N;
  rep.M = grid.size();
  rep.trials = trials;
  rep.worst_gap = INFINITY;
  rep.remainder_estimate = INFINITY;

  const std::vector<double> Wc = cell_weights(hr_weight(v, N).normalize(), grid);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit;
  const auto& r = grid.nodes();
  std::vector<double> phi(grid.size() - 1);
  static const char* families[] = {"polynomial", "bump", "hardy"};

  for (int t = 0; t < trials; ++t) {
    const int fam = t % 3;
    if (fam == 0) {
      std::array<double, 4> c{};
      for (double& a : c) a = normal(rng);
      for (size_t i = 0; i < phi.size(); ++i) {
        const double x = r[i] * r[i];
        phi[i] = (1 - x) * (1 - x) * (c[0] + x * (c[1] + x * (c[2] + x * c[3])));
      }
    } else if (fam == 1) {
      const double a = 0.02 + 0.78 * unit(rng);
      const double b = a + 0.05 + (0.98 - a - 0.05) * unit(rng);
      const double h = 0.5 * (b - a);
      for (size_t i = 0; i < phi.size(); ++i) {
        const double x = r[i];
        phi[i] = x > a && x < b ? std::pow((x - a) * (b - x) / (h * h), 4) : 0.0;
      }
    } else {
      const double s = 0.05 * std::pow(20.0, unit(rng));
      const double q = 0.9 * (N - 4) / 4.0 * unit(rng);
      for (size_t i = 0; i < phi.size(); ++i) {
        const double x = r[i] * r[i];
        phi[i] = std::pow(x + s * s, -q) * (1 - x) * (1 - x);
      }
    }
    const FormTerms ft = form_terms(grid, Wc, phi);
    if (!(ft.energy > 0.0)) continue;
    const double gap = (ft.energy - ft.weighted) / ft.energy;
    if (gap < -rep.tolerance) ++rep.violations;
    if (gap < rep.worst_gap) {
      rep.worst_gap = gap;
      rep.worst_trial = t;
      rep.worst_family = families[fam];
    }
    rep.remainder_estimate = std::min(rep.remainder_estimate, (ft.energy - ft.weighted) / ft.mass);
  }
  return rep;
}

ExactPairResidual exact_pair_residual(int N, const Rational& alpha, int points) {
  const E y = r_pow(1 - Rational(N) / 2) - E(alpha);
  const E W = E(Rational((N - 2) * (N - 2)) / 4) / pair_denominator(N, alpha);
  const BesselPairSpec spec{E(1), W, N, 1.0};
  ExactPairResidual out;
  out.exact_zero = bessel_operator(y, spec).normalize().num().is_zero();
  const E t1 = y.derivative().derivative();
  const E t2 = E(N - 1) / E::r() * y.derivative();
  const E t3 = W * y;
  out.contains_zero = true;
  const double lo = std::log(1e-4), hi = std::log(1 - 1e-4);
  for (int j = 0; j < points; ++j) {
    const Interval x(std::exp(lo + (hi - lo) * j / (points - 1)));
    const Interval a = t1.enclose(x), b = t2.enclose(x), c = t3.enclose(x);
    const Interval sum = a + b + c;
    const double scale = std::abs(a.mid()) + std::abs(b.mid()) + std::abs(c.mid());
    out.enclosure_width = std::max(out.enclosure_width, sum.width() / scale);
    if (!sum.contains(0.0)) out.contains_zero = false;
  }
  return out;
}

bool HrReport::verdict() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const SignCheck& c) { return c.passed; });
}

namespace {

SignCheck ode_check(std::string name, const BesselPairSpec& spec, const OdeOptions& o = {}) {
  const PositivityReport p = bessel_ode_positive(spec, o);
  SignCheck c;
  c.name = std::move(name);
  c.method = "ode";
  c.passed = p.positive_on_interval;
  c.margin = p.first_zero ? *p.first_zero - spec.R : 0.0;
  std::ostringstream d;
  d << p.start << " start at r = " << p.r_start << ", reached r = " << p.r_end << " in " << p.steps << " steps";
  if (p.first_zero) d << ", first zero " << *p.first_zero;
  if (!p.failure.empty()) d << ", " << p.failure;
  c.detail = d.str();
  return c;
}

void add_supersolution(HrReport& rep, const std::string& tag, const E& y, const BesselPairSpec& spec, const ProverOptions& po,
                       bool include_positive = true) {
  const SupersolutionReport s = supersolution_check(y, spec, rep.rigor, po);
  SignCheck pos = s.positive;
  SignCheck res = s.residual;
  pos.name = tag + ": y > 0";
  res.name = tag + ": super-solution residual";
  if (include_positive) rep.checks.push_back(pos);
  rep.checks.push_back(res);
}

void add_side_conditions(HrReport& rep, const std::string& tag, const BesselPairSpec& spec, const ProverOptions& po) {
  const BesselSideConditions g = bessel_side_conditions(spec, rep.rigor, po);
  rep.checks.push_back(exact_check(tag + ": int 1/(r^{N-1} V) = inf", g.inverse_integral == IntegralBehavior::Divergent, 0.0,
                                   std::string("leading power of V: ") + g.v_exponent.str()));
  rep.checks.push_back(exact_check(tag + ": int r^{N-1} V < inf", g.volume_integral == IntegralBehavior::Convergent, 0.0));
  SignCheck pw = g.pointwise;
  pw.name = tag + ": " + pw.name + " >= 0";
  rep.checks.push_back(pw);
}

void add_form_check(HrReport& rep, const HrVerifyOptions& opt) {
  const GridPtr grid = build_grid(rep.N, opt.M, opt.gamma);
  const FormCheckReport f = discrete_form_check(rep.variant, rep.N, *grid, opt.trials, opt.seed);
  SignCheck c;
  c.name = "discrete quadratic form";
  c.method = "discrete";
  c.margin = f.worst_gap;
  c.argmin = f.worst_trial;
  c.passed = f.violations == 0;
  std::ostringstream d;
  d << f.trials << " trials, " << f.violations << " violations, worst family " << f.worst_family << ", remainder estimate "
    << f.remainder_estimate;
  c.detail = d.str();
  rep.checks.push_back(c);
}

}  // namespace

HrReport hr_verify(HrVariant v, int N, const HrVerifyOptions& opt) {
  require_hr_dimension(v, N);
  HrReport rep;
  rep.variant = v;
  rep.N = N;
  rep.rigor = opt.rigor;
  const ProverOptions po;
  const Rational n2sq = Rational((N - 2) * (N - 2));
  const Rational n4sq = Rational((N - 4) * (N - 4));

  switch (v) {
    case HrVariant::HR1: {
      const Rational lhs = (n2sq / 4 + (N - 1)) * n4sq / 4;
      rep.checks.push_back(exact_check("((N-2)^2/4 + N-1)(N-4)^2/4 = H_N", lhs == hardy_constant_exact(N),
                                       to_double(lhs - hardy_constant_exact(N))));
      const BesselPairSpec rellich{E(1), r_pow(-2, n2sq / 4), N, 1.0};
      rep.checks.push_back(ode_check("(1, (N-2)^2/(4r^2)) Bessel pair", rellich));
      add_side_conditions(rep, "(1, (N-2)^2/(4r^2))", rellich, po);
      const BesselPairSpec hardy{r_pow(-2), r_pow(-4, n4sq / 4), N, 1.0};
      rep.checks.push_back(ode_check("(r^-2, (N-4)^2/(4r^4)) Bessel pair", hardy));
      break;
    }
    case HrVariant::HR2: {
      const Rational lhs = n2sq * n4sq / 16 + Rational(N - 1) * n4sq / 4;
      rep.checks.push_back(exact_check("leading coefficient at r = 0 equals H_N", lhs == hardy_constant_exact(N),
                                       to_double(lhs - hardy_constant_exact(N))));
      for (const char* a_text : {"0.9", "0.99", "0.999"}) {
        const Rational a = parse_rational(a_text);
        const std::string tag = std::string("alpha = ") + a_text;
        const ExactPairResidual g = exact_pair_residual(N, a);
        SignCheck c = exact_check(tag + ": r^{1-N/2} - alpha solves the ODE", g.exact_zero && g.contains_zero &&
                                                                                   g.enclosure_width < 1e-9,
                                  1e-9 - g.enclosure_width);
        c.method = "exact+interval";
        std::ostringstream d;
        d << "relative enclosure width " << g.enclosure_width;
        c.detail = d.str();
        rep.checks.push_back(c);

        const BesselPairSpec first{E(1), E(n2sq / 4) / pair_denominator(N, a), N, 1.0};
        OdeOptions o;
        o.seed = r_pow(1 - Rational(N) / 2) - E(a);
        rep.checks.push_back(ode_check(tag + ": (1, W_alpha) Bessel pair", first, o));
        add_side_conditions(rep, tag + ": (1, W_alpha)", first, po);

        const E Va = E(1) / pair_denominator(N, a);
        rep.checks.push_back(positivity_check(tag + ": V'/V + 2/r > 0", (Va.derivative() / Va + r_pow(-1, 2)).normalize(),
                                              opt.rigor, po));
        const E W1 = E(n4sq / 4) / (pair_second_denominator(N) * pair_denominator(N, a));
        add_supersolution(rep, tag + ": y = r^{2-N/2} - 1 for (V_alpha, W_1)", r_pow(2 - Rational(N) / 2) - E(1),
                          BesselPairSpec{Va, W1, N, 1.0}, po);
      }
      const E Vs = r_pow(-2);
      const E Ws = E(n4sq / 4) / (r_pow(2) * pair_second_denominator(N));
      add_supersolution(rep, "y = r^{2-N/2} - 1 for (r^-2, (N-4)^2/(4r^2(r^2-r^{N/2})))", r_pow(2 - Rational(N) / 2) - E(1),
                        BesselPairSpec{Vs, Ws, N, 1.0}, po);
      rep.checks.push_back(positivity_check("weight > 0", hr_weight(v, N).normalize(), opt.rigor, po));
      break;
    }
    case HrVariant::HR3: {
      const PQFunctions pq = pq_functions(N);
      rep.checks.push_back(positivity_check("phi > 0", pq.phi.normalize(), opt.rigor, po));
      rep.checks.push_back(positivity_check("phi' < 0", (-pq.phi.derivative()).normalize(), opt.rigor, po));
      rep.checks.push_back(positivity_check("psi > 0 (psi(1) = 0)", pq.psi.normalize(), opt.rigor, po));
      rep.checks.push_back(positivity_check("psi' < 0", (-pq.psi.derivative()).normalize(), opt.rigor, po));
      rep.checks.push_back(positivity_check("P - 2/r^2 > 0", (pq.P - r_pow(-2, 2)).normalize(), opt.rigor, po));
      rep.checks.push_back(
          positivity_check("P'/P + 2/r > 0", (pq.P.derivative() / pq.P + r_pow(-1, 2)).normalize(), opt.rigor, po));
      rep.checks.push_back(positivity_check("Q > 0", pq.Q.normalize(), opt.rigor, po));
      rep.checks.push_back(positivity_check("weight > 0", hr_weight(v, N).normalize(), opt.rigor, po));
      add_supersolution(rep, "psi for (P, PQ)", pq.psi, BesselPairSpec{pq.P, pq.P * pq.Q, N, 1.0}, po, false);
      add_side_conditions(rep, "(1, P)", BesselPairSpec{E(1), pq.P, N, 1.0}, po);
      break;
    }
  }
  add_form_check(rep, opt);
  return rep;
}

}  // namespace mems
