// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include "mems/branch.hpp"
#include "mems/certificates.hpp"
#include "mems/hardy_rellich.hpp"
#include "mems/stability.hpp"
#include "oracles.hpp"
#include "support.hpp"

#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace mems;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::string info;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (detail.size() < 400) detail += (detail.empty() ? "" : "; ") + what;
  }
};

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

int failures = 0;

void run(int id, const char* name, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  const std::string& text = o.pass ? o.info : o.detail;
  std::printf("%s %d %s (%.1f s)%s%s\n", o.pass ? "PASS" : "FAIL", id, name, secs, text.empty() ? "" : ": ",
              text.c_str());
  std::fflush(stdout);
}

BranchResult sweep(int N, int M) {
  ContinuationConfig c;
  c.N = N;
  c.M = M;
  return sweep_branch(c);
}

// Shared by criteria 2, 3 and 5.
std::map<int, BranchResult> production;

Outcome operator_fidelity() {
  Outcome o;
  double worst = 0.0, slowest = 0.0;
  for (int N : {5, 9, 12, 31}) {
    const auto t0 = std::chrono::steady_clock::now();
    const double lb = static_cast<double>(oracle::lambda_bar(N));
    auto err = [lb, N](int M) {
      return support::bilaplacian_error(
          N, M, {0.0, -4.0 / 3.0}, [](double r) { return 1.0 - std::pow(r, 4.0 / 3.0); },
          [lb](double r) { return lb * std::pow(r, -8.0 / 3.0); });
    };
    const support::OperatorError e = err(2048);
    const support::OrderEstimate ord = support::observed_order(err, {128, 256, 512, 1024});
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const std::string tag = "N=" + std::to_string(N);
    o.require(e.error < 1e-3, tag + fmt(" error %.3g", e.error));
    o.require(ord.M > 0 && ord.order >= 1.8, tag + fmt(" order %.3f at M=%g", ord.order, ord.M));
    o.require(secs < 1.0, tag + fmt(" took %.2f s", secs));
    worst = std::max(worst, e.error);
    slowest = std::max(slowest, secs);
    o.info += tag + fmt(" order %.2f, ", ord.order);
  }
  o.info += fmt("max error %.2e, slowest N %.2f s", worst, slowest);
  return o;
}

Outcome pullin_bounds_check() {
  Outcome o;
  const double beam = nu1(1, *build_grid(1, 2048)).value;
  const double disk = nu1(2, *build_grid(2, 2048)).value;
  o.require(std::abs(beam - oracle::beam_nu1()) <= 0.01, fmt("beam nu1 %.6f", beam));
  o.require(std::abs(disk - oracle::plate_nu1(2)) <= 0.05, fmt("disk nu1 %.6f", disk));
  o.info = fmt("nu1 beam %.4f disk %.4f", beam, disk);
  double slowest = 0.0;
  for (int N = 1; N <= 16; ++N) {
    const auto t0 = std::chrono::steady_clock::now();
    const BranchResult& b = production[N] = sweep(N, 2048);
    const double n1 = nu1(N, *b.points.front().profile.grid).value;
    const PullinBounds pb = pullin_bounds(N, n1);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const std::string tag = "N=" + std::to_string(N);
    o.require(pb.consistent, tag + " bounds inconsistent");
    o.require(b.bracket.first >= pb.lower && b.bracket.second <= pb.upper,
              tag + fmt(" bracket [%.8g, ", b.bracket.first, b.bracket.second) +
                  fmt("%.8g] outside [%.8g, ", b.bracket.second, pb.lower) + fmt("%.8g]", pb.upper));
    o.require(secs < 120.0, tag + fmt(" took %.1f s", secs));
    slowest = std::max(slowest, secs);
  }
  o.info += fmt(", slowest N %.1f s", slowest);
  return o;
}

Outcome strict_lower_bound() {
  Outcome o;
  for (int N = 9; N <= 16; ++N) {
    const double lb = static_cast<double>(oracle::lambda_bar(N));
    o.require(production.at(N).bracket.first > lb,
              "N=" + std::to_string(N) + fmt(" lower end %.8g vs %.8g", production.at(N).bracket.first, lb));
  }
  return o;
}

Outcome critical_dimension() {
  Outcome o;
  for (int M : {1024, 2048, 4096}) {
    for (int N = 1; N <= 16; ++N) {
      const BranchResult b = M == 2048 ? production.at(N) : sweep(N, M);
      const Classification want = N <= 8 ? Classification::Regular : Classification::Singular;
      o.require(b.classification == want, "N=" + std::to_string(N) + " M=" + std::to_string(M) + " " +
                                              to_string(b.classification) + fmt(" (exponent %.3f)", b.fit.exponent));
    }
  }
  return o;
}

Outcome profile_sandwich() {
  Outcome o;
  for (int N : {9, 12}) {
    const BranchResult& b = production.at(N);
    const SandwichReport s = sandwich_check(b.extremal_profile, b.bracket.first, b.lambda_star_estimate);
    o.require(s.holds(5e-2), "N=" + std::to_string(N) + fmt(" violation %.3g", s.max_violation()));
    o.info += "N=" + std::to_string(N) + fmt(" C0 %.4f violation %.2e  ", s.C0, s.max_violation());
  }
  return o;
}

Outcome table_reproduction() {
  Outcome o;
  auto interval_tier = [&](const CertificateReport& r, const std::string& tag) {
    o.require(r.rigor == Rigor::Interval, tag + " not interval rigor");
    o.require(r.bounds_certified, tag + " bounds not certified");
  };
  for (const Table1Row& row : table1({10, 11, 12, 13, 14, 15, 16})) {
    const std::string tag = "row N=" + std::to_string(row.N);
    o.require(row.report.candidate_verdict == Verdict::Pass, tag + " candidate Fail");
    o.require(row.report.cond1.holds && row.report.cond2.holds, tag + " condition not proven");
    interval_tier(row.report, tag);
  }
  for (int N : {17, 20, 30, 31, 40}) {
    const CertificateReport r = certify_dimension(N);
    const std::string tag = "N=" + std::to_string(N);
    o.require(r.candidate_verdict == Verdict::Pass, tag + " candidate Fail");
    o.require(r.verdict == Verdict::Pass, tag + " verdict Fail");
    interval_tier(r, tag);
  }
  const CertificateReport nine = certify_dimension(9);
  o.require(nine.beta_computed > nine.lambda_prime_computed,
            fmt("N=9 computed beta %.6g <= lambda' ", to_double(nine.beta_computed)) +
                fmt("%.6g", to_double(nine.lambda_prime_computed)));
  o.require(nine.verdict == Verdict::Pass, "N=9 verdict Fail");
  o.info = fmt("N=9 computed lambda' %.6g beta ", to_double(nine.lambda_prime_computed)) +
           fmt("%.6g", to_double(nine.beta_computed));
  interval_tier(nine, "N=9");
  return o;
}

Outcome threshold() {
  Outcome o;
  for (int N = 5; N <= 200; ++N) {
    const ThresholdRelation t = threshold_relation(N);
    o.require(t.holds == (N >= 9), "N=" + std::to_string(N));
    o.require(t.holds == (2 * oracle::lambda_bar(N) <= oracle::hardy(N)), "oracle N=" + std::to_string(N));
  }
  return o;
}

Outcome hardy_rellich_suite() {
  Outcome o;
  for (int N : {5, 9, 10, 16}) {
    for (const Rational& a : {Rational(9, 10), Rational(99, 100), Rational(999, 1000)}) {
      const ExactPairResidual e = exact_pair_residual(N, a);
      o.require(e.exact_zero && e.contains_zero && e.enclosure_width < 1e-9,
                "exact pair N=" + std::to_string(N) + fmt(" width %.3g", e.enclosure_width));
    }
  }

  const PQFunctions pq = pq_functions();
  const RatFunc phi = pq.phi.normalize(), psi = pq.psi.normalize();
  const std::vector<SignCheck> checks = {
      positivity_check("P - 2/r^2", (pq.P - RadialExpr::power(-2, 2)).normalize(), Rigor::Interval),
      positivity_check("P'/P + 2/r", (pq.P.derivative() / pq.P + RadialExpr::power(-1, 2)).normalize(), Rigor::Interval),
      positivity_check("phi", phi, Rigor::Interval),
      positivity_check("psi", psi, Rigor::Interval),
  };
  for (const SignCheck& c : checks) o.require(c.passed, c.name + " not proven");
  o.require(limit_at_one(psi).finite() && limit_at_one(psi).value == 0, "psi(1) != 0");

  for (int N = 5; N <= 50; ++N) {
    const Rational lhs = Rational((N - 2) * (N - 2) * (N - 4) * (N - 4), 16) + Rational((N - 1) * (N - 4) * (N - 4), 4);
    o.require(lhs == Rational(N * N * (N - 4) * (N - 4), 16), "identity N=" + std::to_string(N));
  }

  const struct {
    HrVariant v;
    int N;
  } forms[] = {{HrVariant::HR1, 9}, {HrVariant::HR2, 10}, {HrVariant::HR3, 9}};
  for (const auto& f : forms) {
    const FormCheckReport r = discrete_form_check(f.v, f.N, *build_grid(f.N, 2048), 1000);
    o.require(r.trials == 1000 && r.violations == 0 && r.tolerance <= 1e-8,
              std::string(to_string(f.v)) + " violations " + std::to_string(r.violations));
    o.info += std::string(to_string(f.v)) + fmt(" worst gap %.3g  ", r.worst_gap);
  }
  return o;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + MEMS_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

double max_increase(const std::vector<double>& u) {
  double worst = 0.0;
  for (size_t i = 0; i + 1 < u.size(); ++i) worst = std::max(worst, u[i + 1] - u[i]);
  return worst;
}

Outcome properties() {
  Outcome o;
  double worst_d = 0.0;
  int cases = 0, replays = 0;
  const fs::path root = fs::temp_directory_path() / ("memslab_acceptance_" + std::to_string(::getpid()));
  for (std::uint64_t seed : {1, 2, 3}) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dim(1, 16);
    std::uniform_real_distribution<double> ad(-0.3, 0.3), bd(-0.5, 0.0), frac(0.2, 0.9);
    for (int k = 0; k < 3; ++k) {
      ContinuationConfig c;
      c.N = dim(rng);
      c.bc = {ad(rng), bd(rng)};
      c.M = 512;
      c.refinement_check = false;
      const std::string tag = "seed " + std::to_string(seed) + " N=" + std::to_string(c.N);
      const BranchResult b = sweep_branch(c);
      o.require(b.points.size() >= 2, tag + " short branch");
      if (b.points.size() < 2) continue;

      double radial = 0.0, branch = 0.0;
      for (size_t i = 0; i < b.points.size(); ++i) {
        const auto& u = b.points[i].profile.values;
        radial = std::max(radial, max_increase(u));
        if (i == 0) continue;
        const auto& prev = b.points[i - 1].profile.values;
        for (size_t j = 0; j < u.size(); ++j) branch = std::max(branch, prev[j] - u[j]);
      }
      o.require(radial <= 1e-10, tag + fmt(" radial increase %.3g", radial));
      o.require(branch <= 1e-10, tag + fmt(" branch decrease %.3g", branch));

      const double lambda = frac(rng) * b.bracket.first;
      const GridPtr g = b.points.front().profile.grid;
      const SolveOutcome m = monotone_solve(lambda, c.bc, g);
      const SolveOutcome n = newton_solve(lambda, b.points.front().profile);
      o.require(m.converged() && n.converged(), tag + " solver did not converge");
      if (!m.converged() || !n.converged()) continue;
      o.require(m.monotonicity_defect <= 1e-12, tag + fmt(" monotone defect %.3g", m.monotonicity_defect));
      double d = 0.0;
      for (size_t j = 0; j < m.field.values.size(); ++j)
        d = std::max(d, std::abs(m.field.values[j] - n.field.values[j]));
      o.require(d < 1e-8, tag + fmt(" solver disagreement %.3g", d));
      worst_d = std::max(worst_d, d);
      ++cases;
    }

    const fs::path a = root / ("s" + std::to_string(seed) + "a"), r = root / ("s" + std::to_string(seed) + "b");
    const std::string args =
        "hr verify --variant hr1 --dim 9 --M 256 --trials 50 --seed " + std::to_string(seed) + " --quiet --out ";
    const bool ran = run_cli(args + a.string()) == 0 &&
                     run_cli("replay --quiet --manifest " + (a / "manifest.json").string() + " --out " + r.string()) == 0;
    o.require(ran, "seed " + std::to_string(seed) + " cli run failed");
    if (ran) {
      const auto ma = nlohmann::json::parse(slurp(a / "manifest.json"));
      bool same = !ma["outputs"].empty();
      for (const auto& f : ma["outputs"]) same = same && slurp(a / f.get<std::string>()) == slurp(r / f.get<std::string>());
      o.require(same, "seed " + std::to_string(seed) + " replay differs");
      replays += same;
    }
  }
  std::error_code ec;
  fs::remove_all(root, ec);
  o.info = std::to_string(cases) + " branches" + fmt(", max solver disagreement %.2e, ", worst_d) +
           std::to_string(replays) + " identical replays";
  return o;
}

}  // namespace

int main() {
  run(1, "operator fidelity", operator_fidelity);
  run(2, "pull-in bounds", pullin_bounds_check);
  run(3, "strict lower bound", strict_lower_bound);
  run(4, "critical dimension", critical_dimension);
  run(5, "profile sandwich", profile_sandwich);
  run(6, "certificate table", table_reproduction);
  run(7, "threshold relation", threshold);
  run(8, "Hardy-Rellich suite", hardy_rellich_suite);
  run(9, "property suites", properties);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
