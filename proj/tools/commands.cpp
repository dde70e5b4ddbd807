#include "commands.hpp"

#include "mems/branch.hpp"
#include "mems/certificates.hpp"
#include "mems/field_io.hpp"
#include "mems/hardy_rellich.hpp"
#include "mems/simd.hpp"
#include "mems/stability.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <limits>
#include <sstream>
#include <thread>

namespace memscli {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "1.0.0";

template <class Fn>
auto parallel_map(const std::vector<int>& dims, Fn fn) {
  using R = decltype(fn(0));
  std::vector<R> results;
  results.reserve(dims.size());
  const size_t width = std::max(1u, std::thread::hardware_concurrency());
  for (size_t start = 0; start < dims.size(); start += width) {
    std::vector<std::future<R>> batch;
    for (size_t i = start; i < std::min(dims.size(), start + width); ++i)
      batch.push_back(std::async(width > 1 ? std::launch::async : std::launch::deferred, fn, dims[i]));
    for (auto& f : batch) results.push_back(f.get());
  }
  return results;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void write_json(const fs::path& path, const ordered_json& j) { write_text(path, j.dump(2) + "\n"); }

void emit(const RunConfig& cfg, const std::string& text) {
  if (!cfg.quiet) std::cout << text << (text.empty() || text.back() == '\n' ? "" : "\n");
}

void write_manifest(const RunConfig& cfg, const ordered_json& config, const std::vector<std::string>& outputs) {
  ordered_json m;
  m["tool"] = "memslab";
  m["version"] = kVersion;
  m["command"] = cfg.command;
  m["argv"] = cfg.argv;
  m["config"] = config;
  m["build"] = {{"compiler", __VERSION__}, {"cxx_standard", __cplusplus}, {"isa", mems::simd::kernels().name}};
  m["outputs"] = outputs;
  write_json(cfg.out / "manifest.json", m);
}

ordered_json grid_json(const RunConfig& cfg) { return {{"M", cfg.M}, {"gamma", cfg.gamma}}; }

ordered_json bc_json(const mems::BoundaryData& bc) { return {{"alpha", bc.alpha}, {"beta", bc.beta}}; }

void require_dims(const RunConfig& cfg) {
  if (cfg.dims.empty()) throw ConfigError("--dim or --dims is required");
}

void require_grid(const RunConfig& cfg) {
  if (cfg.M < 16) throw ConfigError("--M must be at least 16");
  if (!(cfg.gamma >= 1.0)) throw ConfigError("--gamma must be >= 1");
  const mems::BoundaryData bc{cfg.alpha, cfg.beta};
  if (!bc.admissible()) throw ConfigError("boundary data not admissible: need beta <= 0 and alpha - beta/2 < 1");
}

std::string format_or(const RunConfig& cfg, const std::string& fallback, std::initializer_list<const char*> allowed) {
  const std::string f = cfg.format.empty() ? fallback : cfg.format;
  for (const char* a : allowed)
    if (f == a) return f;
  throw ConfigError("format '" + f + "' not supported by " + cfg.command);
}

mems::ContinuationConfig continuation(const RunConfig& cfg, int N) {
  mems::ContinuationConfig c;
  c.N = N;
  c.M = cfg.M;
  c.gamma = cfg.gamma;
  c.bc = {cfg.alpha, cfg.beta};
  return c;
}

mems::BranchResult sweep(const RunConfig& cfg, int N) {
  if (N < 1) throw ConfigError("dimension must be >= 1");
  try {
    return mems::sweep_branch(continuation(cfg, N));
  } catch (const std::runtime_error& e) {
    throw NonConvergence("N=" + std::to_string(N) + ": " + e.what());
  }
}

std::string tag(int N) { return "N" + std::to_string(N); }

// Profiles nearest to these fractions of lambda*, plus the near-extremal one.
constexpr double kProfileFractions[] = {0.25, 0.5, 0.75};

ordered_json branch_run(const RunConfig& cfg, int N, std::vector<std::string>& files) {
  const mems::BranchResult res = sweep(cfg, N);
  const mems::BranchStability st = mems::stability_along_branch(res.points);

  ordered_json j;
  j["N"] = N;
  j["bc"] = bc_json(res.config.bc);
  j["grid"] = grid_json(cfg);
  j["lambda_star_bracket"] = {res.bracket.first, res.bracket.second};
  j["lambda_star_estimate"] = res.lambda_star_estimate;
  ordered_json pts = ordered_json::array();
  for (size_t i = 0; i < res.points.size(); ++i) {
    ordered_json mu = std::isfinite(st.mu1[i]) ? ordered_json(st.mu1[i]) : ordered_json(nullptr);
    pts.push_back({{"lambda", res.points[i].lambda}, {"sup_norm", res.points[i].sup_norm}, {"mu1", std::move(mu)}});
  }
  j["points"] = std::move(pts);
  j["classification"] = mems::to_string(res.classification);
  j["C0_fit"] = res.fit.C0;
  j["exponent_fit"] = res.fit.exponent;
  j["sup_norm"] = res.sup_norm;
  j["sup_coarse"] = res.sup_coarse;
  j["sup_extrapolated"] = res.sup_extrapolated;
  j["fold_status"] = mems::to_string(res.failure);
  j["stability"] = {{"all_positive", st.all_positive}, {"direction", st.direction}, {"indefinite_at", st.indefinite_at}};
  std::vector<std::string> warnings = res.warnings;
  for (double l : st.indefinite_at)
    warnings.push_back("linearized operator numerically indefinite at lambda = " + std::to_string(l) + "; mu1 not computed");
  j["warnings"] = warnings;

  std::ostringstream curve;
  curve << "# lambda sup_u\n";
  char buf[80];
  for (const auto& p : res.points) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", p.lambda, p.sup_norm);
    curve << buf;
  }
  const std::string curve_name = "curve_" + tag(N) + ".dat";
  write_text(cfg.out / curve_name, curve.str());
  files.push_back(curve_name);

  ordered_json profiles = ordered_json::array();
  for (double frac : kProfileFractions) {
    const double target = frac * res.lambda_star_estimate;
    const auto it = std::min_element(res.points.begin(), res.points.end(), [&](const auto& a, const auto& b) {
      return std::abs(a.lambda - target) < std::abs(b.lambda - target);
    });
    std::snprintf(buf, sizeof buf, "profile_%s_%03d.csv", tag(N).c_str(), static_cast<int>(frac * 100));
    mems::write_field(cfg.out / buf, it->profile);
    profiles.push_back({{"lambda", it->lambda}, {"file", buf}});
    files.push_back(buf);
    files.push_back(mems::sidecar_path(buf).string());
  }
  const std::string ext = "profile_" + tag(N) + "_extremal.csv";
  mems::write_field(cfg.out / ext, res.extremal_profile);
  profiles.push_back({{"lambda", res.bracket.first}, {"file", ext}});
  files.push_back(ext);
  files.push_back(mems::sidecar_path(ext).string());
  j["profiles"] = std::move(profiles);
  j["curve"] = curve_name;

  const std::string name = "branch_" + tag(N) + ".json";
  write_json(cfg.out / name, j);
  files.push_back(name);
  return j;
}

ordered_json condition_json(const mems::ConditionReport& c) {
  return {{"value", c.value}, {"margin", c.margin},         {"argmin", c.argmin}, {"boundary_limit", c.boundary_limit},
          {"holds", c.holds}, {"method", c.method},         {"boxes", c.boxes},   {"detail", c.detail}};
}

ordered_json rational_json(const mems::Rational& q) {
  return {{"exact", mems::format_rational(q, 17)}, {"value", mems::to_double(q)}};
}

ordered_json certificate_json(const mems::CertificateReport& r) {
  ordered_json j;
  j["N"] = r.candidate.N;
  j["m"] = mems::format_rational(r.candidate.m);
  j["variant"] = mems::to_string(r.candidate.variant);
  j["rigor"] = mems::to_string(r.rigor);
  j["lambda_prime"] = rational_json(r.candidate.lambda_prime);
  j["beta"] = rational_json(r.candidate.beta);
  j["cond1"] = condition_json(r.cond1);
  j["cond2"] = condition_json(r.cond2);
  j["candidate_verdict"] = mems::to_string(r.candidate_verdict);
  j["sharpest_lambda_prime"] = r.sharpest_lambda_prime;
  j["sharpest_beta"] = r.sharpest_beta;
  j["lambda_prime_bound"] = r.lambda_prime_bound;
  j["beta_bound"] = r.beta_bound;
  j["bounds_certified"] = r.bounds_certified;
  j["lambda_prime_computed"] = rational_json(r.lambda_prime_computed);
  j["beta_computed"] = rational_json(r.beta_computed);
  j["cond1_computed"] = condition_json(r.cond1_computed);
  j["cond2_computed"] = condition_json(r.cond2_computed);
  j["verdict"] = mems::to_string(r.verdict);
  ordered_json claims = ordered_json::array();
  for (const auto& c : r.claims) claims.push_back({{"label", c.label}, {"supported", c.supported}, {"detail", c.detail}});
  j["claims"] = std::move(claims);
  j["note"] = r.note;
  return j;
}

mems::Rational rational_arg(const std::string& flag, const std::string& text) {
  try {
    return mems::parse_rational(text);
  } catch (const std::exception&) {
    throw ConfigError(flag + ": not a number: " + text);
  }
}

}  // namespace

std::vector<int> parse_dims(const std::string& text) {
  const auto dots = text.find("..");
  try {
    size_t used = 0;
    if (dots == std::string::npos) {
      const int n = std::stoi(text, &used);
      if (used != text.size()) throw ConfigError("bad --dims: " + text);
      return {n};
    }
    const std::string a = text.substr(0, dots), b = text.substr(dots + 2);
    const int lo = std::stoi(a, &used);
    if (used != a.size()) throw ConfigError("bad --dims: " + text);
    const int hi = std::stoi(b, &used);
    if (used != b.size() || hi < lo) throw ConfigError("bad --dims: " + text);
    std::vector<int> out;
    for (int n = lo; n <= hi; ++n) out.push_back(n);
    return out;
  } catch (const std::logic_error&) {
    throw ConfigError("bad --dims: " + text);
  }
}

int cmd_branch(const RunConfig& cfg) {
  require_dims(cfg);
  require_grid(cfg);
  const std::string fmt = format_or(cfg, "json", {"json", "csv"});
  fs::create_directories(cfg.out);

  const auto runs = parallel_map(cfg.dims, [&](int N) {
    std::vector<std::string> files;
    ordered_json j = branch_run(cfg, N, files);
    return std::make_pair(std::move(j), std::move(files));
  });

  std::vector<std::string> outputs;
  ordered_json summary = ordered_json::array();
  std::ostringstream csv;
  csv << "N,lambda,sup_norm,mu1\n";
  for (const auto& [j, files] : runs) {
    outputs.insert(outputs.end(), files.begin(), files.end());
    summary.push_back({{"N", j["N"]},
                       {"lambda_star_bracket", j["lambda_star_bracket"]},
                       {"classification", j["classification"]},
                       {"C0_fit", j["C0_fit"]},
                       {"exponent_fit", j["exponent_fit"]},
                       {"sup_extrapolated", j["sup_extrapolated"]}});
    char buf[128];
    for (const auto& p : j["points"]) {
      const double mu = p["mu1"].is_null() ? std::numeric_limits<double>::quiet_NaN() : p["mu1"].get<double>();
      std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g\n", j["N"].get<int>(), p["lambda"].get<double>(),
                    p["sup_norm"].get<double>(), mu);
      csv << buf;
    }
  }
  if (fmt == "csv") {
    write_text(cfg.out / "branch_points.csv", csv.str());
    outputs.push_back("branch_points.csv");
  }
  write_manifest(cfg, {{"dims", cfg.dims}, {"grid", grid_json(cfg)}, {"bc", bc_json({cfg.alpha, cfg.beta})}, {"format", fmt}},
                 outputs);
  emit(cfg, fmt == "csv" ? csv.str() : (runs.size() == 1 ? runs[0].first : ordered_json(summary)).dump(2));
  return kExitOk;
}

int cmd_pullin(const RunConfig& cfg) {
  require_dims(cfg);
  require_grid(cfg);
  format_or(cfg, "json", {"json"});
  fs::create_directories(cfg.out);

  const auto reports = parallel_map(cfg.dims, [&](int N) {
    const mems::BranchResult res = sweep(cfg, N);
    const mems::GridPtr grid = mems::build_grid(N, cfg.M, cfg.gamma);
    const mems::Nu1Result nu = mems::nu1(N, *grid);
    const mems::PullinBounds b = mems::pullin_bounds(N, nu.value);
    const mems::EigenResult eig = mems::mu1(res.extremal_profile, res.bracket.first);

    ordered_json j;
    j["N"] = N;
    j["bc"] = bc_json(res.config.bc);
    j["grid"] = grid_json(cfg);
    j["lambda_star_bracket"] = {res.bracket.first, res.bracket.second};
    j["lambda_bar"] = mems::lambda_bar(N);
    j["nu1"] = {{"value", nu.value}, {"coarse", nu.coarse}, {"fine", nu.fine}};
    j["bounds"] = {{"lower", b.lower}, {"lower_exact", mems::format_rational(b.lower_exact, 17)}, {"upper", b.upper}};
    j["inside_bounds"] = res.bracket.first >= b.lower && res.bracket.second <= b.upper;
    j["above_lambda_bar"] = res.bracket.first > mems::lambda_bar(N);
    j["classification"] = mems::to_string(res.classification);
    j["stability"] = {{"lambda", res.bracket.first},
                      {"mu1", eig.definite ? ordered_json(eig.value) : ordered_json(nullptr)},
                      {"definite", eig.definite},
                      {"nu1_reference", nu.value},
                      {"residual", eig.residual}};
    if (N >= 9) {
      const mems::SandwichReport s = mems::sandwich_check(res.extremal_profile, res.bracket.first, res.bracket.first);
      j["sandwich"] = {{"C0", s.C0},
                       {"lower_violation", s.lower_violation},
                       {"upper_violation", s.upper_violation},
                       {"max_violation", s.max_violation()}};
    }
    return j;
  });

  std::vector<std::string> outputs;
  for (const auto& j : reports) {
    const std::string name = "pullin_" + tag(j["N"].get<int>()) + ".json";
    write_json(cfg.out / name, j);
    outputs.push_back(name);
  }
  write_manifest(cfg, {{"dims", cfg.dims}, {"grid", grid_json(cfg)}, {"bc", bc_json({cfg.alpha, cfg.beta})}}, outputs);
  emit(cfg, (reports.size() == 1 ? reports[0] : ordered_json(reports)).dump(2));
  return kExitOk;
}

int cmd_certify(const RunConfig& cfg) {
  require_dims(cfg);
  format_or(cfg, "json", {"json"});
  const bool custom = cfg.m || cfg.lambda_prime || cfg.beta_cert || !cfg.variant.empty();
  std::optional<mems::Rational> m, lp, bc;
  if (cfg.m) m = rational_arg("--m", *cfg.m);
  if (cfg.lambda_prime) lp = rational_arg("--lambda-prime", *cfg.lambda_prime);
  if (cfg.beta_cert) bc = rational_arg("--beta-cert", *cfg.beta_cert);
  std::optional<mems::HrVariant> variant;
  if (!cfg.variant.empty()) variant = mems::parse_variant(cfg.variant);
  fs::create_directories(cfg.out);

  const auto reports = parallel_map(cfg.dims, [&](int N) {
    if (!custom && !variant) return certificate_json(mems::certify_dimension(N, cfg.rigor));
    mems::CandidateW c;
    if (N >= 9) c = mems::dimension_candidate(N);
    c.N = N;
    if (variant) c.variant = *variant;
    if (m) c.m = *m;
    if (lp) c.lambda_prime = *lp;
    if (bc) c.beta = *bc;
    if (!m && N < 9) throw ConfigError("--m is required below N = 9");
    return certificate_json(mems::certify(c, cfg.rigor));
  });

  std::vector<std::string> outputs;
  for (const auto& j : reports) {
    const std::string name = "certify_" + tag(j["N"].get<int>()) + ".json";
    write_json(cfg.out / name, j);
    outputs.push_back(name);
  }
  ordered_json conf{{"dims", cfg.dims}, {"rigor", mems::to_string(cfg.rigor)}};
  if (variant) conf["variant"] = mems::to_string(*variant);
  if (custom) {
    if (cfg.m) conf["m"] = *cfg.m;
    if (cfg.lambda_prime) conf["lambda_prime"] = *cfg.lambda_prime;
    if (cfg.beta_cert) conf["beta_cert"] = *cfg.beta_cert;
  }
  write_manifest(cfg, conf, outputs);
  emit(cfg, (reports.size() == 1 ? reports[0] : ordered_json(reports)).dump(2));
  return kExitOk;
}

int cmd_table1(const RunConfig& cfg) {
  const std::string fmt = format_or(cfg, "markdown", {"markdown", "csv", "json"});
  const std::vector<int> dims = cfg.dims.empty() ? mems::table1_default_dimensions() : cfg.dims;
  for (int N : dims)
    if (N < 9) throw ConfigError("table rows start at N = 9");
  fs::create_directories(cfg.out);

  const auto parts = parallel_map(dims, [&](int N) { return mems::table1({N}, cfg.rigor); });
  std::vector<mems::Table1Row> rows;
  for (const auto& p : parts) rows.insert(rows.end(), p.begin(), p.end());

  std::string text;
  std::string name;
  if (fmt == "markdown") {
    text = mems::table1_markdown(rows);
    name = "table1.md";
  } else if (fmt == "csv") {
    text = mems::table1_csv(rows);
    name = "table1.csv";
  } else {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
      ordered_json j = certificate_json(r.report);
      j["lambda_prime_claimed"] = r.lambda_prime_claimed;
      j["beta_claimed"] = r.beta_claimed;
      arr.push_back(std::move(j));
    }
    text = arr.dump(2) + "\n";
    name = "table1.json";
  }
  write_text(cfg.out / name, text);
  write_manifest(cfg, {{"dims", dims}, {"rigor", mems::to_string(cfg.rigor)}, {"format", fmt}}, {name});
  emit(cfg, text);
  return kExitOk;
}

int cmd_hr(const RunConfig& cfg) {
  require_dims(cfg);
  format_or(cfg, "json", {"json"});
  if (cfg.M < 16) throw ConfigError("--M must be at least 16");
  if (cfg.trials < 0) throw ConfigError("--trials must be >= 0");
  if (cfg.variant.empty()) throw ConfigError("--variant is required");
  const mems::HrVariant v = mems::parse_variant(cfg.variant);
  fs::create_directories(cfg.out);

  mems::HrVerifyOptions opt;
  opt.rigor = cfg.rigor;
  opt.M = cfg.M;
  opt.gamma = cfg.gamma;
  opt.trials = cfg.trials;
  opt.seed = cfg.seed;

  const auto reports = parallel_map(cfg.dims, [&](int N) {
    const mems::HrReport rep = mems::hr_verify(v, N, opt);
    ordered_json j;
    j["variant"] = mems::to_string(rep.variant);
    j["N"] = rep.N;
    j["rigor"] = mems::to_string(rep.rigor);
    ordered_json checks = ordered_json::array();
    for (const auto& c : rep.checks)
      checks.push_back({{"name", c.name},
                        {"margin", c.margin},
                        {"argmin", c.argmin},
                        {"method", c.method},
                        {"passed", c.passed},
                        {"detail", c.detail}});
    j["checks"] = std::move(checks);
    j["verdict"] = rep.verdict() ? "Pass" : "Fail";
    return j;
  });

  std::vector<std::string> outputs;
  for (const auto& j : reports) {
    const std::string name = std::string("hr_") + mems::to_string(v) + "_" + tag(j["N"].get<int>()) + ".json";
    write_json(cfg.out / name, j);
    outputs.push_back(name);
  }
  write_manifest(cfg,
                 {{"dims", cfg.dims},
                  {"variant", mems::to_string(v)},
                  {"rigor", mems::to_string(cfg.rigor)},
                  {"grid", grid_json(cfg)},
                  {"trials", cfg.trials},
                  {"seed", cfg.seed}},
                 outputs);
  emit(cfg, (reports.size() == 1 ? reports[0] : ordered_json(reports)).dump(2));
  return kExitOk;
}

int cmd_threshold(const RunConfig& cfg) {
  const std::string fmt = format_or(cfg, "json", {"json", "csv", "markdown"});
  if (cfg.from < 5 || cfg.to < cfg.from) throw ConfigError("threshold range needs 5 <= --from <= --to");
  fs::create_directories(cfg.out);

  std::vector<mems::ThresholdRelation> rows;
  for (int N = cfg.from; N <= cfg.to; ++N) rows.push_back(mems::threshold_relation(N));

  std::ostringstream text;
  std::string name;
  if (fmt == "json") {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows)
      arr.push_back({{"N", r.N},
                     {"two_lambda_bar", mems::format_rational(r.two_lambda_bar, 17)},
                     {"hardy", mems::format_rational(r.hardy, 17)},
                     {"holds", r.holds}});
    text << arr.dump(2) << "\n";
    name = "threshold.json";
  } else if (fmt == "csv") {
    text << "N,two_lambda_bar,hardy,holds\n";
    for (const auto& r : rows)
      text << r.N << ',' << mems::format_rational(r.two_lambda_bar, 17) << ',' << mems::format_rational(r.hardy, 17)
           << ',' << (r.holds ? "true" : "false") << "\n";
    name = "threshold.csv";
  } else {
    text << "| N | 2 lambda_bar | H_N | 2 lambda_bar <= H_N |\n|---|---|---|---|\n";
    for (const auto& r : rows)
      text << "| " << r.N << " | " << mems::format_rational(r.two_lambda_bar) << " | " << mems::format_rational(r.hardy)
           << " | " << (r.holds ? "yes" : "no") << " |\n";
    name = "threshold.md";
  }
  write_text(cfg.out / name, text.str());
  write_manifest(cfg, {{"from", cfg.from}, {"to", cfg.to}, {"format", fmt}}, {name});
  emit(cfg, text.str());
  return kExitOk;
}

}  // namespace memscli
