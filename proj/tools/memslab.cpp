#include "commands.hpp"

#include "mems/simd.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>

namespace {

using memscli::RunConfig;

// Raw arguments without --out and --quiet, so that a manifest replays into any directory.
std::vector<std::string> strip_out(const std::vector<std::string>& args) {
  std::vector<std::string> kept;
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--out") {
      ++i;
      continue;
    }
    if (args[i].rfind("--out=", 0) == 0 || args[i] == "--quiet") continue;
    kept.push_back(args[i]);
  }
  return kept;
}

void apply_isa(const std::string& isa) {
  using mems::simd::Isa;
  if (isa == "auto") {
    mems::simd::reset_isa();
  } else if (isa == "scalar") {
    mems::simd::select_isa(Isa::Scalar);
  } else if (!mems::simd::select_isa(Isa::Avx2)) {
    throw memscli::ConfigError("AVX2 kernels unavailable on this machine or build");
  }
}

int run(const std::vector<std::string>& args);

int replay(const std::string& manifest_path, const std::string& out, bool quiet) {
  std::ifstream in(manifest_path);
  if (!in) throw memscli::ConfigError("cannot read manifest " + manifest_path);
  nlohmann::json m;
  try {
    m = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw memscli::ConfigError(std::string("bad manifest: ") + e.what());
  }
  if (!m.contains("argv") || !m["argv"].is_array()) throw memscli::ConfigError("manifest without argv");
  auto argv = m["argv"].get<std::vector<std::string>>();
  if (argv.empty() || argv.front() == "replay") throw memscli::ConfigError("manifest argv is not replayable");
  argv.push_back("--out");
  argv.push_back(out);
  if (quiet) argv.push_back("--quiet");
  return run(argv);
}

int run(const std::vector<std::string>& args) {
  CLI::App app{"Radial MEMS pull-in, extremal-solution and Hardy-Rellich experiments"};
  app.require_subcommand(1);
  app.fallthrough(false);

  RunConfig cfg;
  std::string dim_text;
  std::optional<int> dim;
  std::string manifest;
  std::string hr_action = "verify";

  const std::map<std::string, mems::Rigor> rigors{{"interval", mems::Rigor::Interval}, {"sampled", mems::Rigor::Sampled}};

  auto add_out = [&](CLI::App* s) {
    s->add_option("--out", cfg.out, "output directory")->capture_default_str();
    s->add_option("--format", cfg.format, "output format");
    s->add_option("--isa", cfg.isa, "kernel set")->check(CLI::IsMember({"auto", "scalar", "avx2"}));
    s->add_flag("--quiet", cfg.quiet, "no output on stdout");
  };
  auto add_dims = [&](CLI::App* s) {
    auto* d = s->add_option("--dim", dim, "dimension N");
    s->add_option("--dims", dim_text, "dimension range A..B")->excludes(d);
  };
  auto add_grid = [&](CLI::App* s) {
    s->add_option("--M", cfg.M, "grid nodes")->capture_default_str();
    s->add_option("--gamma", cfg.gamma, "grid grading")->capture_default_str();
  };
  auto add_bc = [&](CLI::App* s) {
    s->add_option("--alpha", cfg.alpha, "u on the boundary")->capture_default_str();
    s->add_option("--beta", cfg.beta, "normal derivative on the boundary")->capture_default_str();
  };
  auto add_rigor = [&](CLI::App* s) {
    s->add_option("--rigor", cfg.rigor, "interval or sampled")->transform(CLI::CheckedTransformer(rigors, CLI::ignore_case));
  };

  auto* branch = app.add_subcommand("branch", "minimal branch sweep up to the fold");
  add_dims(branch);
  add_grid(branch);
  add_bc(branch);
  add_out(branch);

  auto* pullin = app.add_subcommand("pullin", "pull-in bracket against the a priori bounds");
  add_dims(pullin);
  add_grid(pullin);
  add_bc(pullin);
  add_out(pullin);

  auto* certify = app.add_subcommand("certify", "singularity certificate for w_m");
  add_dims(certify);
  certify->add_option("--m", cfg.m, "exponent m > 4/3");
  certify->add_option("--lambda-prime", cfg.lambda_prime, "candidate lambda'");
  certify->add_option("--beta-cert", cfg.beta_cert, "candidate beta");
  certify->add_option("--variant", cfg.variant, "hr1, hr2 or hr3");
  add_rigor(certify);
  add_out(certify);

  auto* table = app.add_subcommand("table1", "certificate table");
  table->add_option("--dims", dim_text, "dimension range A..B");
  add_rigor(table);
  add_out(table);

  auto* hr = app.add_subcommand("hr", "Hardy-Rellich weight verification");
  hr->add_option("action", hr_action, "verify")->check(CLI::IsMember({"verify"}));
  add_dims(hr);
  hr->add_option("--variant", cfg.variant, "hr1, hr2 or hr3");
  add_rigor(hr);
  add_grid(hr);
  hr->add_option("--trials", cfg.trials, "random test functions")->capture_default_str();
  hr->add_option("--seed", cfg.seed, "seed of the test functions")->capture_default_str();
  add_out(hr);

  auto* threshold = app.add_subcommand("threshold", "2 lambda_bar_N against H_N");
  threshold->add_option("--from", cfg.from)->capture_default_str();
  threshold->add_option("--to", cfg.to)->capture_default_str();
  add_out(threshold);

  auto* rerun = app.add_subcommand("replay", "rerun the command recorded in a manifest");
  rerun->add_option("--manifest", manifest, "manifest.json")->required();
  rerun->add_option("--out", cfg.out, "output directory")->required();
  rerun->add_flag("--quiet", cfg.quiet, "no output on stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? memscli::kExitOk : memscli::kExitConfig;
  }

  try {
    if (rerun->parsed()) return replay(manifest, cfg.out.string(), cfg.quiet);

    cfg.argv = strip_out(args);
    if (dim) cfg.dims = {*dim};
    if (!dim_text.empty()) cfg.dims = memscli::parse_dims(dim_text);
    apply_isa(cfg.isa);

    if (branch->parsed()) return cfg.command = "branch", memscli::cmd_branch(cfg);
    if (pullin->parsed()) return cfg.command = "pullin", memscli::cmd_pullin(cfg);
    if (certify->parsed()) return cfg.command = "certify", memscli::cmd_certify(cfg);
    if (table->parsed()) return cfg.command = "table1", memscli::cmd_table1(cfg);
    if (hr->parsed()) return cfg.command = "hr", memscli::cmd_hr(cfg);
    if (threshold->parsed()) return cfg.command = "threshold", memscli::cmd_threshold(cfg);
  } catch (const memscli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return memscli::kExitConfig;
  } catch (const memscli::NonConvergence& e) {
    std::cerr << "non-convergence: " << e.what() << "\n";
    return memscli::kExitNonConvergence;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return memscli::kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return memscli::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return memscli::kExitFailure;
  }
  return memscli::kExitConfig;
}

}  // namespace

int main(int argc, char** argv) { return run(std::vector<std::string>(argv + 1, argv + argc)); }
