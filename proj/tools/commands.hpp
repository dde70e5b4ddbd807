#pragma once

#include "mems/prover.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace memscli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitNonConvergence = 2;
inline constexpr int kExitConfig = 3;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  // Arguments as given, minus --out; replayed verbatim from the manifest.
  std::vector<std::string> argv;

  std::vector<int> dims;
  int M = 2048;
  double gamma = 2.0;
  double alpha = 0.0;
  double beta = 0.0;

  std::optional<std::string> m;
  std::optional<std::string> lambda_prime;
  std::optional<std::string> beta_cert;
  // Empty selects the candidate's own weight for certify; required by hr.
  std::string variant;
  mems::Rigor rigor = mems::Rigor::Interval;

  int from = 5;
  int to = 50;
  int trials = 1000;
  std::uint64_t seed = 1;

  std::filesystem::path out = "memslab_out";
  std::string format;
  std::string isa = "auto";
  bool quiet = false;
};

// "9..16" or "9".
std::vector<int> parse_dims(const std::string& text);

int cmd_branch(const RunConfig& cfg);
int cmd_pullin(const RunConfig& cfg);
int cmd_certify(const RunConfig& cfg);
int cmd_table1(const RunConfig& cfg);
int cmd_hr(const RunConfig& cfg);
int cmd_threshold(const RunConfig& cfg);

}  // namespace memscli
