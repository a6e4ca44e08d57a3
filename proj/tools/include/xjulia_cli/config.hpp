#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "xjulia/dynamics.hpp"
#include "xjulia/exceptional.hpp"
#include "xjulia_cli/defaults.hpp"

namespace xjulia::cli {

struct FamilySpec {
  enum class Kind { preset, custom, raw };
  Kind kind = Kind::preset;
  double alpha = kPresetAlpha;
  double beta = kPresetBeta;
  std::vector<double> b, bw;
  double lambda_tilde = 0.0;
  std::optional<int> eps1, eps2;
  std::vector<cplx> raw;  // monomial coefficients, ascending

  bool is_raw() const { return kind == Kind::raw; }
  /// Throws ConfigError (field "family") when the data are rejected.
  DarbouxData darboux() const;
};

struct ExperimentConfig {
  FamilySpec family;
  std::vector<int> n_list{kDefaultNList.begin(), kDefaultNList.end()};
  std::size_t samples = kDefaultSamples;
  int burn_in = kDefaultBurnIn;
  std::uint64_t seed = kDefaultSeed;
  int chains = kDefaultChains;
  GridSpec grid{{0.0, 0.0}, kDefaultHalfWidth, kDefaultResolution, kDefaultMaxIter};
  std::filesystem::path output_dir = "xjulia_out";
  Thresholds thresholds;
};

/// Parses a config document. Unknown keys are rejected; every error is a
/// ConfigError naming the offending field.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Range and consistency checks shared by file and flag input.
void validate(const ExperimentConfig& cfg);

/// Sets a threshold by name; throws ConfigError for unknown names.
void set_threshold(Thresholds& t, const std::string& name, double value);

/// Worker threads: hardware concurrency capped by XJULIA_THREADS.
int worker_threads();

}  // namespace xjulia::cli
