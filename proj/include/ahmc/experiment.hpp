#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ahmc/adaptive.hpp"

namespace ahmc {

// Error categories, each mapped to its own CLI exit code.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct FilesystemError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CompareError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitFilesystem = 4;
inline constexpr int kExitCompare = 5;

/// One batch experiment: a model, a sampler setup and the run plan.
struct ExperimentConfig {
  nlohmann::json model;  // model section, normalized on echo

  std::string mode = "adaptive";  // adaptive | fixed
  double eps_lo = 0.0, eps_hi = 0.0;
  int L_lo = 1, L_hi = 1;
  int eps_grid_size = 200;
  double gamma0_eps = 0.0;  // 0 means grid midpoint
  int gamma0_steps = 0;
  int burnin = 1000;
  int n_samples = 5000;
  int window = 0;  // 0 means burnin / k
  int k = 100;
  double delta = 0.1;
  double scale_alpha = 4.0;
  double kernel_alpha = 0.2;
  double noise = 0.1;
  bool fixed_length = false;
  bool adapt = true;
  double init_scale = 1.0;

  int chains = 1;
  std::uint64_t seed = 0;
  int workers = 1;
  std::string output_dir = "out";
};

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);

// Strict parse: unknown keys and malformed values raise ConfigError naming
// the field.
ExperimentConfig parse_config(const nlohmann::json& root);
ExperimentConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const ExperimentConfig& config);

// Instantiate the model section; CSV paths are resolved against base_dir.
std::unique_ptr<TargetModel> build_model(const nlohmann::json& model,
                                         const std::filesystem::path& base_dir);

// The per-chain sampler configuration chain `chain_index` will run; the
// chain seed is substream chain_index of the master seed.
AdaptiveRunConfig chain_run_config(const ExperimentConfig& config,
                                   int chain_index);

// Run all chains (up to `workers` concurrently) and write per-chain samples,
// trace and diagnostics plus config.json and summary.csv into output_dir.
// Deterministic under the master seed. Returns the output directory.
std::filesystem::path run_experiment(const ExperimentConfig& config,
                                     const std::filesystem::path& base_dir);

// Side-by-side per-chain ESS/L comparison of completed runs over the same
// model, with ratio columns against the first run.
void write_comparison(const std::vector<std::filesystem::path>& run_dirs,
                      std::ostream& out);

int cli_main(int argc, const char* const* argv);

}  // namespace ahmc
