#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ahmc/experiment.hpp"

namespace ahmc {

namespace fs = std::filesystem;

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Adaptive HMC experiment driver"};
  app.require_subcommand(1);

  std::string config_path;
  int chains = 0;
  std::uint64_t seed = 0;
  int workers = 0;
  std::string out_dir;
  auto* run = app.add_subcommand("run", "run a configured experiment");
  run->add_option("config", config_path, "experiment config file (JSON)")
      ->required();
  auto* chains_opt =
      run->add_option("--chains", chains, "override the number of chains");
  auto* seed_opt = run->add_option("--seed", seed, "override the master seed");
  auto* workers_opt =
      run->add_option("--workers", workers, "override the worker count");
  auto* out_opt =
      run->add_option("--out", out_dir, "override the output directory");

  std::vector<std::string> dirs;
  std::string compare_out;
  auto* compare = app.add_subcommand("compare", "compare completed runs");
  compare->add_option("dirs", dirs, "run directories to compare")
      ->expected(2, -1);
  compare->add_option("--out", compare_out,
                      "write the comparison CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    return app.exit(err);
  }

  try {
    if (run->parsed()) {
      ExperimentConfig config = load_config(config_path);
      if (chains_opt->count() > 0) config.chains = chains;
      if (seed_opt->count() > 0) config.seed = seed;
      if (workers_opt->count() > 0) config.workers = workers;
      if (out_opt->count() > 0) config.output_dir = out_dir;
      if (config.chains < 1 || config.workers < 1) {
        throw ConfigError("chains and workers must be >= 1");
      }
      const fs::path dir =
          run_experiment(config, fs::path(config_path).parent_path());
      std::cout << "wrote " << config.chains << " chain(s) to " << dir.string()
                << '\n';
      return kExitOk;
    }
    std::vector<fs::path> run_dirs(dirs.begin(), dirs.end());
    if (compare_out.empty()) {
      write_comparison(run_dirs, std::cout);
    } else {
      std::ofstream out(compare_out);
      if (!out) {
        throw FilesystemError("cannot write comparison file: " + compare_out);
      }
      write_comparison(run_dirs, out);
    }
    return kExitOk;
  } catch (const ConfigError& err) {
    std::cerr << "config error: " << err.what() << '\n';
    return kExitConfig;
  } catch (const DataError& err) {
    std::cerr << "data error: " << err.what() << '\n';
    return kExitData;
  } catch (const FilesystemError& err) {
    std::cerr << "filesystem error: " << err.what() << '\n';
    return kExitFilesystem;
  } catch (const CompareError& err) {
    std::cerr << "compare error: " << err.what() << '\n';
    return kExitCompare;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace ahmc
