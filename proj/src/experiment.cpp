#include "ahmc/experiment.hpp"

#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>

#include "ahmc/csv.hpp"
#include "ahmc/diagnostics.hpp"
#include "ahmc/gaussian_target.hpp"
#include "ahmc/log_gaussian_cox.hpp"
#include "ahmc/logistic_regression.hpp"
#include "ahmc/rng.hpp"
#include "ahmc/stochastic_volatility.hpp"

namespace ahmc {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void require_keys(const json& object, const std::string& where,
                  std::initializer_list<const char*> allowed) {
  if (!object.is_object()) {
    throw ConfigError(where + ": expected an object");
  }
  for (const auto& item : object.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ConfigError(where + ": unknown field '" + item.key() + "'");
    }
  }
}

template <typename T>
T get_field(const json& object, const std::string& where, const char* key) {
  if (!object.contains(key)) {
    throw ConfigError(where + ": missing field '" + std::string(key) + "'");
  }
  try {
    return object.at(key).get<T>();
  } catch (const json::exception& err) {
    throw ConfigError(where + ": field '" + std::string(key) +
                      "': " + err.what());
  }
}

template <typename T>
T get_field_or(const json& object, const std::string& where, const char* key,
               T fallback) {
  if (!object.contains(key)) return fallback;
  return get_field<T>(object, where, key);
}

std::pair<double, double> get_bounds(const json& object,
                                     const std::string& where,
                                     const char* key) {
  const auto raw = get_field<std::vector<double>>(object, where, key);
  if (raw.size() != 2) {
    throw ConfigError(where + ": field '" + std::string(key) +
                      "' must be a [lo, hi] pair");
  }
  return {raw[0], raw[1]};
}

std::string chain_file(int chain, const char* suffix) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "chain_%03d_%s", chain, suffix);
  return buffer;
}

}  // namespace

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
  return to_json(a) == to_json(b);
}

ExperimentConfig parse_config(const json& root) {
  require_keys(root, "config",
               {"model", "sampler", "chains", "seed", "workers", "output_dir"});
  ExperimentConfig config;
  if (!root.contains("model")) throw ConfigError("config: missing 'model'");
  config.model = root.at("model");
  if (!config.model.is_object() || !config.model.contains("name")) {
    throw ConfigError("config: 'model' must be an object with a 'name'");
  }

  if (!root.contains("sampler")) throw ConfigError("config: missing 'sampler'");
  const json& sampler = root.at("sampler");
  require_keys(sampler, "sampler",
               {"mode", "eps_bounds", "L_bounds", "eps_grid_size", "gamma0",
                "burnin", "n_samples", "m", "k", "delta", "scale_alpha",
                "kernel_alpha", "noise", "fixed_length", "adapt",
                "init_scale"});

  config.mode = get_field_or<std::string>(sampler, "sampler", "mode", "adaptive");
  if (config.mode != "adaptive" && config.mode != "fixed") {
    throw ConfigError("sampler: mode must be 'adaptive' or 'fixed'");
  }
  config.burnin = get_field_or<int>(sampler, "sampler", "burnin", 1000);
  config.n_samples = get_field_or<int>(sampler, "sampler", "n_samples", 5000);
  config.window = get_field_or<int>(sampler, "sampler", "m", 0);
  config.k = get_field_or<int>(sampler, "sampler", "k", 100);
  config.delta = get_field_or<double>(sampler, "sampler", "delta", 0.1);
  config.scale_alpha =
      get_field_or<double>(sampler, "sampler", "scale_alpha", 4.0);
  config.kernel_alpha =
      get_field_or<double>(sampler, "sampler", "kernel_alpha", 0.2);
  config.noise = get_field_or<double>(sampler, "sampler", "noise", 0.1);
  config.fixed_length =
      get_field_or<bool>(sampler, "sampler", "fixed_length", false);
  config.adapt = get_field_or<bool>(sampler, "sampler", "adapt", true);
  config.init_scale =
      get_field_or<double>(sampler, "sampler", "init_scale", 1.0);
  config.eps_grid_size =
      get_field_or<int>(sampler, "sampler", "eps_grid_size", 200);

  if (sampler.contains("gamma0")) {
    const auto raw = get_field<std::vector<double>>(sampler, "sampler", "gamma0");
    if (raw.size() != 2 || raw[1] != std::floor(raw[1])) {
      throw ConfigError("sampler: gamma0 must be [eps, L] with integer L");
    }
    config.gamma0_eps = raw[0];
    config.gamma0_steps = static_cast<int>(raw[1]);
  }

  const bool has_bounds =
      sampler.contains("eps_bounds") || sampler.contains("L_bounds");
  if (config.mode == "adaptive" || has_bounds) {
    std::tie(config.eps_lo, config.eps_hi) =
        get_bounds(sampler, "sampler", "eps_bounds");
    const auto l_bounds = get_bounds(sampler, "sampler", "L_bounds");
    if (l_bounds.first != std::floor(l_bounds.first) ||
        l_bounds.second != std::floor(l_bounds.second)) {
      throw ConfigError("sampler: L_bounds must be integers");
    }
    config.L_lo = static_cast<int>(l_bounds.first);
    config.L_hi = static_cast<int>(l_bounds.second);
  } else {
    // fixed mode without bounds: the degenerate box at gamma0
    if (config.gamma0_steps == 0) {
      throw ConfigError("sampler: fixed mode requires gamma0");
    }
    config.eps_lo = config.eps_hi = config.gamma0_eps;
    config.L_lo = config.L_hi = config.gamma0_steps;
    config.eps_grid_size = 1;
  }

  SearchSpace space;  // validates the bounds
  try {
    space = SearchSpace(config.eps_lo, config.eps_hi, config.L_lo, config.L_hi,
                        config.eps_grid_size);
  } catch (const std::invalid_argument& err) {
    throw ConfigError(std::string("sampler: ") + err.what());
  }
  if (config.gamma0_steps == 0) {
    // default starting point: the grid midpoint
    const auto eps_values = space.eps_grid();
    config.gamma0_eps = eps_values[eps_values.size() / 2];
    config.gamma0_steps = (config.L_lo + config.L_hi) / 2;
  }
  if (!space.contains(HyperParams{config.gamma0_eps, config.gamma0_steps})) {
    throw ConfigError("sampler: gamma0 outside the search space");
  }
  if (config.burnin < 0 || config.n_samples < 1) {
    throw ConfigError("sampler: need burnin >= 0 and n_samples >= 1");
  }
  if (config.mode == "fixed") config.adapt = false;

  config.chains = get_field_or<int>(root, "config", "chains", 1);
  config.seed = get_field_or<std::uint64_t>(root, "config", "seed", 0);
  config.workers = get_field_or<int>(root, "config", "workers", 1);
  config.output_dir =
      get_field_or<std::string>(root, "config", "output_dir", "out");
  if (config.chains < 1 || config.workers < 1) {
    throw ConfigError("config: chains and workers must be >= 1");
  }
  return config;
}

ExperimentConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw FilesystemError("cannot open config file: " + path.string());
  }
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& err) {
    throw ConfigError("config parse error in " + path.string() + ": " +
                      err.what());
  }
  return parse_config(root);
}

json to_json(const ExperimentConfig& config) {
  json sampler{
      {"mode", config.mode},
      {"eps_bounds", {config.eps_lo, config.eps_hi}},
      {"L_bounds", {config.L_lo, config.L_hi}},
      {"eps_grid_size", config.eps_grid_size},
      {"gamma0", {config.gamma0_eps, double(config.gamma0_steps)}},
      {"burnin", config.burnin},
      {"n_samples", config.n_samples},
      {"m", config.window},
      {"k", config.k},
      {"delta", config.delta},
      {"scale_alpha", config.scale_alpha},
      {"kernel_alpha", config.kernel_alpha},
      {"noise", config.noise},
      {"fixed_length", config.fixed_length},
      {"adapt", config.adapt},
      {"init_scale", config.init_scale},
  };
  return json{{"model", config.model},
              {"sampler", sampler},
              {"chains", config.chains},
              {"seed", config.seed},
              {"workers", config.workers},
              {"output_dir", config.output_dir}};
}

std::unique_ptr<TargetModel> build_model(const json& model,
                                         const fs::path& base_dir) {
  const std::string name = get_field<std::string>(model, "model", "name");
  auto resolve = [&](const std::string& rel) {
    fs::path p(rel);
    return p.is_absolute() ? p : base_dir / p;
  };
  auto load_csv_vector = [&](const std::string& rel) {
    const fs::path p = resolve(rel);
    if (!fs::exists(p)) {
      throw DataError("data file does not exist: " + p.string());
    }
    try {
      return csv::load_vector(p);
    } catch (const std::runtime_error& err) {
      throw DataError(err.what());
    }
  };

  try {
    if (name == "gaussian") {
      require_keys(model, "model",
                   {"name", "dim", "condition_number", "rotation_seed", "mean",
                    "covariance"});
      if (model.contains("mean") || model.contains("covariance")) {
        const auto mean =
            get_field<std::vector<double>>(model, "model", "mean");
        const auto cov_rows = get_field<std::vector<std::vector<double>>>(
            model, "model", "covariance");
        Eigen::VectorXd mu =
            Eigen::Map<const Eigen::VectorXd>(mean.data(), mean.size());
        Eigen::MatrixXd cov(cov_rows.size(), mean.size());
        for (std::size_t i = 0; i < cov_rows.size(); ++i) {
          if (cov_rows[i].size() != mean.size()) {
            throw ConfigError("model: covariance rows must match mean length");
          }
          for (std::size_t j = 0; j < cov_rows[i].size(); ++j) {
            cov(Eigen::Index(i), Eigen::Index(j)) = cov_rows[i][j];
          }
        }
        return std::make_unique<GaussianTarget>(std::move(mu), std::move(cov));
      }
      const int dim = get_field<int>(model, "model", "dim");
      const double condition =
          get_field_or<double>(model, "model", "condition_number", 1.0);
      const auto rotation_seed =
          get_field_or<std::uint64_t>(model, "model", "rotation_seed", 0);
      if (condition == 1.0) {
        return std::make_unique<GaussianTarget>(GaussianTarget::standard(dim));
      }
      return std::make_unique<GaussianTarget>(
          GaussianTarget::correlated(dim, condition, rotation_seed));
    }

    if (name == "logistic_regression") {
      require_keys(model, "model",
                   {"name", "design_csv", "labels_csv", "prior_variance"});
      Eigen::MatrixXd design;
      const fs::path design_path =
          resolve(get_field<std::string>(model, "model", "design_csv"));
      if (!fs::exists(design_path)) {
        throw DataError("data file does not exist: " + design_path.string());
      }
      try {
        design = csv::load_matrix(design_path);
      } catch (const std::runtime_error& err) {
        throw DataError(err.what());
      }
      Eigen::VectorXd labels =
          load_csv_vector(get_field<std::string>(model, "model", "labels_csv"));
      const double prior_variance =
          get_field<double>(model, "model", "prior_variance");
      return std::make_unique<LogisticRegressionModel>(
          std::move(design), std::move(labels), prior_variance);
    }

    if (name == "log_gaussian_cox") {
      require_keys(model, "model",
                   {"name", "grid_side", "mu", "sigma2", "beta", "counts_csv",
                    "data_seed"});
      const int grid_side = get_field<int>(model, "model", "grid_side");
      const double mu = get_field<double>(model, "model", "mu");
      const double sigma2 = get_field<double>(model, "model", "sigma2");
      const double beta = get_field<double>(model, "model", "beta");
      Eigen::VectorXd counts;
      if (model.contains("counts_csv")) {
        counts =
            load_csv_vector(get_field<std::string>(model, "model", "counts_csv"));
      } else if (model.contains("data_seed")) {
        counts = simulate_lgc_data(
                     grid_side, mu, sigma2, beta,
                     get_field<std::uint64_t>(model, "model", "data_seed"))
                     .counts;
      } else {
        throw ConfigError("model: log_gaussian_cox needs counts_csv or data_seed");
      }
      return std::make_unique<LogGaussianCoxModel>(grid_side, std::move(counts),
                                                   mu, sigma2, beta);
    }

    if (name == "stochastic_volatility") {
      require_keys(model, "model",
                   {"name", "observations_csv", "length", "beta", "phi",
                    "sigma", "data_seed"});
      if (model.contains("observations_csv")) {
        return std::make_unique<StochasticVolatilityModel>(load_csv_vector(
            get_field<std::string>(model, "model", "observations_csv")));
      }
      if (model.contains("data_seed")) {
        const SvData data = simulate_sv_data(
            get_field<int>(model, "model", "length"),
            get_field<double>(model, "model", "beta"),
            get_field<double>(model, "model", "phi"),
            get_field<double>(model, "model", "sigma"),
            get_field<std::uint64_t>(model, "model", "data_seed"));
        return std::make_unique<StochasticVolatilityModel>(data.observations);
      }
      throw ConfigError(
          "model: stochastic_volatility needs observations_csv or data_seed");
    }
  } catch (const std::invalid_argument& err) {
    throw DataError(std::string("model: ") + err.what());
  }
  throw ConfigError("model: unknown model name '" + name + "'");
}

AdaptiveRunConfig chain_run_config(const ExperimentConfig& config,
                                   int chain_index) {
  AdaptiveRunConfig run;
  run.space = SearchSpace(config.eps_lo, config.eps_hi, config.L_lo,
                          config.L_hi, config.eps_grid_size);
  run.schedules =
      Schedules{config.k, config.delta, 2, config.scale_alpha};
  run.gamma0 = HyperParams{config.gamma0_eps, config.gamma0_steps};
  run.burnin = config.burnin;
  run.n_samples = config.n_samples;
  run.window = config.window;
  run.seed = rng::derive_seed(config.seed, std::uint64_t(chain_index));
  run.kernel_width = config.kernel_alpha;
  run.noise_variance = config.noise;
  run.fixed_length = config.fixed_length;
  run.adapt = config.adapt && config.mode == "adaptive";
  run.init_scale = config.init_scale;
  return run;
}

namespace {

void write_samples_csv(const fs::path& path, const Eigen::MatrixXd& samples) {
  std::vector<std::string> header;
  header.reserve(std::size_t(samples.cols()));
  for (Eigen::Index d = 0; d < samples.cols(); ++d) {
    header.push_back("dim_" + std::to_string(d));
  }
  try {
    csv::write_matrix(path, header, samples);
  } catch (const std::runtime_error& err) {
    throw FilesystemError(err.what());
  }
}

void write_trace_csv(const fs::path& path, const ExperimentConfig& config,
                     const RunResult& result) {
  std::ofstream out(path);
  if (!out) throw FilesystemError("cannot write trace file: " + path.string());
  int burnin_rounds = 0;
  for (const auto& round : result.trace.rounds) {
    if (round.burnin_phase) burnin_rounds = round.round;
  }
  out << "# config: " << to_json(config).dump() << '\n';
  out << "# burnin_rounds: " << burnin_rounds << '\n';
  out << "# total_leapfrog: " << result.trace.total_leapfrog << '\n';
  out << "i,eps,L,reward,p_i,s,adapted\n";
  for (const auto& round : result.trace.rounds) {
    out << round.round << ',' << csv::format_double(round.gamma.eps) << ','
        << round.gamma.steps << ',' << csv::format_double(round.reward) << ','
        << csv::format_double(round.p) << ',' << csv::format_double(round.s)
        << ',' << (round.adapted ? 1 : 0) << '\n';
  }
  if (!out) throw FilesystemError("write failed: " + path.string());
}

struct ChainSummary {
  DiagnosticsReport report;
  long post_burnin_leapfrog = 0;
};

}  // namespace

fs::path run_experiment(const ExperimentConfig& config,
                        const fs::path& base_dir) {
  const std::unique_ptr<TargetModel> model = build_model(config.model, base_dir);

  const fs::path out_dir(config.output_dir);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    throw FilesystemError("cannot create output directory " + out_dir.string() +
                          ": " + ec.message());
  }
  {
    std::ofstream out(out_dir / "config.json");
    if (!out) {
      throw FilesystemError("cannot write " + (out_dir / "config.json").string());
    }
    out << to_json(config).dump(2) << '\n';
  }

  std::vector<ChainSummary> summaries(std::size_t(config.chains));
  std::vector<std::exception_ptr> failures(std::size_t(config.chains));
  std::atomic<int> next{0};

  auto worker = [&] {
    for (;;) {
      const int chain = next.fetch_add(1);
      if (chain >= config.chains) return;
      try {
        const AdaptiveRunConfig run_cfg = chain_run_config(config, chain);
        const RunResult result = run_adaptive(*model, run_cfg);
        write_samples_csv(out_dir / chain_file(chain, "samples.csv"),
                          result.samples);
        write_trace_csv(out_dir / chain_file(chain, "trace.csv"), config,
                        result);
        DiagnosticsReport rep =
            report(result.samples, result.post_burnin_leapfrog, result.records);
        {
          const fs::path path = out_dir / chain_file(chain, "diagnostics.txt");
          std::ofstream out(path);
          if (!out) {
            throw FilesystemError("cannot write " + path.string());
          }
          out << rep.to_text();
        }
        summaries[std::size_t(chain)] =
            ChainSummary{std::move(rep), result.post_burnin_leapfrog};
      } catch (...) {
        failures[std::size_t(chain)] = std::current_exception();
        return;
      }
    }
  };

  const int thread_count = std::min(config.workers, config.chains);
  if (thread_count <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(thread_count));
    for (int t = 0; t < thread_count; ++t) pool.emplace_back(worker);
    for (auto& thread : pool) thread.join();
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }

  std::ofstream summary(out_dir / "summary.csv");
  if (!summary) {
    throw FilesystemError("cannot write " + (out_dir / "summary.csv").string());
  }
  summary << "chain,ess_min,ess_median,ess_max,post_burnin_leapfrog,"
             "essl_min,essl_median,essl_max,acceptance_rate\n";
  for (int chain = 0; chain < config.chains; ++chain) {
    const auto& s = summaries[std::size_t(chain)];
    summary << chain << ',' << csv::format_double(s.report.ess_min) << ','
            << csv::format_double(s.report.ess_median) << ','
            << csv::format_double(s.report.ess_max) << ','
            << s.post_burnin_leapfrog << ','
            << csv::format_double(s.report.essl_min) << ','
            << csv::format_double(s.report.essl_median) << ','
            << csv::format_double(s.report.essl_max) << ','
            << csv::format_double(s.report.acceptance_rate) << '\n';
  }
  if (!summary) {
    throw FilesystemError("write failed: " + (out_dir / "summary.csv").string());
  }
  return out_dir;
}

void write_comparison(const std::vector<fs::path>& run_dirs,
                      std::ostream& out) {
  if (run_dirs.size() < 2) {
    throw CompareError("compare needs at least two run directories");
  }
  json first_model;
  std::vector<Eigen::MatrixXd> tables;
  for (std::size_t r = 0; r < run_dirs.size(); ++r) {
    const fs::path& dir = run_dirs[r];
    if (!fs::exists(dir)) {
      throw FilesystemError("run directory does not exist: " + dir.string());
    }
    const fs::path config_path = dir / "config.json";
    const fs::path summary_path = dir / "summary.csv";
    if (!fs::exists(config_path) || !fs::exists(summary_path)) {
      throw FilesystemError("not a completed run directory (missing "
                            "config.json or summary.csv): " + dir.string());
    }
    const ExperimentConfig config = load_config(config_path);
    if (r == 0) {
      first_model = config.model;
    } else if (config.model != first_model) {
      throw CompareError("runs use different models: " + run_dirs[0].string() +
                         " vs " + dir.string());
    }
    try {
      tables.push_back(csv::load_matrix(summary_path));
    } catch (const std::runtime_error& err) {
      throw DataError(err.what());
    }
  }

  std::size_t chains = std::size_t(tables.front().rows());
  for (const auto& table : tables) {
    chains = std::min(chains, std::size_t(table.rows()));
  }
  // summary.csv column order: chain, ess_min, ess_median, ess_max,
  // post_burnin_leapfrog, essl_min, essl_median, essl_max, acceptance_rate
  constexpr int kEsslMin = 5;

  for (std::size_t r = 0; r < run_dirs.size(); ++r) {
    out << "# run" << r << ": " << run_dirs[r].string() << '\n';
  }
  out << "chain";
  for (std::size_t r = 0; r < run_dirs.size(); ++r) {
    out << ",run" << r << "_essl_min,run" << r << "_essl_median,run" << r
        << "_essl_max";
  }
  for (std::size_t r = 1; r < run_dirs.size(); ++r) {
    out << ",run" << r << "_ratio_min,run" << r << "_ratio_median,run" << r
        << "_ratio_max";
  }
  out << '\n';
  for (std::size_t chain = 0; chain < chains; ++chain) {
    out << chain;
    for (const auto& table : tables) {
      for (int c = 0; c < 3; ++c) {
        out << ',' << csv::format_double(table(Eigen::Index(chain), kEsslMin + c));
      }
    }
    for (std::size_t r = 1; r < run_dirs.size(); ++r) {
      for (int c = 0; c < 3; ++c) {
        const double base = tables[0](Eigen::Index(chain), kEsslMin + c);
        const double value = tables[r](Eigen::Index(chain), kEsslMin + c);
        out << ',' << csv::format_double(value / base);
      }
    }
    out << '\n';
  }
}

}  // namespace ahmc
