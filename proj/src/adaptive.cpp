#include "ahmc/adaptive.hpp"

#include <cmath>
#include <stdexcept>

#include "ahmc/rng.hpp"

namespace ahmc {

int AdaptiveRunConfig::effective_window() const {
  if (window > 0) return window;
  return std::max(1, burnin / std::max(1, schedules.k));
}

int AdaptiveRunConfig::rounds() const {
  const int m = effective_window();
  const long total = long(burnin) + long(n_samples);
  return static_cast<int>((total + m - 1) / m);
}

namespace {

void validate_config(const AdaptiveRunConfig& config) {
  validate(config.gamma0);
  if (!config.space.contains(config.gamma0)) {
    throw std::invalid_argument("run_adaptive: gamma0 outside the search space");
  }
  if (config.burnin < 0 || config.n_samples < 1) {
    throw std::invalid_argument(
        "run_adaptive: need burnin >= 0 and n_samples >= 1");
  }
  if (!(config.noise_variance > 0.0)) {
    throw std::invalid_argument("run_adaptive: noise variance must be positive");
  }
}

Eigen::VectorXd starting_point(const TargetModel& model,
                               const AdaptiveRunConfig& config) {
  if (config.init.size() > 0) {
    if (static_cast<int>(config.init.size()) != model.dim()) {
      throw std::invalid_argument("run_adaptive: init dimension mismatch");
    }
    return config.init;
  }
  std::mt19937_64 gen = rng::engine(config.seed, rng::kInit);
  std::normal_distribution<double> normal;
  Eigen::VectorXd x(model.dim());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    x(i) = config.init_scale * normal(gen);
  }
  return x;
}

}  // namespace

RunResult run_adaptive(const TargetModel& model,
                       const AdaptiveRunConfig& config) {
  validate_config(config);
  const int m = config.effective_window();
  const int rounds = config.rounds();
  const RewardFn reward_fn =
      config.reward ? config.reward : normalized_esjd_reward();

  ChainState state = make_chain_state(
      model, starting_point(model, config),
      rng::derive_seed(config.seed, rng::kChain));
  std::mt19937_64 adapt_rng = rng::engine(config.seed, rng::kAdapt);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  CollapsedGp gp(config.space, config.kernel_width, config.noise_variance);
  RewardDataset dataset;
  dataset.noise_variance = config.noise_variance;
  ScaleState scale;
  HyperParams gamma = config.gamma0;

  RunResult out;
  out.samples.resize(config.n_samples, model.dim());
  out.records.reserve(std::size_t(rounds) * std::size_t(m));
  out.trace.rounds.reserve(std::size_t(rounds));

  long transition = 0;
  int collected = 0;
  SampleWindow window;
  for (int i = 1; i <= rounds; ++i) {
    window.positions.clear();
    window.positions.push_back(state.position);
    window.leapfrog_steps = 0;
    const std::size_t first_record = out.records.size();
    for (int j = 0; j < m; ++j) {
      TransitionRecord rec = hmc_transition(state, model, gamma,
                                            config.fixed_length);
      ++transition;
      window.positions.push_back(state.position);
      window.leapfrog_steps += rec.steps_done;
      out.trace.total_leapfrog += rec.steps_done;
      if (transition > config.burnin && collected < config.n_samples) {
        out.samples.row(collected++) = state.position;
        out.post_burnin_leapfrog += rec.steps_done;
      }
      out.records.push_back(rec);
    }
    std::span<const TransitionRecord> round_records(
        out.records.data() + first_record, std::size_t(m));
    const double reward = reward_fn(window, round_records, gamma);
    if (!std::isfinite(reward)) {
      throw std::invalid_argument("run_adaptive: reward function returned a "
                                  "non-finite value");
    }
    dataset = add_observation(std::move(dataset), gamma, reward);
    gp.add(gamma, reward);
    scale = update_scale(scale, reward, config.schedules.scale_alpha);

    const double p = adapt_probability(i, config.schedules.k);
    bool adapted = false;
    if (config.adapt) {
      const double u = uniform(adapt_rng);
      if (u < p) {
        adapted = true;
      }
    }
    out.trace.rounds.push_back(RoundRecord{
        i, gamma, reward, p, scale.s, adapted,
        /*burnin_phase=*/transition <= long(config.burnin)});
    if (adapted) {
      gamma = propose_next(gp, scale.s, i, config.schedules);
    }
  }
  out.dataset = std::move(dataset);
  return out;
}

RunResult run_fixed(const TargetModel& model, const HyperParams& gamma,
                    int burnin, int n_samples, std::uint64_t seed) {
  validate(gamma);
  AdaptiveRunConfig config;
  config.space = SearchSpace(gamma.eps, gamma.eps, gamma.steps, gamma.steps, 1);
  config.gamma0 = gamma;
  config.burnin = burnin;
  config.n_samples = n_samples;
  config.seed = seed;
  config.adapt = false;
  return run_adaptive(model, config);
}

}  // namespace ahmc
