#include "ahmc/acquisition.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace ahmc {

double beta_schedule(int i, int dim, double delta) {
  if (i < 0) throw std::invalid_argument("beta_schedule: need i >= 0");
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw std::invalid_argument("beta_schedule: delta must be in (0, 1)");
  }
  const double pi_sq = std::numbers::pi * std::numbers::pi;
  return 2.0 * std::log(std::pow(double(i + 1), double(dim) / 2.0 + 2.0) *
                        pi_sq / (3.0 * delta));
}

double adapt_probability(int i, int k) {
  if (i < 1 || k < 1) {
    throw std::invalid_argument("adapt_probability: need i >= 1 and k >= 1");
  }
  return 1.0 / std::sqrt(double(std::max(i - k + 1, 1)));
}

ScaleState update_scale(ScaleState scale, double reward, double scale_alpha) {
  if (!std::isfinite(reward)) {
    throw std::invalid_argument("update_scale: reward must be finite");
  }
  if (reward > scale.best_reward) {
    scale.best_reward = reward;
    if (reward > 0.0) {
      scale.s = scale_alpha / reward;
      scale.nonpositive_max = false;
    } else {
      scale.nonpositive_max = true;
    }
  }
  return scale;
}

double ucb_value(const GPPosterior& posterior, double s, double p,
                 double beta) {
  return s * posterior.mean + p * std::sqrt(beta) * std::sqrt(posterior.variance);
}

double ucb_score(const HyperParams& gamma, double s, const CollapsedGp& gp,
                 int i, const Schedules& schedules) {
  const GPPosterior post = gp.posterior(gamma);
  return ucb_value(post, s, adapt_probability(i, schedules.k),
                   beta_schedule(i, schedules.dim, schedules.delta));
}

double ucb_score(const HyperParams& gamma, double s,
                 const RewardDataset& dataset, const SearchSpace& space,
                 int i, const Schedules& schedules, double kernel_width) {
  const GPPosterior post = posterior(dataset, gamma, space, kernel_width);
  return ucb_value(post, s, adapt_probability(i, schedules.k),
                   beta_schedule(i, schedules.dim, schedules.delta));
}

HyperParams propose_next(const CollapsedGp& gp, double s, int i,
                         const Schedules& schedules) {
  const SearchSpace& space = gp.space();
  if (space.grid_size() < 1) {
    throw std::invalid_argument("propose_next: empty grid");
  }
  const double p = adapt_probability(i, schedules.k);
  const double beta = beta_schedule(i, schedules.dim, schedules.delta);

  const std::vector<double> eps_values = space.eps_grid();
  HyperParams best{eps_values.front(), space.L_lo};
  double best_score = -std::numeric_limits<double>::infinity();

  constexpr std::size_t kBlock = 4096;
  std::vector<HyperParams> block;
  block.reserve(kBlock);
  Eigen::VectorXd mean, variance;
  auto flush = [&] {
    if (block.empty()) return;
    gp.posterior_batch(block, mean, variance);
    for (std::size_t q = 0; q < block.size(); ++q) {
      const double score =
          ucb_value(GPPosterior{mean(Eigen::Index(q)), variance(Eigen::Index(q))},
                    s, p, beta);
      // strict comparison keeps the first (lexicographically smallest) maximum
      if (score > best_score) {
        best_score = score;
        best = block[q];
      }
    }
    block.clear();
  };
  for (double eps : eps_values) {
    for (int steps = space.L_lo; steps <= space.L_hi; ++steps) {
      block.push_back(HyperParams{eps, steps});
      if (block.size() == kBlock) flush();
    }
  }
  flush();
  return best;
}

}  // namespace ahmc
