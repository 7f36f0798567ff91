#pragma once

#include <limits>

#include "ahmc/gp.hpp"

namespace ahmc {

/// Schedule constants of the adaptation loop.
struct Schedules {
  int k = 100;              // adaptation-delay parameter
  double delta = 0.1;       // UCB confidence level
  int dim = 2;              // dimension of Gamma, always 2 for (eps, L)
  double scale_alpha = 4.0; // reward rescaling target
};

// Confidence coefficient for round i (the "next round" coefficient of the
// acquisition): 2 log((i+1)^{dim/2+2} pi^2 / (3 delta)).
double beta_schedule(int i, int dim, double delta);

// Diminishing adaptation probability p_i = (max{i-k+1, 1})^{-1/2}; equals 1
// for all i <= k.
double adapt_probability(int i, int k);

/// Reward rescaling state: s maps the best reward seen so far near
/// scale_alpha. Before the first positive maximal reward s stays at 1.
struct ScaleState {
  double s = 1.0;
  double best_reward = -std::numeric_limits<double>::infinity();
  // set when a new maximal reward was <= 0, leaving s = scale_alpha / r
  // undefined; the previous s is retained
  bool nonpositive_max = false;
};

// If reward strictly exceeds the best seen, record it and set
// s = scale_alpha / reward (requires reward > 0, otherwise flag and keep s).
ScaleState update_scale(ScaleState scale, double reward, double scale_alpha);

// The UCB variant from its parts: s * mean + p * sqrt(beta) * sd.
double ucb_value(const GPPosterior& posterior, double s, double p, double beta);

// Acquisition score at round i >= 1 for a candidate gamma.
double ucb_score(const HyperParams& gamma, double s, const CollapsedGp& gp,
                 int i, const Schedules& schedules);
double ucb_score(const HyperParams& gamma, double s,
                 const RewardDataset& dataset, const SearchSpace& space,
                 int i, const Schedules& schedules, double kernel_width = 0.2);

// Exhaustive argmax of the acquisition over the discretization grid,
// breaking ties toward the lexicographically smallest (eps, then L).
HyperParams propose_next(const CollapsedGp& gp, double s, int i,
                         const Schedules& schedules);

}  // namespace ahmc
