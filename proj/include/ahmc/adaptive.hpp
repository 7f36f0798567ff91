#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "ahmc/acquisition.hpp"
#include "ahmc/gp.hpp"
#include "ahmc/hmc.hpp"
#include "ahmc/objective.hpp"

namespace ahmc {

/// Configuration of one adaptive run.
struct AdaptiveRunConfig {
  SearchSpace space;
  Schedules schedules;
  HyperParams gamma0;       // gamma_1, must lie inside space
  int burnin = 1000;        // B
  int n_samples = 5000;
  int window = 0;           // m; 0 means burnin / k (at least 1)
  std::uint64_t seed = 0;
  double kernel_width = 0.2;    // ARD width factor of the GP kernel
  double noise_variance = 0.1;  // observation noise of the reward signal
  bool fixed_length = false;    // pin l = L instead of l ~ U{1..L}
  bool adapt = true;            // false: never re-propose gamma
  Eigen::VectorXd init;         // empty: drawn N(0, init_scale^2 I)
  double init_scale = 1.0;
  RewardFn reward;              // empty: normalized ESJD

  int effective_window() const;
  int rounds() const;  // ceil((burnin + n_samples) / window)
};

/// One adaptation round of the trace.
struct RoundRecord {
  int round = 0;       // i, 1-based
  HyperParams gamma;   // the gamma this round's window ran at
  double reward = 0.0;
  double p = 0.0;
  double s = 1.0;
  bool adapted = false;      // a fresh argmax was taken for the next round
  bool burnin_phase = false; // every transition of the window was burn-in
};

struct AdaptationTrace {
  std::vector<RoundRecord> rounds;
  long total_leapfrog = 0;  // whole run, including burn-in
};

struct RunResult {
  Eigen::MatrixXd samples;  // n_samples x dim, post burn-in
  AdaptationTrace trace;
  std::vector<TransitionRecord> records;  // one per transition, whole run
  long post_burnin_leapfrog = 0;  // steps spent producing the retained samples
  RewardDataset dataset;          // full reward history
};

// Adaptive HMC: alternate m-transition windows with reward computation,
// dataset augmentation, scale updates, and with probability p_i a fresh
// acquisition argmax for the next window's gamma. Adaptation never stops;
// samples are collected after burn-in. Fully reproducible under seed: the
// chain, the adaptation coin flips and the starting position use separate
// substreams of the seed.
RunResult run_adaptive(const TargetModel& model, const AdaptiveRunConfig& config);

// Plain randomized-length HMC at a fixed gamma; identical to run_adaptive
// with adaptation disabled.
RunResult run_fixed(const TargetModel& model, const HyperParams& gamma,
                    int burnin, int n_samples, std::uint64_t seed);

}  // namespace ahmc
