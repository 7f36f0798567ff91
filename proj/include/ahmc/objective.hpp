#pragma once

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "ahmc/hmc.hpp"

namespace ahmc {

/// The m+1 consecutive chain positions around one adaptation window — the
/// state before the window's first transition plus the m states after each
/// transition — together with the leapfrog steps spent producing them.
struct SampleWindow {
  std::vector<Eigen::VectorXd> positions;
  long leapfrog_steps = 0;

  int transitions() const { return static_cast<int>(positions.size()) - 1; }
};

/// A reward observation tagged with the hyper-parameters it was measured at.
struct Reward {
  double value = 0.0;
  HyperParams gamma;
};

// Mean squared Euclidean jump over consecutive position pairs. Rejected
// transitions contribute zero through unchanged positions.
double esjd(const SampleWindow& window);

// The cost-normalized objective esjd / sqrt(L).
Reward normalized_esjd(const SampleWindow& window, const HyperParams& gamma);

// Fraction of accepted transitions (diagnostic only).
double acceptance_rate(std::span<const TransitionRecord> records);

/// Pluggable reward signal: any function of the window, the transition
/// records that produced it, and the hyper-parameters it ran at.
using RewardFn = std::function<double(
    const SampleWindow&, std::span<const TransitionRecord>, const HyperParams&)>;

RewardFn normalized_esjd_reward();

}  // namespace ahmc
