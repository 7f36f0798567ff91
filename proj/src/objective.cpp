#include "ahmc/objective.hpp"

#include <cmath>
#include <stdexcept>

namespace ahmc {

double esjd(const SampleWindow& window) {
  if (window.positions.size() < 2) {
    throw std::invalid_argument("esjd: window needs at least two positions");
  }
  double total = 0.0;
  for (std::size_t i = 1; i < window.positions.size(); ++i) {
    total += (window.positions[i] - window.positions[i - 1]).squaredNorm();
  }
  return total / double(window.positions.size() - 1);
}

Reward normalized_esjd(const SampleWindow& window, const HyperParams& gamma) {
  validate(gamma);
  return Reward{esjd(window) / std::sqrt(double(gamma.steps)), gamma};
}

double acceptance_rate(std::span<const TransitionRecord> records) {
  if (records.empty()) {
    throw std::invalid_argument("acceptance_rate: no records");
  }
  long accepted = 0;
  for (const auto& rec : records) accepted += rec.accepted ? 1 : 0;
  return double(accepted) / double(records.size());
}

RewardFn normalized_esjd_reward() {
  return [](const SampleWindow& window, std::span<const TransitionRecord>,
            const HyperParams& gamma) {
    return normalized_esjd(window, gamma).value;
  };
}

}  // namespace ahmc
