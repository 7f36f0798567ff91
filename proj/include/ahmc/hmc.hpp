#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Core>

#include "ahmc/model.hpp"

namespace ahmc {

/// The tunable pair gamma = (eps, L) controlling one HMC kernel.
struct HyperParams {
  double eps = 0.1;  // leapfrog step size, > 0
  int steps = 10;    // maximum leapfrog count L, >= 1
};

bool operator==(const HyperParams& a, const HyperParams& b);
void validate(const HyperParams& gamma);  // throws std::invalid_argument

/// Chain position with its cached log-density, RNG stream and support box.
/// The cache always equals model.log_density(position) and the position stays
/// inside the box.
struct ChainState {
  Eigen::VectorXd position;
  double log_density = 0.0;
  std::mt19937_64 rng;
  Box support;
};

// Initial positions outside the box are clamped onto it before evaluating
// the density. Throws if the density is not finite at the start.
ChainState make_chain_state(const TargetModel& model, Eigen::VectorXd init,
                            std::uint64_t seed);

/// What happened in one transition.
struct TransitionRecord {
  bool accepted = false;
  int steps_used = 0;        // the drawn trajectory length l, 1 <= l <= L
  int steps_done = 0;        // leapfrog steps actually integrated (< l only
                             // when the trajectory diverged)
  double squared_jump = 0.0;  // ||x' - x||^2, 0 when not accepted
  double proposal_energy_error = 0.0;  // H(x', p') - H(x, p)
  bool divergent = false;
  bool outside_support = false;
};

struct LeapfrogResult {
  Eigen::VectorXd position;
  Eigen::VectorXd momentum;
  bool divergent = false;
  int divergent_step = -1;  // 1-based step at which a non-finite value appeared
};

// num_steps iterations of half-kick / drift / half-kick for the potential
// U(x) = -log pi(x) with unit mass. Deterministic; a non-finite gradient or
// position flags divergence and stops the integration.
LeapfrogResult leapfrog(const TargetModel& model, const Eigen::VectorXd& x,
                        const Eigen::VectorXd& p, double eps, int num_steps);

// H(x, p) = -log pi(x) + ||p||^2 / 2.
double hamiltonian(const TargetModel& model, const Eigen::VectorXd& x,
                   const Eigen::VectorXd& p);

// One transition of the random-time kernel: fresh momentum p ~ N(0, I),
// trajectory length l drawn uniformly from {1..L}, leapfrog, Metropolis
// accept with probability min(1, exp(H - H')). Proposals that leave the
// support box are rejected outright, and divergent trajectories count as
// rejections. fixed_length pins l = L (ablation switch).
TransitionRecord hmc_transition(ChainState& state, const TargetModel& model,
                                const HyperParams& gamma,
                                bool fixed_length = false);

}  // namespace ahmc
