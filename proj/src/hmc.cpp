#include "ahmc/hmc.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ahmc/rng.hpp"

namespace ahmc {

bool operator==(const HyperParams& a, const HyperParams& b) {
  return a.eps == b.eps && a.steps == b.steps;
}

void validate(const HyperParams& gamma) {
  if (!(gamma.eps > 0.0) || !std::isfinite(gamma.eps)) {
    throw std::invalid_argument("HyperParams: eps must be positive and finite");
  }
  if (gamma.steps < 1) {
    throw std::invalid_argument("HyperParams: steps must be >= 1");
  }
}

ChainState make_chain_state(const TargetModel& model, Eigen::VectorXd init,
                            std::uint64_t seed) {
  if (static_cast<int>(init.size()) != model.dim()) {
    throw std::invalid_argument("make_chain_state: init dimension mismatch");
  }
  ChainState state;
  state.support = model.support_box();
  state.position = state.support.contains(init) ? std::move(init)
                                                : state.support.clamp(init);
  state.log_density = model.log_density(state.position);
  if (!std::isfinite(state.log_density)) {
    std::ostringstream msg;
    msg << "make_chain_state: log-density not finite at the starting point ("
        << state.log_density << ")";
    throw std::invalid_argument(msg.str());
  }
  state.rng = std::mt19937_64(seed);
  return state;
}

LeapfrogResult leapfrog(const TargetModel& model, const Eigen::VectorXd& x,
                        const Eigen::VectorXd& p, double eps, int num_steps) {
  if (num_steps < 1 || !(eps > 0.0)) {
    throw std::invalid_argument("leapfrog: need num_steps >= 1 and eps > 0");
  }
  LeapfrogResult out;
  out.position = x;
  out.momentum = p;

  Eigen::VectorXd grad = model.grad_log_density(out.position);
  if (!grad.allFinite()) {
    out.divergent = true;
    out.divergent_step = 1;
    return out;
  }
  out.momentum += 0.5 * eps * grad;
  for (int step = 1; step <= num_steps; ++step) {
    out.position += eps * out.momentum;
    if (!out.position.allFinite()) {
      out.divergent = true;
      out.divergent_step = step;
      return out;
    }
    grad = model.grad_log_density(out.position);
    if (!grad.allFinite()) {
      out.divergent = true;
      out.divergent_step = step;
      return out;
    }
    // full kick between steps, half kick at the end of the trajectory
    out.momentum += (step < num_steps ? eps : 0.5 * eps) * grad;
  }
  if (!out.momentum.allFinite()) {
    out.divergent = true;
    out.divergent_step = num_steps;
  }
  return out;
}

double hamiltonian(const TargetModel& model, const Eigen::VectorXd& x,
                   const Eigen::VectorXd& p) {
  return -model.log_density(x) + 0.5 * p.squaredNorm();
}

TransitionRecord hmc_transition(ChainState& state, const TargetModel& model,
                                const HyperParams& gamma, bool fixed_length) {
  validate(gamma);
  TransitionRecord rec;

  std::normal_distribution<double> normal;
  Eigen::VectorXd momentum(state.position.size());
  for (Eigen::Index i = 0; i < momentum.size(); ++i) {
    momentum(i) = normal(state.rng);
  }
  int length = gamma.steps;
  if (!fixed_length && gamma.steps > 1) {
    length = std::uniform_int_distribution<int>(1, gamma.steps)(state.rng);
  }
  rec.steps_used = length;

  LeapfrogResult traj =
      leapfrog(model, state.position, momentum, gamma.eps, length);
  if (traj.divergent) {
    rec.divergent = true;
    rec.steps_done = traj.divergent_step;
    return rec;
  }
  rec.steps_done = length;

  if (!state.support.contains(traj.position)) {
    rec.outside_support = true;
    return rec;
  }

  const double energy_before =
      -state.log_density + 0.5 * momentum.squaredNorm();
  const double proposal_log_density = model.log_density(traj.position);
  const double energy_after =
      -proposal_log_density + 0.5 * traj.momentum.squaredNorm();
  rec.proposal_energy_error = energy_after - energy_before;

  if (std::isnan(rec.proposal_energy_error)) {
    rec.divergent = true;
    return rec;
  }

  // written so that a NaN ratio compares false and rejects
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(state.rng);
  if (u < std::exp(-rec.proposal_energy_error)) {
    rec.accepted = true;
    rec.squared_jump = (traj.position - state.position).squaredNorm();
    state.position = std::move(traj.position);
    state.log_density = proposal_log_density;
  }
  return rec;
}

}  // namespace ahmc
