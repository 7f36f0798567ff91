#pragma once

#include <map>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "ahmc/hmc.hpp"

namespace ahmc {

/// Box-constrained hyper-parameter domain Gamma with its discretization:
/// eps_grid_size uniformly spaced step sizes covering both endpoints crossed
/// with every integer trajectory length in [L_lo, L_hi].
struct SearchSpace {
  double eps_lo = 0.0;
  double eps_hi = 0.0;
  int L_lo = 1;
  int L_hi = 1;
  int eps_grid_size = 200;

  SearchSpace() = default;
  SearchSpace(double eps_lo, double eps_hi, int L_lo, int L_hi,
              int eps_grid_size = 200);

  bool contains(const HyperParams& gamma) const;
  std::vector<double> eps_grid() const;
  long grid_size() const;
  // Point q of the grid in lexicographic (eps, then L) order.
  HyperParams grid_point(long q) const;
};

/// History of (gamma, reward) observations with the observation noise
/// variance of the reward signal.
struct RewardDataset {
  std::vector<HyperParams> points;
  std::vector<double> rewards;
  double noise_variance = 0.1;

  int size() const { return static_cast<int>(points.size()); }
};

// Append one observation; duplicates of gamma are retained individually.
RewardDataset add_observation(RewardDataset dataset, const HyperParams& gamma,
                              double reward);

struct GPPosterior {
  double mean = 0.0;
  double variance = 1.0;  // clamped at 0 against round-off
};

// ARD squared-exponential kernel on the componentwise difference. The
// length-scales are kernel_width times the widths of the two box dimensions,
// so k(a, a) = 1 everywhere. A zero-width dimension contributes nothing when
// the coordinates are equal and is an error otherwise.
double kernel(const HyperParams& a, const HyperParams& b,
              const SearchSpace& space, double kernel_width = 0.2);

// Exact GP posterior from the full dataset: mean k'(K+noise*I)^{-1} r and
// variance k(g,g) - k'(K+noise*I)^{-1} k, solved via Cholesky.
GPPosterior posterior(const RewardDataset& dataset, const HyperParams& gamma,
                      const SearchSpace& space, double kernel_width = 0.2);

/// GP over the reward surface with duplicate observations collapsed to one
/// pseudo-observation per unique point (mean reward, noise/count). This is
/// algebraically identical to the posterior over the full dataset while the
/// factorization stays bounded by the number of unique points, which grows
/// sub-linearly once adaptation becomes rare.
class CollapsedGp {
 public:
  CollapsedGp(SearchSpace space, double kernel_width, double noise_variance);
  CollapsedGp(const RewardDataset& dataset, const SearchSpace& space,
              double kernel_width = 0.2);

  void add(const HyperParams& gamma, double reward);

  GPPosterior posterior(const HyperParams& gamma) const;
  // Means and variances for a block of query points in one factorized solve.
  void posterior_batch(std::span<const HyperParams> query,
                       Eigen::VectorXd& mean, Eigen::VectorXd& variance) const;

  int unique_points() const { return static_cast<int>(points_.size()); }
  int observations() const { return observations_; }
  const SearchSpace& space() const { return space_; }

 private:
  void refresh() const;

  SearchSpace space_;
  double kernel_width_;
  double noise_variance_;
  int observations_ = 0;

  std::vector<HyperParams> points_;
  std::vector<double> mean_reward_;
  std::vector<int> count_;
  std::map<std::pair<double, int>, int> index_;

  mutable bool stale_ = false;
  mutable Eigen::LLT<Eigen::MatrixXd> chol_;
  mutable Eigen::VectorXd weights_;  // (K + D)^{-1} r-bar
};

}  // namespace ahmc
