#include "ahmc/gp.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ahmc {

SearchSpace::SearchSpace(double eps_lo, double eps_hi, int L_lo, int L_hi,
                         int eps_grid_size)
    : eps_lo(eps_lo),
      eps_hi(eps_hi),
      L_lo(L_lo),
      L_hi(L_hi),
      eps_grid_size(eps_grid_size) {
  if (!(eps_lo > 0.0) || eps_lo > eps_hi) {
    throw std::invalid_argument("SearchSpace: need 0 < eps_lo <= eps_hi");
  }
  if (L_lo < 1 || L_lo > L_hi) {
    throw std::invalid_argument("SearchSpace: need 1 <= L_lo <= L_hi");
  }
  if (eps_grid_size < 1) {
    throw std::invalid_argument("SearchSpace: eps_grid_size must be >= 1");
  }
}

bool SearchSpace::contains(const HyperParams& gamma) const {
  return gamma.eps >= eps_lo && gamma.eps <= eps_hi && gamma.steps >= L_lo &&
         gamma.steps <= L_hi;
}

std::vector<double> SearchSpace::eps_grid() const {
  if (eps_grid_size == 1 || eps_lo == eps_hi) {
    return {eps_lo};
  }
  std::vector<double> grid(eps_grid_size);
  const double width = eps_hi - eps_lo;
  for (int j = 0; j < eps_grid_size; ++j) {
    grid[j] = eps_lo + width * double(j) / double(eps_grid_size - 1);
  }
  grid.back() = eps_hi;
  return grid;
}

long SearchSpace::grid_size() const {
  const long eps_count = (eps_lo == eps_hi) ? 1 : eps_grid_size;
  return eps_count * long(L_hi - L_lo + 1);
}

HyperParams SearchSpace::grid_point(long q) const {
  const long l_count = L_hi - L_lo + 1;
  const long eps_index = q / l_count;
  const long l_index = q % l_count;
  const auto grid = eps_grid();
  return HyperParams{grid.at(std::size_t(eps_index)),
                     L_lo + static_cast<int>(l_index)};
}

RewardDataset add_observation(RewardDataset dataset, const HyperParams& gamma,
                              double reward) {
  validate(gamma);
  if (!std::isfinite(reward)) {
    throw std::invalid_argument("add_observation: reward must be finite");
  }
  dataset.points.push_back(gamma);
  dataset.rewards.push_back(reward);
  return dataset;
}

double kernel(const HyperParams& a, const HyperParams& b,
              const SearchSpace& space, double kernel_width) {
  if (!(kernel_width > 0.0)) {
    throw std::invalid_argument("kernel: kernel_width must be positive");
  }
  double exponent = 0.0;
  const double eps_width = kernel_width * (space.eps_hi - space.eps_lo);
  const double eps_diff = a.eps - b.eps;
  if (eps_width == 0.0) {
    if (eps_diff != 0.0) {
      throw std::invalid_argument(
          "kernel: eps dimension has zero width but coordinates differ");
    }
  } else {
    const double z = eps_diff / eps_width;
    exponent += z * z;
  }
  const double l_width = kernel_width * double(space.L_hi - space.L_lo);
  const double l_diff = double(a.steps - b.steps);
  if (l_width == 0.0) {
    if (l_diff != 0.0) {
      throw std::invalid_argument(
          "kernel: L dimension has zero width but coordinates differ");
    }
  } else {
    const double z = l_diff / l_width;
    exponent += z * z;
  }
  return std::exp(-0.5 * exponent);
}

GPPosterior posterior(const RewardDataset& dataset, const HyperParams& gamma,
                      const SearchSpace& space, double kernel_width) {
  const int n = dataset.size();
  if (static_cast<int>(dataset.rewards.size()) != n) {
    throw std::invalid_argument("posterior: dataset lengths differ");
  }
  if (n == 0) {
    return GPPosterior{0.0, kernel(gamma, gamma, space, kernel_width)};
  }
  Eigen::MatrixXd gram(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double value =
          kernel(dataset.points[i], dataset.points[j], space, kernel_width);
      gram(i, j) = value;
      gram(j, i) = value;
    }
  }
  gram.diagonal().array() += dataset.noise_variance;
  Eigen::LLT<Eigen::MatrixXd> chol(gram);
  if (chol.info() != Eigen::Success) {
    throw std::runtime_error("posterior: Gram matrix factorization failed");
  }
  Eigen::VectorXd cross(n);
  for (int i = 0; i < n; ++i) {
    cross(i) = kernel(gamma, dataset.points[i], space, kernel_width);
  }
  const Eigen::VectorXd rewards = Eigen::Map<const Eigen::VectorXd>(
      dataset.rewards.data(), dataset.rewards.size());
  GPPosterior out;
  out.mean = cross.dot(chol.solve(rewards));
  out.variance = kernel(gamma, gamma, space, kernel_width) -
                 cross.dot(chol.solve(cross));
  if (out.variance < 0.0) out.variance = 0.0;
  return out;
}

CollapsedGp::CollapsedGp(SearchSpace space, double kernel_width,
                         double noise_variance)
    : space_(std::move(space)),
      kernel_width_(kernel_width),
      noise_variance_(noise_variance) {
  if (!(noise_variance_ > 0.0)) {
    throw std::invalid_argument("CollapsedGp: noise variance must be positive");
  }
}

CollapsedGp::CollapsedGp(const RewardDataset& dataset, const SearchSpace& space,
                         double kernel_width)
    : CollapsedGp(space, kernel_width, dataset.noise_variance) {
  for (int i = 0; i < dataset.size(); ++i) {
    add(dataset.points[i], dataset.rewards[i]);
  }
}

void CollapsedGp::add(const HyperParams& gamma, double reward) {
  validate(gamma);
  if (!std::isfinite(reward)) {
    throw std::invalid_argument("CollapsedGp::add: reward must be finite");
  }
  const auto key = std::make_pair(gamma.eps, gamma.steps);
  auto found = index_.find(key);
  if (found == index_.end()) {
    index_.emplace(key, static_cast<int>(points_.size()));
    points_.push_back(gamma);
    mean_reward_.push_back(reward);
    count_.push_back(1);
  } else {
    const int at = found->second;
    count_[at] += 1;
    mean_reward_[at] += (reward - mean_reward_[at]) / double(count_[at]);
  }
  ++observations_;
  stale_ = true;
}

void CollapsedGp::refresh() const {
  const int n = unique_points();
  Eigen::MatrixXd gram(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double value = kernel(points_[i], points_[j], space_, kernel_width_);
      gram(i, j) = value;
      gram(j, i) = value;
    }
  }
  for (int i = 0; i < n; ++i) {
    gram(i, i) += noise_variance_ / double(count_[i]);
  }
  chol_.compute(gram);
  if (chol_.info() != Eigen::Success) {
    throw std::runtime_error("CollapsedGp: Gram matrix factorization failed");
  }
  const Eigen::VectorXd rewards =
      Eigen::Map<const Eigen::VectorXd>(mean_reward_.data(), n);
  weights_ = chol_.solve(rewards);
  stale_ = false;
}

GPPosterior CollapsedGp::posterior(const HyperParams& gamma) const {
  std::span<const HyperParams> one(&gamma, 1);
  Eigen::VectorXd mean(1), variance(1);
  posterior_batch(one, mean, variance);
  return GPPosterior{mean(0), variance(0)};
}

void CollapsedGp::posterior_batch(std::span<const HyperParams> query,
                                  Eigen::VectorXd& mean,
                                  Eigen::VectorXd& variance) const {
  const int q = static_cast<int>(query.size());
  const int n = unique_points();
  mean.resize(q);
  variance.resize(q);
  const double prior = 1.0;  // k(g, g) = 1 for this kernel
  if (n == 0) {
    mean.setZero();
    variance.setConstant(prior);
    return;
  }
  if (stale_) refresh();

  Eigen::MatrixXd cross(n, q);
  for (int c = 0; c < q; ++c) {
    for (int i = 0; i < n; ++i) {
      cross(i, c) = kernel(query[c], points_[i], space_, kernel_width_);
    }
  }
  mean = cross.transpose() * weights_;
  // variance via the triangular factor: 1 - ||L^{-1} k||^2
  Eigen::MatrixXd half = chol_.matrixL().solve(cross);
  for (int c = 0; c < q; ++c) {
    variance(c) = std::max(0.0, prior - half.col(c).squaredNorm());
  }
}

}  // namespace ahmc
