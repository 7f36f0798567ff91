#include "ahmc/gaussian_target.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/QR>

#include "ahmc/rng.hpp"

namespace ahmc {

GaussianTarget::GaussianTarget(Eigen::VectorXd mean, Eigen::MatrixXd covariance)
    : mean_(std::move(mean)), covariance_(std::move(covariance)) {
  if (covariance_.rows() != covariance_.cols() ||
      covariance_.rows() != mean_.size()) {
    throw std::invalid_argument("GaussianTarget: covariance shape mismatch");
  }
  if (!covariance_.isApprox(covariance_.transpose(), 1e-10)) {
    throw std::invalid_argument("GaussianTarget: covariance not symmetric");
  }
  chol_.compute(covariance_);
  if (chol_.info() != Eigen::Success) {
    throw std::runtime_error(
        "GaussianTarget: covariance has no Cholesky factorization");
  }
}

GaussianTarget GaussianTarget::standard(int dim) {
  return GaussianTarget(Eigen::VectorXd::Zero(dim),
                        Eigen::MatrixXd::Identity(dim, dim));
}

GaussianTarget GaussianTarget::correlated(int dim, double condition_number,
                                          std::uint64_t seed) {
  if (dim < 2 || condition_number < 1.0) {
    throw std::invalid_argument("GaussianTarget::correlated: need dim >= 2 "
                                "and condition_number >= 1");
  }
  std::mt19937_64 gen = rng::engine(seed, rng::kInit);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd raw(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) raw(i, j) = normal(gen);
  Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(raw).householderQ();

  Eigen::VectorXd eigenvalues(dim);
  for (int i = 0; i < dim; ++i) {
    eigenvalues(i) = std::pow(condition_number, double(i) / double(dim - 1));
  }
  Eigen::MatrixXd cov = q * eigenvalues.asDiagonal() * q.transpose();
  cov = 0.5 * (cov + cov.transpose()).eval();
  return GaussianTarget(Eigen::VectorXd::Zero(dim), cov);
}

double GaussianTarget::log_density(const Eigen::VectorXd& x) const {
  check_point(x);
  Eigen::VectorXd centered = x - mean_;
  return -0.5 * centered.dot(chol_.solve(centered));
}

Eigen::VectorXd GaussianTarget::grad_log_density(const Eigen::VectorXd& x) const {
  check_point(x);
  return -chol_.solve(x - mean_);
}

}  // namespace ahmc
