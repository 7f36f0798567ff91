#include "ahmc/log_gaussian_cox.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "ahmc/rng.hpp"

namespace ahmc {

namespace {

Eigen::LLT<Eigen::MatrixXd> factorize_or_throw(const Eigen::MatrixXd& sigma,
                                               int grid_side, double sigma2,
                                               double beta) {
  Eigen::LLT<Eigen::MatrixXd> chol(sigma);
  if (chol.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "log-Gaussian Cox covariance is numerically singular (grid_side="
        << grid_side << ", sigma2=" << sigma2 << ", beta=" << beta << ")";
    throw std::runtime_error(msg.str());
  }
  return chol;
}

}  // namespace

Eigen::MatrixXd LogGaussianCoxModel::grid_covariance(int grid_side,
                                                     double sigma2,
                                                     double beta) {
  const int n = grid_side * grid_side;
  Eigen::MatrixXd sigma(n, n);
  const double length = beta * grid_side;
  for (int a = 0; a < n; ++a) {
    const int i = a / grid_side, j = a % grid_side;
    for (int b = 0; b <= a; ++b) {
      const int ip = b / grid_side, jp = b % grid_side;
      const double delta = std::hypot(double(i - ip), double(j - jp));
      const double value = sigma2 * std::exp(-delta / length);
      sigma(a, b) = value;
      sigma(b, a) = value;
    }
  }
  return sigma;
}

LogGaussianCoxModel::LogGaussianCoxModel(int grid_side, Eigen::VectorXd counts,
                                         double mu, double sigma2, double beta)
    : grid_side_(grid_side),
      counts_(std::move(counts)),
      mu_(mu),
      sigma2_(sigma2),
      beta_(beta),
      scale_(1.0 / (double(grid_side) * double(grid_side))) {
  if (grid_side_ < 2) {
    throw std::invalid_argument("LogGaussianCoxModel: grid_side must be >= 2");
  }
  if (!(sigma2_ > 0.0) || !(beta_ > 0.0)) {
    throw std::invalid_argument(
        "LogGaussianCoxModel: sigma2 and beta must be positive");
  }
  if (counts_.size() != dim()) {
    throw std::invalid_argument(
        "LogGaussianCoxModel: counts must have grid_side^2 entries");
  }
  for (Eigen::Index a = 0; a < counts_.size(); ++a) {
    if (!(counts_(a) >= 0.0) ||
        counts_(a) != std::floor(counts_(a))) {
      throw std::invalid_argument(
          "LogGaussianCoxModel: counts must be nonnegative integers");
    }
  }
  covariance_ = grid_covariance(grid_side_, sigma2_, beta_);
  chol_ = factorize_or_throw(covariance_, grid_side_, sigma2_, beta_);
}

double LogGaussianCoxModel::log_density(const Eigen::VectorXd& x) const {
  check_point(x);
  Eigen::VectorXd centered = x.array() - mu_;
  const double quad = centered.dot(chol_.solve(centered));
  const double loglik =
      counts_.dot(x) - scale_ * x.array().exp().sum();
  return loglik - 0.5 * quad;
}

Eigen::VectorXd LogGaussianCoxModel::grad_log_density(
    const Eigen::VectorXd& x) const {
  check_point(x);
  Eigen::VectorXd centered = x.array() - mu_;
  Eigen::VectorXd grad = counts_ - (scale_ * x.array().exp()).matrix();
  grad -= chol_.solve(centered);
  return grad;
}

LgcData simulate_lgc_data(int grid_side, double mu, double sigma2, double beta,
                          std::uint64_t seed) {
  if (grid_side < 2) {
    throw std::invalid_argument("simulate_lgc_data: grid_side must be >= 2");
  }
  if (!(sigma2 > 0.0) || !(beta > 0.0)) {
    throw std::invalid_argument(
        "simulate_lgc_data: sigma2 and beta must be positive");
  }
  const int n = grid_side * grid_side;
  Eigen::MatrixXd sigma =
      LogGaussianCoxModel::grid_covariance(grid_side, sigma2, beta);
  Eigen::LLT<Eigen::MatrixXd> chol(sigma);
  if (chol.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "simulate_lgc_data: covariance is numerically singular (grid_side="
        << grid_side << ", sigma2=" << sigma2 << ", beta=" << beta << ")";
    throw std::runtime_error(msg.str());
  }

  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  Eigen::VectorXd z(n);
  for (int a = 0; a < n; ++a) z(a) = normal(gen);

  LgcData data;
  data.latent = (chol.matrixL() * z).eval();
  data.latent.array() += mu;

  const double s = 1.0 / double(n);
  data.counts.resize(n);
  for (int a = 0; a < n; ++a) {
    std::poisson_distribution<long> poisson(s * std::exp(data.latent(a)));
    data.counts(a) = double(poisson(gen));
  }
  return data;
}

}  // namespace ahmc
