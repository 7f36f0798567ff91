#include "ahmc/logistic_regression.hpp"

#include <cmath>
#include <stdexcept>

namespace ahmc {

namespace {

// log(1 + exp(t)) without overflow for large |t|.
double softplus(double t) {
  if (t > 0.0) return t + std::log1p(std::exp(-t));
  return std::log1p(std::exp(t));
}

// 1 / (1 + exp(t)) evaluated stably.
double inverse_logit_neg(double t) {
  if (t > 0.0) {
    double e = std::exp(-t);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(t));
}

}  // namespace

LogisticRegressionModel::LogisticRegressionModel(Eigen::MatrixXd design,
                                                 Eigen::VectorXd labels,
                                                 double prior_variance)
    : design_(std::move(design)),
      labels_(std::move(labels)),
      prior_variance_(prior_variance) {
  if (design_.rows() != labels_.size()) {
    throw std::invalid_argument(
        "LogisticRegressionModel: design rows must match label count");
  }
  if (design_.rows() == 0) {
    throw std::invalid_argument("LogisticRegressionModel: empty data set");
  }
  if (!(prior_variance_ > 0.0)) {
    throw std::invalid_argument(
        "LogisticRegressionModel: prior variance must be positive");
  }
  for (Eigen::Index i = 0; i < labels_.size(); ++i) {
    if (labels_(i) != 1.0 && labels_(i) != -1.0) {
      throw std::invalid_argument(
          "LogisticRegressionModel: labels must be -1 or +1");
    }
  }
}

double LogisticRegressionModel::log_density(const Eigen::VectorXd& theta) const {
  check_point(theta);
  double beta0 = theta(0);
  const auto beta = theta.tail(theta.size() - 1);
  Eigen::VectorXd eta = design_ * beta;
  eta.array() += beta0;
  Eigen::VectorXd margins = labels_.cwiseProduct(eta);
  double loglik = 0.0;
  for (Eigen::Index i = 0; i < margins.size(); ++i) {
    loglik -= softplus(-margins(i));
  }
  return loglik - beta0 * beta0 / (2.0 * prior_variance_) -
         beta.squaredNorm() / (2.0 * prior_variance_);
}

Eigen::VectorXd LogisticRegressionModel::grad_log_density(
    const Eigen::VectorXd& theta) const {
  check_point(theta);
  double beta0 = theta(0);
  const auto beta = theta.tail(theta.size() - 1);
  Eigen::VectorXd eta = design_ * beta;
  eta.array() += beta0;
  Eigen::VectorXd margins = labels_.cwiseProduct(eta);
  // d/dz of -log(1+exp(-z)) is 1/(1+exp(z)); chain through z_i = y_i * eta_i.
  Eigen::VectorXd weights(margins.size());
  for (Eigen::Index i = 0; i < margins.size(); ++i) {
    weights(i) = labels_(i) * inverse_logit_neg(margins(i));
  }
  Eigen::VectorXd grad(theta.size());
  grad(0) = weights.sum() - beta0 / prior_variance_;
  grad.tail(theta.size() - 1) =
      design_.transpose() * weights - beta / prior_variance_;
  return grad;
}

}  // namespace ahmc
