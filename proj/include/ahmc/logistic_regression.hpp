#pragma once

#include <Eigen/Core>

#include "ahmc/model.hpp"

namespace ahmc {

/// Bayesian logistic regression with independent N(0, prior_variance) priors
/// on the intercept and the coefficients. The sampled state is
/// (beta0, beta_1 .. beta_D), labels are in {-1, +1}, and
///
///   log p = -sum_i log(1 + exp(-y_i (beta0 + x_i' beta)))
///           - beta0^2 / (2 sigma^2) - beta' beta / (2 sigma^2).
///
/// Every term of the log joint is kept; nothing is dropped.
class LogisticRegressionModel final : public TargetModel {
 public:
  LogisticRegressionModel(Eigen::MatrixXd design, Eigen::VectorXd labels,
                          double prior_variance);

  int dim() const override { return static_cast<int>(design_.cols()) + 1; }
  double log_density(const Eigen::VectorXd& theta) const override;
  Eigen::VectorXd grad_log_density(const Eigen::VectorXd& theta) const override;

  int observations() const { return static_cast<int>(design_.rows()); }
  double prior_variance() const { return prior_variance_; }

 private:
  Eigen::MatrixXd design_;
  Eigen::VectorXd labels_;  // entries in {-1, +1}
  double prior_variance_;
};

}  // namespace ahmc
