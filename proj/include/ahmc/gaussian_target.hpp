#pragma once

#include <cstdint>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "ahmc/model.hpp"

namespace ahmc {

/// Multivariate normal validation target.
///
/// log_density drops the constant -dim/2*log(2*pi) - 1/2*log|covariance|.
class GaussianTarget final : public TargetModel {
 public:
  GaussianTarget(Eigen::VectorXd mean, Eigen::MatrixXd covariance);

  static GaussianTarget standard(int dim);

  // Zero-mean target with log-spaced covariance eigenvalues spanning
  // [1, condition_number], rotated by a seeded random orthogonal matrix.
  static GaussianTarget correlated(int dim, double condition_number,
                                   std::uint64_t seed);

  int dim() const override { return static_cast<int>(mean_.size()); }
  double log_density(const Eigen::VectorXd& x) const override;
  Eigen::VectorXd grad_log_density(const Eigen::VectorXd& x) const override;

  const Eigen::VectorXd& mean() const { return mean_; }
  const Eigen::MatrixXd& covariance() const { return covariance_; }

 private:
  Eigen::VectorXd mean_;
  Eigen::MatrixXd covariance_;
  Eigen::LLT<Eigen::MatrixXd> chol_;
};

}  // namespace ahmc
