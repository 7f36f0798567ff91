#pragma once

#include <cstdint>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "ahmc/model.hpp"

namespace ahmc {

/// Log-Gaussian Cox process on a regular d x d grid.
///
/// The sampled state is the latent field x, flattened row-major to dimension
/// d^2. Counts are Poisson with mean s * exp(x_ij), s = 1/d^2, and x has a
/// Gaussian prior with mean mu*1 and covariance
///
///   Sigma[(i,j),(i',j')] = sigma2 * exp(-sqrt((i-i')^2 + (j-j')^2) / (beta*d)).
///
/// log_density drops y_ij*log(s) - log(y_ij!) from the likelihood and the
/// prior normalization -n/2*log(2*pi) - 1/2*log|Sigma|; all are constant in x.
/// The Cholesky factor of Sigma is cached at construction, so gradient calls
/// cost one triangular solve instead of a fresh factorization.
class LogGaussianCoxModel final : public TargetModel {
 public:
  LogGaussianCoxModel(int grid_side, Eigen::VectorXd counts, double mu,
                      double sigma2, double beta);

  int dim() const override { return grid_side_ * grid_side_; }
  double log_density(const Eigen::VectorXd& x) const override;
  Eigen::VectorXd grad_log_density(const Eigen::VectorXd& x) const override;

  int grid_side() const { return grid_side_; }
  double cell_scale() const { return scale_; }  // s = 1/d^2
  const Eigen::MatrixXd& covariance() const { return covariance_; }

  // Prior covariance over the flattened grid for the given hyperparameters.
  static Eigen::MatrixXd grid_covariance(int grid_side, double sigma2,
                                         double beta);

 private:
  int grid_side_;
  Eigen::VectorXd counts_;
  double mu_, sigma2_, beta_, scale_;
  Eigen::MatrixXd covariance_;
  Eigen::LLT<Eigen::MatrixXd> chol_;
};

struct LgcData {
  Eigen::VectorXd counts;  // row-major d^2 Poisson counts
  Eigen::VectorXd latent;  // the field x that generated them
};

// Draw a synthetic data set from the generative process: x from the grid GP
// prior, counts Poisson with mean exp(x_ij)/d^2. Reproducible under seed.
LgcData simulate_lgc_data(int grid_side, double mu, double sigma2, double beta,
                          std::uint64_t seed);

}  // namespace ahmc
