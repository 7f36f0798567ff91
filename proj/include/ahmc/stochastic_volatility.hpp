#pragma once

#include <cstdint>

#include <Eigen/Core>

#include "ahmc/model.hpp"

namespace ahmc {

/// Stochastic volatility model: y_t = eps_t * beta * exp(x_t / 2) with the
/// log-volatility following a stationary AR(1),
///
///   x_1 ~ N(0, sigma^2 / (1 - phi^2)),   x_{t+1} = phi x_t + eta_{t+1},
///
/// eta ~ N(0, sigma^2). Priors: (phi+1)/2 ~ Beta(20, 1.5),
/// sigma^2 ~ inv-chi^2(10, 0.05), p(beta) proportional to 1/beta.
///
/// The sampled state keeps every coordinate unconstrained:
///
///   theta = (x_1 .. x_T, log beta, atanh(phi), log sigma),
///
/// and log_density includes the Jacobians of the phi and sigma transforms,
/// log(1 - phi^2) + log sigma. The 1/beta prior cancels exactly against the
/// log-beta Jacobian, so log beta enters with a flat density. Dropped
/// constants: -T/2*log(2*pi) from the likelihood, -T/2*log(2*pi) from the
/// AR(1) terms, the Beta normalizer with its 1/2 change of scale, and the
/// inv-chi^2 normalizer with the log 2 of the sigma transform.
class StochasticVolatilityModel final : public TargetModel {
 public:
  static constexpr double kPhiBetaA = 20.0;
  static constexpr double kPhiBetaB = 1.5;
  static constexpr double kSigmaNu = 10.0;
  static constexpr double kSigmaTau2 = 0.05;

  explicit StochasticVolatilityModel(Eigen::VectorXd observations);

  int dim() const override { return static_cast<int>(observations_.size()) + 3; }
  double log_density(const Eigen::VectorXd& theta) const override;
  Eigen::VectorXd grad_log_density(const Eigen::VectorXd& theta) const override;

  // log |d(beta,phi,sigma)/d(theta)| restricted to the terms that do not
  // cancel against a prior: log sigma + log(1 - phi^2).
  double transform_log_jacobian(const Eigen::VectorXd& theta) const;

  int series_length() const { return static_cast<int>(observations_.size()); }
  const Eigen::VectorXd& observations() const { return observations_; }

 private:
  Eigen::VectorXd observations_;
  Eigen::VectorXd obs_squared_;
};

struct SvData {
  Eigen::VectorXd observations;  // y_1 .. y_T
  Eigen::VectorXd latent;        // the log-volatility path x_1 .. x_T
};

// Draw observations (and the latent path) from the generative model.
// Requires |phi| < 1 for stationarity and positive sigma and beta.
SvData simulate_sv_data(int length, double beta, double phi, double sigma,
                        std::uint64_t seed);

}  // namespace ahmc
