#include "ahmc/stochastic_volatility.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace ahmc {

namespace {

// log(1 - tanh(a)^2) = 2 log 2 - 2(|a| + log(1 + exp(-2|a|))), stable for
// large |a|.
double log_one_minus_tanh_sq(double a) {
  const double abs_a = std::abs(a);
  return 2.0 * (std::log(2.0) - abs_a - std::log1p(std::exp(-2.0 * abs_a)));
}

}  // namespace

StochasticVolatilityModel::StochasticVolatilityModel(
    Eigen::VectorXd observations)
    : observations_(std::move(observations)) {
  if (observations_.size() < 2) {
    throw std::invalid_argument(
        "StochasticVolatilityModel: need at least two observations");
  }
  obs_squared_ = observations_.array().square();
}

double StochasticVolatilityModel::log_density(
    const Eigen::VectorXd& theta) const {
  check_point(theta);
  const int t_len = series_length();
  const auto x = theta.head(t_len);
  const double log_beta = theta(t_len);
  const double alpha_phi = theta(t_len + 1);
  const double gamma_sigma = theta(t_len + 2);
  const double phi = std::tanh(alpha_phi);
  const double inv_beta_sq = std::exp(-2.0 * log_beta);
  const double inv_sigma_sq = std::exp(-2.0 * gamma_sigma);

  // y_t | x_t, beta ~ N(0, beta^2 exp(x_t))
  double logp = -double(t_len) * log_beta - 0.5 * x.sum() -
                0.5 * inv_beta_sq *
                    (obs_squared_.array() * (-x.array()).exp()).sum();

  // stationary AR(1) on x
  const double one_minus_phi_sq = 1.0 - phi * phi;
  double ar_quad = one_minus_phi_sq * x(0) * x(0);
  for (int t = 1; t < t_len; ++t) {
    const double innov = x(t) - phi * x(t - 1);
    ar_quad += innov * innov;
  }
  logp += -double(t_len) * gamma_sigma + 0.5 * std::log(one_minus_phi_sq) -
          0.5 * inv_sigma_sq * ar_quad;

  // (phi+1)/2 ~ Beta(a, b)
  logp += (kPhiBetaA - 1.0) * std::log1p(phi) +
          (kPhiBetaB - 1.0) * std::log1p(-phi);

  // sigma^2 ~ inv-chi^2(nu, tau^2), with the sigma Jacobian folded in:
  // -nu*gamma - nu*tau^2/2 * exp(-2*gamma)
  logp += -kSigmaNu * gamma_sigma -
          0.5 * kSigmaNu * kSigmaTau2 * inv_sigma_sq;

  // phi Jacobian; the sigma Jacobian is in the term above, the beta Jacobian
  // cancelled against the 1/beta prior.
  logp += log_one_minus_tanh_sq(alpha_phi);
  return logp;
}

Eigen::VectorXd StochasticVolatilityModel::grad_log_density(
    const Eigen::VectorXd& theta) const {
  check_point(theta);
  const int t_len = series_length();
  const auto x = theta.head(t_len);
  const double log_beta = theta(t_len);
  const double alpha_phi = theta(t_len + 1);
  const double gamma_sigma = theta(t_len + 2);
  const double phi = std::tanh(alpha_phi);
  const double inv_beta_sq = std::exp(-2.0 * log_beta);
  const double inv_sigma_sq = std::exp(-2.0 * gamma_sigma);
  const double one_minus_phi_sq = 1.0 - phi * phi;

  Eigen::VectorXd grad(theta.size());
  Eigen::ArrayXd exp_neg_x = (-x.array()).exp();

  // likelihood parts
  grad.head(t_len) =
      (-0.5 + 0.5 * inv_beta_sq * obs_squared_.array() * exp_neg_x).matrix();
  double d_log_beta =
      -double(t_len) + inv_beta_sq * (obs_squared_.array() * exp_neg_x).sum();

  // AR(1) parts
  double ar_quad = one_minus_phi_sq * x(0) * x(0);
  double d_phi_ar = phi * x(0) * x(0);
  for (int t = 1; t < t_len; ++t) {
    const double innov = x(t) - phi * x(t - 1);
    ar_quad += innov * innov;
    d_phi_ar += innov * x(t - 1);
    grad(t) += -inv_sigma_sq * innov;
    grad(t - 1) += inv_sigma_sq * phi * innov;
  }
  grad(0) += -inv_sigma_sq * one_minus_phi_sq * x(0);

  double d_phi = -phi / one_minus_phi_sq + inv_sigma_sq * d_phi_ar;
  double d_gamma = -double(t_len) + inv_sigma_sq * ar_quad;

  // priors
  d_phi += (kPhiBetaA - 1.0) / (1.0 + phi) - (kPhiBetaB - 1.0) / (1.0 - phi);
  d_gamma += -kSigmaNu + kSigmaNu * kSigmaTau2 * inv_sigma_sq;

  // chain rule through phi = tanh(alpha) plus the phi-Jacobian derivative
  grad(t_len) = d_log_beta;
  grad(t_len + 1) = d_phi * one_minus_phi_sq - 2.0 * phi;
  grad(t_len + 2) = d_gamma;
  return grad;
}

double StochasticVolatilityModel::transform_log_jacobian(
    const Eigen::VectorXd& theta) const {
  check_point(theta);
  const int t_len = series_length();
  return theta(t_len + 2) + log_one_minus_tanh_sq(theta(t_len + 1));
}

SvData simulate_sv_data(int length, double beta, double phi, double sigma,
                        std::uint64_t seed) {
  if (length < 2) {
    throw std::invalid_argument("simulate_sv_data: need length >= 2");
  }
  if (!(std::abs(phi) < 1.0)) {
    throw std::invalid_argument(
        "simulate_sv_data: |phi| must be < 1 for stationarity");
  }
  if (!(sigma > 0.0) || !(beta > 0.0)) {
    throw std::invalid_argument(
        "simulate_sv_data: sigma and beta must be positive");
  }
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;

  SvData data;
  data.latent.resize(length);
  data.observations.resize(length);
  data.latent(0) = sigma / std::sqrt(1.0 - phi * phi) * normal(gen);
  for (int t = 1; t < length; ++t) {
    data.latent(t) = phi * data.latent(t - 1) + sigma * normal(gen);
  }
  for (int t = 0; t < length; ++t) {
    data.observations(t) = normal(gen) * beta * std::exp(0.5 * data.latent(t));
  }
  return data;
}

}  // namespace ahmc
