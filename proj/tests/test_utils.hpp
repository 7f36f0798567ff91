#pragma once

// Shared oracles for the test suites. Everything here is deliberately written
// along different code paths than the library (scalar loops, explicit
// inverses, textbook formulas) so the tests stay independent of the
// implementation they check.

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "ahmc/gp.hpp"
#include "ahmc/hmc.hpp"
#include "ahmc/model.hpp"

namespace ahmc::testing {

// Central finite differences of log_density.
inline Eigen::VectorXd fd_gradient(const TargetModel& model,
                                   const Eigen::VectorXd& x, double h = 1e-5) {
  Eigen::VectorXd grad(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Eigen::VectorXd lo = x, hi = x;
    lo(i) -= h;
    hi(i) += h;
    grad(i) = (model.log_density(hi) - model.log_density(lo)) / (2.0 * h);
  }
  return grad;
}

inline double max_relative_error(const Eigen::VectorXd& got,
                                 const Eigen::VectorXd& want) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < got.size(); ++i) {
    const double scale = std::max(1.0, std::abs(want(i)));
    worst = std::max(worst, std::abs(got(i) - want(i)) / scale);
  }
  return worst;
}

// Dense GP posterior through an explicit full-pivot inverse.
inline GPPosterior gp_oracle(const std::vector<HyperParams>& points,
                             const std::vector<double>& rewards,
                             double noise_variance, const HyperParams& query,
                             const SearchSpace& space, double width = 0.2) {
  const int n = static_cast<int>(points.size());
  if (n == 0) return GPPosterior{0.0, 1.0};
  Eigen::MatrixXd gram(n, n);
  Eigen::VectorXd cross(n), reward_vec(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      gram(i, j) = kernel(points[std::size_t(i)], points[std::size_t(j)],
                          space, width);
    }
    gram(i, i) += noise_variance;
    cross(i) = kernel(query, points[std::size_t(i)], space, width);
    reward_vec(i) = rewards[std::size_t(i)];
  }
  const Eigen::MatrixXd inverse = gram.fullPivLu().inverse();
  GPPosterior out;
  out.mean = cross.dot(inverse * reward_vec);
  out.variance = 1.0 - cross.dot(inverse * cross);
  return out;
}

// Stationary AR(1) series with lag-1 autocorrelation `rho`.
inline Eigen::VectorXd ar1_series(int length, double rho, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  Eigen::VectorXd series(length);
  series(0) = normal(gen) / std::sqrt(1.0 - rho * rho);
  for (int t = 1; t < length; ++t) {
    series(t) = rho * series(t - 1) + normal(gen);
  }
  return series;
}

inline Eigen::VectorXd normal_series(int length, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  Eigen::VectorXd series(length);
  for (int t = 0; t < length; ++t) series(t) = normal(gen);
  return series;
}

// Two-sample Kolmogorov-Smirnov statistic and its asymptotic p-value.
inline double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j]) {
      ++i;
    } else {
      ++j;
    }
    const double fa = double(i) / double(a.size());
    const double fb = double(j) / double(b.size());
    d = std::max(d, std::abs(fa - fb));
  }
  return d;
}

inline double ks_p_value(double d, std::size_t n, std::size_t m) {
  const double ne = double(n) * double(m) / double(n + m);
  const double lambda = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * d;
  double sum = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += (j % 2 == 1 ? 2.0 : -2.0) * term;
    if (term < 1e-12) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

// det of the numerical Jacobian of the leapfrog map (x, p) -> (x', p').
inline double leapfrog_jacobian_det(const TargetModel& model,
                                    const Eigen::VectorXd& x,
                                    const Eigen::VectorXd& p, double eps,
                                    int steps, double h = 1e-5) {
  const Eigen::Index d = x.size();
  Eigen::MatrixXd jac(2 * d, 2 * d);
  for (Eigen::Index c = 0; c < 2 * d; ++c) {
    Eigen::VectorXd x_lo = x, x_hi = x, p_lo = p, p_hi = p;
    if (c < d) {
      x_lo(c) -= h;
      x_hi(c) += h;
    } else {
      p_lo(c - d) -= h;
      p_hi(c - d) += h;
    }
    const LeapfrogResult lo = leapfrog(model, x_lo, p_lo, eps, steps);
    const LeapfrogResult hi = leapfrog(model, x_hi, p_hi, eps, steps);
    jac.block(0, c, d, 1) = (hi.position - lo.position) / (2.0 * h);
    jac.block(d, c, d, 1) = (hi.momentum - lo.momentum) / (2.0 * h);
  }
  return jac.determinant();
}

// Target with a constant density inside the box: free-particle dynamics.
class FlatModel final : public TargetModel {
 public:
  explicit FlatModel(int dim, double half_width = Box::kDefaultHalfWidth)
      : dim_(dim), half_width_(half_width) {}
  int dim() const override { return dim_; }
  double log_density(const Eigen::VectorXd&) const override { return 0.0; }
  Eigen::VectorXd grad_log_density(const Eigen::VectorXd& x) const override {
    return Eigen::VectorXd::Zero(x.size());
  }
  Box support_box() const override {
    return Box(Eigen::VectorXd::Constant(dim_, -half_width_),
               Eigen::VectorXd::Constant(dim_, half_width_));
  }

 private:
  int dim_;
  double half_width_;
};

// Steep quartic well; large steps blow up within a few leapfrog iterations.
class QuarticModel final : public TargetModel {
 public:
  explicit QuarticModel(int dim) : dim_(dim) {}
  int dim() const override { return dim_; }
  double log_density(const Eigen::VectorXd& x) const override {
    return -0.25 * x.array().pow(4).sum();
  }
  Eigen::VectorXd grad_log_density(const Eigen::VectorXd& x) const override {
    return -x.array().pow(3);
  }

 private:
  int dim_;
};

}  // namespace ahmc::testing
