#pragma once

#include <Eigen/Core>

namespace ahmc {

/// Axis-aligned box the sampler is restricted to. Proposals leaving the box
/// are rejected outright, which makes the effective state space compact. The
/// default half-width of 1e6 per coordinate never binds for well-posed
/// targets.
class Box {
 public:
  static constexpr double kDefaultHalfWidth = 1e6;

  Box() = default;
  Box(Eigen::VectorXd lo, Eigen::VectorXd hi);

  static Box bounded_default(int dim);

  bool contains(const Eigen::VectorXd& x) const;
  Eigen::VectorXd clamp(const Eigen::VectorXd& x) const;

  const Eigen::VectorXd& lo() const { return lo_; }
  const Eigen::VectorXd& hi() const { return hi_; }
  int dim() const { return static_cast<int>(lo_.size()); }

 private:
  Eigen::VectorXd lo_, hi_;
};

/// Unnormalized target density on unconstrained coordinates.
///
/// Implementations may drop additive constants from log_density but must drop
/// them consistently, so differences of log-densities are exact. Evaluation is
/// a pure function of (model, x) and safe to call concurrently from multiple
/// chains.
class TargetModel {
 public:
  virtual ~TargetModel() = default;

  virtual int dim() const = 0;
  virtual double log_density(const Eigen::VectorXd& x) const = 0;
  virtual Eigen::VectorXd grad_log_density(const Eigen::VectorXd& x) const = 0;
  virtual Box support_box() const { return Box::bounded_default(dim()); }

 protected:
  // Throws std::invalid_argument on dimension mismatch or non-finite input.
  void check_point(const Eigen::VectorXd& x) const;
};

}  // namespace ahmc
