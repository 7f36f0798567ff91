#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ahmc/hmc.hpp"

namespace ahmc {

// Autocorrelation estimates rho_0 .. rho_max_lag (rho_0 = 1), normalized by
// the lag-0 autocovariance. Throws on a zero-variance series.
std::vector<double> autocorrelation(const Eigen::VectorXd& series, int max_lag);

struct EssResult {
  double value = 0.0;
  bool degenerate = false;          // zero-variance series, value reported as 0
  std::vector<double> pair_sums;    // the included Gamma_t = rho_2t + rho_2t+1
};

// Effective sample size R / (1 + 2 sum_k rho_k) with the sum truncated by the
// initial monotone positive sequence rule over pairwise sums: stop at the
// first non-positive or increasing pair, never looking past lag R/2. The
// denominator is floored at 1 so that 0 < ESS <= R.
EssResult ess_detail(const Eigen::VectorXd& series);
double ess(const Eigen::VectorXd& series);

/// Efficiency summary over one run.
struct DiagnosticsReport {
  Eigen::VectorXd ess;  // per dimension
  double ess_min = 0.0, ess_median = 0.0, ess_max = 0.0;
  long total_leapfrog = 0;
  // ess_per_leapfrog_* = ESS summary / total_leapfrog
  double essl_min = 0.0, essl_median = 0.0, essl_max = 0.0;
  double acceptance_rate = 0.0;
  bool any_degenerate = false;

  // Flat key-value block, one "key value" pair per line.
  std::string to_text() const;
};

// Median with the even-length convention of the midpoint of the two central
// values.
double median(std::vector<double> values);

// Min/median/max ESS with their per-leapfrog counterparts.
DiagnosticsReport summarize_ess(const Eigen::VectorXd& ess_per_dim,
                                long leapfrog_total);

// Column-wise ESS of the sample matrix plus summaries and the acceptance
// rate of the records.
DiagnosticsReport report(const Eigen::MatrixXd& samples, long leapfrog_total,
                         std::span<const TransitionRecord> records);

}  // namespace ahmc
