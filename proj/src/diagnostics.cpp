#include "ahmc/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ahmc/objective.hpp"

namespace ahmc {

namespace {

double autocovariance(const Eigen::VectorXd& centered, int lag) {
  const Eigen::Index r = centered.size();
  return centered.head(r - lag).dot(centered.tail(r - lag)) / double(r);
}

}  // namespace

std::vector<double> autocorrelation(const Eigen::VectorXd& series,
                                    int max_lag) {
  if (max_lag < 1 || series.size() < 2L * max_lag) {
    throw std::invalid_argument(
        "autocorrelation: need series length >= 2 * max_lag");
  }
  Eigen::VectorXd centered = series.array() - series.mean();
  const double c0 = autocovariance(centered, 0);
  if (!(c0 > 0.0)) {
    throw std::invalid_argument(
        "autocorrelation undefined for a zero-variance series");
  }
  std::vector<double> rho(std::size_t(max_lag) + 1);
  rho[0] = 1.0;
  for (int lag = 1; lag <= max_lag; ++lag) {
    rho[std::size_t(lag)] = autocovariance(centered, lag) / c0;
  }
  return rho;
}

EssResult ess_detail(const Eigen::VectorXd& series) {
  const Eigen::Index r = series.size();
  if (r < 10) {
    throw std::invalid_argument("ess: need at least 10 samples");
  }
  EssResult out;
  Eigen::VectorXd centered = series.array() - series.mean();
  const double c0 = autocovariance(centered, 0);
  if (!(c0 > 0.0)) {
    out.degenerate = true;
    out.value = 0.0;
    return out;
  }
  const int max_lag = static_cast<int>(r / 2);
  double pair_total = 0.0;
  double previous = std::numeric_limits<double>::infinity();
  for (int t = 0; 2 * t + 1 <= max_lag; ++t) {
    const double pair = (autocovariance(centered, 2 * t) +
                         autocovariance(centered, 2 * t + 1)) / c0;
    if (!(pair > 0.0) || pair > previous) break;
    out.pair_sums.push_back(pair);
    pair_total += pair;
    previous = pair;
  }
  const double denominator = std::max(1.0, 2.0 * pair_total - 1.0);
  out.value = double(r) / denominator;
  return out;
}

double ess(const Eigen::VectorXd& series) { return ess_detail(series).value; }

double median(std::vector<double> values) {
  if (values.empty()) {
    throw std::invalid_argument("median of an empty vector");
  }
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

DiagnosticsReport summarize_ess(const Eigen::VectorXd& ess_per_dim,
                                long leapfrog_total) {
  if (ess_per_dim.size() == 0) {
    throw std::invalid_argument("summarize_ess: empty ESS vector");
  }
  DiagnosticsReport rep;
  rep.ess = ess_per_dim;
  rep.ess_min = ess_per_dim.minCoeff();
  rep.ess_max = ess_per_dim.maxCoeff();
  rep.ess_median = median(std::vector<double>(
      ess_per_dim.data(), ess_per_dim.data() + ess_per_dim.size()));
  rep.total_leapfrog = leapfrog_total;
  const double steps = double(leapfrog_total);
  rep.essl_min = rep.ess_min / steps;
  rep.essl_median = rep.ess_median / steps;
  rep.essl_max = rep.ess_max / steps;
  return rep;
}

DiagnosticsReport report(const Eigen::MatrixXd& samples, long leapfrog_total,
                         std::span<const TransitionRecord> records) {
  if (samples.rows() == 0 || samples.cols() == 0) {
    throw std::invalid_argument("report: empty sample matrix");
  }
  Eigen::VectorXd ess_values(samples.cols());
  bool any_degenerate = false;
  for (Eigen::Index d = 0; d < samples.cols(); ++d) {
    EssResult result = ess_detail(samples.col(d));
    ess_values(d) = result.value;
    any_degenerate = any_degenerate || result.degenerate;
  }
  DiagnosticsReport rep = summarize_ess(ess_values, leapfrog_total);
  rep.any_degenerate = any_degenerate;
  rep.acceptance_rate = records.empty()
                            ? std::numeric_limits<double>::quiet_NaN()
                            : acceptance_rate(records);
  return rep;
}

std::string DiagnosticsReport::to_text() const {
  std::ostringstream out;
  out.precision(17);
  out << "# ess_per_leapfrog = ESS / total leapfrog steps\n";
  out << "dimensions " << ess.size() << '\n';
  out << "ess_min " << ess_min << '\n';
  out << "ess_median " << ess_median << '\n';
  out << "ess_max " << ess_max << '\n';
  out << "total_leapfrog " << total_leapfrog << '\n';
  out << "ess_per_leapfrog_min " << essl_min << '\n';
  out << "ess_per_leapfrog_median " << essl_median << '\n';
  out << "ess_per_leapfrog_max " << essl_max << '\n';
  out << "acceptance_rate " << acceptance_rate << '\n';
  out << "degenerate_series " << (any_degenerate ? 1 : 0) << '\n';
  for (Eigen::Index d = 0; d < ess.size(); ++d) {
    out << "ess_dim_" << d << ' ' << ess(d) << '\n';
  }
  return out.str();
}

}  // namespace ahmc
