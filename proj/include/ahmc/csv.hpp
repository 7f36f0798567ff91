#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace ahmc::csv {

// Numeric CSV with a header row, one observation per line. Parse errors name
// the file and line.
Eigen::MatrixXd load_matrix(const std::filesystem::path& path);
Eigen::VectorXd load_vector(const std::filesystem::path& path);

// Writes with enough digits to round-trip doubles exactly.
void write_matrix(const std::filesystem::path& path,
                  const std::vector<std::string>& header,
                  const Eigen::MatrixXd& values);

std::string format_double(double value);

}  // namespace ahmc::csv
