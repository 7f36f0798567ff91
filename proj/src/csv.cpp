#include "ahmc/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ahmc::csv {

namespace {

std::vector<std::vector<double>> load_rows(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open CSV file: " + path.string());
  }
  std::vector<std::vector<double>> rows;
  std::string line;
  long line_number = 0;
  bool header_skipped = false;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header_skipped) {
      header_skipped = true;
      continue;
    }
    std::vector<double> row;
    std::stringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(field, &used));
        if (used != field.size()) throw std::invalid_argument(field);
      } catch (const std::exception&) {
        std::ostringstream msg;
        msg << path.string() << ":" << line_number
            << ": not a number: '" << field << "'";
        throw std::runtime_error(msg.str());
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      std::ostringstream msg;
      msg << path.string() << ":" << line_number << ": expected "
          << rows.front().size() << " fields, got " << row.size();
      throw std::runtime_error(msg.str());
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw std::runtime_error("CSV file has no data rows: " + path.string());
  }
  return rows;
}

}  // namespace

Eigen::MatrixXd load_matrix(const std::filesystem::path& path) {
  const auto rows = load_rows(path);
  Eigen::MatrixXd out(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      out(Eigen::Index(i), Eigen::Index(j)) = rows[i][j];
    }
  }
  return out;
}

Eigen::VectorXd load_vector(const std::filesystem::path& path) {
  Eigen::MatrixXd values = load_matrix(path);
  if (values.cols() != 1) {
    throw std::runtime_error("expected a single-column CSV: " + path.string());
  }
  return values.col(0);
}

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void write_matrix(const std::filesystem::path& path,
                  const std::vector<std::string>& header,
                  const Eigen::MatrixXd& values) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write CSV file: " + path.string());
  }
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (j > 0) out << ',';
    out << header[j];
  }
  out << '\n';
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_double(values(i, j));
    }
    out << '\n';
  }
  if (!out) {
    throw std::runtime_error("write failed: " + path.string());
  }
}

}  // namespace ahmc::csv
