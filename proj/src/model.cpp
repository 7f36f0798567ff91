#include "ahmc/model.hpp"

#include <sstream>
#include <stdexcept>

namespace ahmc {

Box::Box(Eigen::VectorXd lo, Eigen::VectorXd hi)
    : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_.size() != hi_.size()) {
    throw std::invalid_argument("Box: lo and hi must have equal length");
  }
  if ((lo_.array() > hi_.array()).any()) {
    throw std::invalid_argument("Box: lo must not exceed hi");
  }
}

Box Box::bounded_default(int dim) {
  return Box(Eigen::VectorXd::Constant(dim, -kDefaultHalfWidth),
             Eigen::VectorXd::Constant(dim, kDefaultHalfWidth));
}

bool Box::contains(const Eigen::VectorXd& x) const {
  if (x.size() != lo_.size()) return false;
  return (x.array() >= lo_.array()).all() && (x.array() <= hi_.array()).all();
}

Eigen::VectorXd Box::clamp(const Eigen::VectorXd& x) const {
  return x.cwiseMax(lo_).cwiseMin(hi_);
}

void TargetModel::check_point(const Eigen::VectorXd& x) const {
  if (static_cast<int>(x.size()) != dim()) {
    std::ostringstream msg;
    msg << "model expects dimension " << dim() << ", got " << x.size();
    throw std::invalid_argument(msg.str());
  }
  if (!x.allFinite()) {
    throw std::invalid_argument("model evaluated at non-finite point");
  }
}

}  // namespace ahmc
