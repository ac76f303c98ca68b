#include "wm4d/core/tensor.hpp"

#include <cmath>

namespace wm4d {

bool Tensor::all_finite() const {
  for (double x : data) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

double Tensor::max_abs() const {
  double m = 0.0;
  for (double x : data) m = std::max(m, std::fabs(x));
  return m;
}

}  // namespace wm4d
