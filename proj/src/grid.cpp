#include "gpelab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "gpelab/errors.hpp"

namespace gpelab {

namespace {
bool isPowerOfTwo(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

Grid1D::Grid1D(int n_points, double box_length)
    : n_(n_points), box_length_(box_length) {
  if (!isPowerOfTwo(n_points) || n_points < 256) {
    throw ValidationError("Grid1D: n_points must be a power of two >= 256, got " +
                          std::to_string(n_points));
  }
  if (!(box_length > 0)) {
    throw ValidationError("Grid1D: box_length must be positive");
  }
  dz_ = box_length_ / n_;
  z_.resize(n_);
  k_.resize(n_);
  const double dk = 2.0 * std::numbers::pi / box_length_;
  for (int i = 0; i < n_; ++i) {
    z_[i] = (i - n_ / 2) * dz_;
    const int m = (i <= n_ / 2) ? i : i - n_;
    k_[i] = dk * m;
  }
}

std::shared_ptr<const Grid1D> Grid1D::make(int n_points, double box_length) {
  return std::make_shared<const Grid1D>(n_points, box_length);
}

int Grid1D::indexOf(double z_value) const {
  const int i = static_cast<int>(std::lround(z_value / dz_)) + n_ / 2;
  return std::clamp(i, 0, n_ - 1);
}

}  // namespace gpelab
