#pragma once

#include <memory>
#include <span>
#include <vector>

namespace gpelab {

// Uniform periodic grid centered on z = 0 with the matching FFT wavenumbers
// in standard DFT ordering. z[i] = (i - n/2) dz, so z covers [-L/2, L/2 - dz];
// k[i] = 2 pi i / L for i <= n/2 and the negative branch above, max |k| = pi/dz.
class Grid1D {
 public:
  Grid1D(int n_points, double box_length);

  static std::shared_ptr<const Grid1D> make(int n_points, double box_length);

  int size() const { return n_; }
  double boxLength() const { return box_length_; }
  double dz() const { return dz_; }
  std::span<const double> z() const { return z_; }
  std::span<const double> k() const { return k_; }

  // Index of the sample closest to z (clamped to the grid).
  int indexOf(double z_value) const;

 private:
  int n_;
  double box_length_;
  double dz_;
  std::vector<double> z_;
  std::vector<double> k_;
};

}  // namespace gpelab
