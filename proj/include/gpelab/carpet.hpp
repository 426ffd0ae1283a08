#pragma once

#include <span>
#include <vector>

#include "gpelab/grid.hpp"

namespace gpelab {

// Time-ordered stack of density snapshots. Flat row-major storage,
// frame(i) is the density at times[i].
struct DensityCarpet {
  std::shared_ptr<const Grid1D> grid;
  std::vector<double> times;
  std::vector<double> data;

  int frameCount() const { return static_cast<int>(times.size()); }
  std::span<const double> frame(int i) const {
    const std::size_t n = grid->size();
    return {data.data() + static_cast<std::size_t>(i) * n, n};
  }

  void append(double t, std::span<const double> density);
  void validate() const;  // times strictly increasing, densities >= 0
};

}  // namespace gpelab
