#pragma once

#include <span>
#include <vector>

#include "gpelab/grid.hpp"

namespace gpelab {

struct DetectOptions {
  double search_window_fraction = 0.7;  // of the estimated cloud radius
  double min_contrast = 0.2;            // (n_bg - n_min)/n_bg
  double support_fraction = 0.05;       // density support threshold rel. to max
};

struct SolitonDetection {
  double position = 0.0;   // sub-grid, via parabolic interpolation
  double contrast = 0.0;
  double min_density = 0.0;
};

// Local density minima inside the central search window, gated by contrast
// against the neighbouring local maxima. Sorted ascending by position.
// An empty result is valid; an all-zero frame is rejected.
std::vector<SolitonDetection> detectSolitons(std::span<const double> frame,
                                             const Grid1D& grid,
                                             const DetectOptions& opts = {});

}  // namespace gpelab
