#include "gpelab/detect.hpp"

#include <algorithm>
#include <cmath>

#include "gpelab/errors.hpp"

namespace gpelab {

std::vector<SolitonDetection> detectSolitons(std::span<const double> frame,
                                             const Grid1D& grid,
                                             const DetectOptions& opts) {
  const int n = grid.size();
  if (static_cast<int>(frame.size()) != n) {
    throw ValidationError("detectSolitons: frame size mismatch");
  }
  const double peak = *std::max_element(frame.begin(), frame.end());
  if (!(peak > 0) || !std::isfinite(peak)) {
    throw ValidationError("detectSolitons: degenerate flat frame");
  }

  // cloud radius from the density support
  const double support_level = opts.support_fraction * peak;
  int first = 0, last = n - 1;
  while (first < n && frame[first] < support_level) ++first;
  while (last >= 0 && frame[last] < support_level) --last;
  if (last <= first) throw ValidationError("detectSolitons: no density support");
  const auto z = grid.z();
  const double r_est = 0.5 * (z[last] - z[first]);
  const double window = opts.search_window_fraction * r_est;

  std::vector<SolitonDetection> found;
  for (int i = 1; i + 1 < n; ++i) {
    if (std::abs(z[i]) > window) continue;
    if (!(frame[i] < frame[i - 1] && frame[i] <= frame[i + 1])) continue;

    // climb to the bounding local maxima for the local background
    int jl = i;
    while (jl > 0 && frame[jl - 1] >= frame[jl]) --jl;
    int jr = i;
    while (jr + 1 < n && frame[jr + 1] >= frame[jr]) ++jr;
    const double n_bg = 0.5 * (frame[jl] + frame[jr]);
    if (!(n_bg > 0)) continue;
    const double contrast = (n_bg - frame[i]) / n_bg;
    if (contrast < opts.min_contrast) continue;

    double pos = z[i];
    double n_min = frame[i];
    const double denom = frame[i - 1] - 2.0 * frame[i] + frame[i + 1];
    if (denom > 0) {
      const double shift = 0.5 * (frame[i - 1] - frame[i + 1]) / denom;
      pos += shift * grid.dz();
      n_min = frame[i] - 0.25 * (frame[i - 1] - frame[i + 1]) * shift;
    }
    found.push_back({pos, contrast, n_min});
  }
  return found;
}

}  // namespace gpelab
