#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "gpelab/grid.hpp"

namespace gpelab {

// Samples V(z, t) on the grid. Internal units throughout.
using PotentialFn = std::function<void(double t, std::span<double> out)>;

// V(z) = (1/2) omega_z^2 z^2 (m = 1).
std::vector<double> harmonicPotential(const Grid1D& grid, double omega_z);

// V(z) = depth cos^2(pi (z - offset)/spacing). Superposed on the harmonic
// trap this makes a double well whose minima sit slightly inside +-spacing/2.
std::vector<double> latticePotential(const Grid1D& grid, double depth,
                                     double spacing, double offset);

// Linear interpolation of both trap frequencies over [t0, t0 + duration],
// clamped outside.
struct RampSchedule {
  double omega_z_initial = 0.0;
  double omega_perp_initial = 0.0;
  double omega_z_final = 0.0;
  double omega_perp_final = 0.0;
  double t0 = 0.0;
  double duration = 0.0;

  double omegaZ(double t) const;
  double omegaPerp(double t) const;
};

std::pair<double, double> rampSample(double t, const RampSchedule& ramp);

PotentialFn staticPotential(std::vector<double> samples);
PotentialFn rampedHarmonicPotential(const Grid1D& grid, const RampSchedule& ramp);

}  // namespace gpelab
