#include "gpelab/potentials.hpp"

#include <cmath>
#include <numbers>

#include "gpelab/errors.hpp"

namespace gpelab {

std::vector<double> harmonicPotential(const Grid1D& grid, double omega_z) {
  if (!(omega_z > 0)) throw ValidationError("harmonicPotential: omega_z must be positive");
  std::vector<double> v(grid.size());
  const auto z = grid.z();
  for (int i = 0; i < grid.size(); ++i) v[i] = 0.5 * omega_z * omega_z * z[i] * z[i];
  return v;
}

std::vector<double> latticePotential(const Grid1D& grid, double depth,
                                     double spacing, double offset) {
  if (depth < 0) throw ValidationError("latticePotential: depth must be >= 0");
  if (!(spacing > 0)) throw ValidationError("latticePotential: spacing must be positive");
  std::vector<double> v(grid.size());
  const auto z = grid.z();
  for (int i = 0; i < grid.size(); ++i) {
    const double c = std::cos(std::numbers::pi * (z[i] - offset) / spacing);
    v[i] = depth * c * c;
  }
  return v;
}

namespace {
double lerpClamped(double a, double b, double t0, double duration, double t) {
  if (duration <= 0 || t >= t0 + duration) return b;
  if (t <= t0) return a;
  const double s = (t - t0) / duration;
  return a + (b - a) * s;
}
}  // namespace

double RampSchedule::omegaZ(double t) const {
  return lerpClamped(omega_z_initial, omega_z_final, t0, duration, t);
}

double RampSchedule::omegaPerp(double t) const {
  return lerpClamped(omega_perp_initial, omega_perp_final, t0, duration, t);
}

std::pair<double, double> rampSample(double t, const RampSchedule& ramp) {
  return {ramp.omegaZ(t), ramp.omegaPerp(t)};
}

PotentialFn staticPotential(std::vector<double> samples) {
  return [v = std::move(samples)](double, std::span<double> out) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = v[i];
  };
}

PotentialFn rampedHarmonicPotential(const Grid1D& grid, const RampSchedule& ramp) {
  std::vector<double> z2(grid.size());
  const auto z = grid.z();
  for (int i = 0; i < grid.size(); ++i) z2[i] = z[i] * z[i];
  return [z2 = std::move(z2), ramp](double t, std::span<double> out) {
    const double w = ramp.omegaZ(t);
    const double half_w2 = 0.5 * w * w;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = half_w2 * z2[i];
  };
}

}  // namespace gpelab
