#include "gpelab/units.hpp"

#include <numbers>

#include "gpelab/errors.hpp"

namespace gpelab {

UnitSystem::UnitSystem(double mass_kg) : mass_kg_(mass_kg) {
  if (!(mass_kg > 0)) throw ValidationError("UnitSystem: mass must be positive");
  const double length_m = lengthUnitM();
  time_unit_s_ = mass_kg_ * length_m * length_m / kHbar;
  energy_unit_j_ = kHbar / time_unit_s_;
}

double UnitSystem::omegaFromHz(double nu_hz) const {
  return 2.0 * std::numbers::pi * nu_hz * time_unit_s_;
}

double UnitSystem::omegaToHz(double omega) const {
  return omega / (2.0 * std::numbers::pi * time_unit_s_);
}

double UnitSystem::energyFromHHz(double nu_hz) const {
  // E = h nu = 2 pi hbar nu, and the internal energy unit is hbar / t0.
  return 2.0 * std::numbers::pi * nu_hz * time_unit_s_;
}

}  // namespace gpelab
