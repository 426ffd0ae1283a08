#include "gpelab/quantities.hpp"

#include <cmath>
#include <numbers>

#include "gpelab/errors.hpp"
#include "gpelab/units.hpp"

namespace gpelab {

double criticalDistanceM(double atom_number, double scattering_length_m,
                         double nu_z_hz, double mass_kg) {
  if (!(atom_number > 0) || !(scattering_length_m > 0) || !(nu_z_hz > 0) ||
      !(mass_kg > 0)) {
    throw ValidationError("criticalDistance: all inputs must be positive");
  }
  const double arg = 6.0 * atom_number * kHbar * scattering_length_m /
                     (nu_z_hz * mass_kg);
  return std::numbers::pi * std::cbrt(arg);
}

double healingLength(double mu) {
  if (!(mu > 0)) throw ValidationError("healingLength: mu must be positive");
  return 1.0 / std::sqrt(mu);
}

double soundSpeed(double mu) {
  if (!(mu > 0)) throw ValidationError("soundSpeed: mu must be positive");
  return std::sqrt(mu);
}

double tfChemicalPotential(double g1, double omega_z) {
  if (!(g1 > 0) || !(omega_z > 0)) {
    throw ValidationError("tfChemicalPotential: g1 and omega_z must be positive");
  }
  return std::pow(3.0 / (4.0 * std::numbers::sqrt2) * g1 * omega_z, 2.0 / 3.0);
}

double tfRadius(double mu, double omega_z) {
  if (!(mu > 0) || !(omega_z > 0)) {
    throw ValidationError("tfRadius: mu and omega_z must be positive");
  }
  return std::sqrt(2.0 * mu) / omega_z;
}

}  // namespace gpelab
