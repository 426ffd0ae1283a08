#pragma once

namespace gpelab {

inline constexpr const char* kVersion = "0.1.0";

// SI constants.
inline constexpr double kHbar = 1.054571817e-34;          // J s
inline constexpr double kMassRb87 = 1.44316060e-25;       // kg
inline constexpr double kScatteringLengthRb87 = 5.3e-9;   // m

// Internal units: hbar = m = 1 with a fixed length unit of 1 um.
// The derived time unit is m (1 um)^2 / hbar, the energy unit hbar^2/(m um^2).
// Every SI quantity crosses this boundary exactly once.
class UnitSystem {
 public:
  explicit UnitSystem(double mass_kg = kMassRb87);

  double massKg() const { return mass_kg_; }
  double lengthUnitM() const { return 1e-6; }
  double timeUnitS() const { return time_unit_s_; }
  double energyUnitJ() const { return energy_unit_j_; }

  // Lengths: the internal value is numerically micrometres.
  double lengthFromUm(double um) const { return um; }
  double lengthToUm(double internal) const { return internal; }
  double lengthFromM(double metres) const { return metres / lengthUnitM(); }
  double lengthToM(double internal) const { return internal * lengthUnitM(); }

  double timeFromMs(double ms) const { return ms * 1e-3 / time_unit_s_; }
  double timeToMs(double internal) const { return internal * time_unit_s_ * 1e3; }

  // Angular frequency omega = 2 pi nu.
  double omegaFromHz(double nu_hz) const;
  double omegaToHz(double omega) const;

  // Plain frequency, cycles per internal time unit.
  double frequencyFromHz(double nu_hz) const { return nu_hz * time_unit_s_; }
  double frequencyToHz(double nu_internal) const { return nu_internal / time_unit_s_; }

  // Energies quoted as h * nu (lattice depths and the like).
  double energyFromHHz(double nu_hz) const;

  double energyFromJ(double joules) const { return joules / energy_unit_j_; }
  double energyToJ(double internal) const { return internal * energy_unit_j_; }

 private:
  double mass_kg_;
  double time_unit_s_;
  double energy_unit_j_;
};

}  // namespace gpelab
