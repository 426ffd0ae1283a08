#pragma once

#include <optional>

#include "gpelab/units.hpp"

namespace gpelab {

// SI-facing trap description. Conversion to internal units happens once, in
// the pipelines.
struct LatticeSpec {
  double depth_h_hz = 0.0;   // barrier height as frequency, V0 = h * depth
  double spacing_um = 0.0;
  double offset_um = 0.0;    // 0: barrier maximum at the trap center
};

struct RampSpec {
  double nu_z_initial_hz = 0.0;
  double nu_perp_initial_hz = 0.0;
  double nu_z_final_hz = 0.0;
  double nu_perp_final_hz = 0.0;
  double duration_ms = 0.0;
};

struct TrapConfig {
  double nu_z_hz = 0.0;
  double nu_perp_hz = 0.0;
  double atom_number = 0.0;
  double scattering_length_m = kScatteringLengthRb87;
  double mass_kg = kMassRb87;
  std::optional<LatticeSpec> lattice;
  std::optional<RampSpec> ramp;

  void validate() const;  // nu_z < nu_perp, positivity, ramp endpoint checks
};

}  // namespace gpelab
