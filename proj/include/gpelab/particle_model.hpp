#pragma once

#include <span>
#include <vector>

namespace gpelab {

// Effective-particle description of trapped dark solitons. Internal units
// (hbar = m = 1): the potential per unit effective mass is
//   V(z, zdot) = omega_1s^2 z^2 / 2 + (mu/2) B^2 / cosh^2(2 B z / xi),
// with darkness B = sqrt(1 - (zdot/c)^2), xi = 1/sqrt(mu), c = sqrt(mu).
// z is the distance of each soliton of the symmetric pair from the trap
// center; Single mode keeps only the harmonic term.
struct ParticleParams {
  enum class Mode { Single, Pair };

  double omega_1s = 0.0;  // 2 pi nu_1s
  double mu = 0.0;
  Mode mode = Mode::Pair;

  double xi() const;
  double soundSpeed() const;
};

double darkness(double zdot, const ParticleParams& params);
double effectivePotential(double z, double zdot, const ParticleParams& params);

// Acceleration from the Euler-Lagrange equation of L = zdot^2/2 - V(z, zdot).
// The velocity dependence of V gives a velocity-dependent effective mass:
//   zdot'' = (-dV_h/dz - W_z + W_vz zdot) / (1 - W_vv).
double particleAcceleration(double z, double zdot, const ParticleParams& params);

// Conserved Jacobi energy E = zdot dL/dzdot - L.
double particleEnergy(double z, double zdot, const ParticleParams& params);

struct Trajectory {
  std::vector<double> t;
  std::vector<double> z;
  std::vector<double> zdot;
  std::vector<double> energy;

  double energyDrift() const;  // max |E - E0| / |E0|
};

struct TrajectoryOptions {
  double t_max = 0.0;
  double dt_output = 0.0;
  double rel_tol = 1e-12;
  double abs_tol = 1e-12;
  double energy_tol = 1e-8;  // relative drift that aborts
};

// Starts from (z0, 0), z0 > 0. Adaptive 5th-order integration with dense
// output at dt_output. Aborts if the recorded energy drifts beyond tolerance.
Trajectory integrateTrajectory(double z0, const ParticleParams& params,
                               const TrajectoryOptions& options);

// Oscillation frequency via the distance observable d = 2|z|: event times
// where zdot = 0 or z = 0 are refined by cubic Hermite interpolation; the
// event rate gives nu_d and the reported value is nu_d/2, matching how the
// simulation pipeline halves the fitted distance frequency. Throws if fewer
// than three events are found.
double oscillationFrequency(const Trajectory& traj, const ParticleParams& params);

struct FrequencyPoint {
  double amplitude = 0.0;
  double frequency = 0.0;  // cycles per internal time
};

// For a particle released at rest the start point is the turning point, so
// the peak amplitude equals z0. Integrates >= 5 periods per amplitude.
std::vector<FrequencyPoint> frequencyVsAmplitude(const ParticleParams& params,
                                                 std::span<const double> amplitudes);

}  // namespace gpelab
