#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "gpelab/errors.hpp"
#include "gpelab/particle_model.hpp"

using namespace gpelab;

namespace {

ParticleParams pairParams(double omega_1s, double mu) {
  ParticleParams p;
  p.omega_1s = omega_1s;
  p.mu = mu;
  p.mode = ParticleParams::Mode::Pair;
  return p;
}

// fixed-step classic RK4 on the same equation of motion, as an independent
// integration scheme
Trajectory rk4Trajectory(double z0, const ParticleParams& p, double t_max,
                         double dt_output, int substeps) {
  Trajectory traj;
  double z = z0, v = 0.0, t = 0.0;
  const double h = dt_output / substeps;
  auto record = [&]() {
    traj.t.push_back(t);
    traj.z.push_back(z);
    traj.zdot.push_back(v);
    traj.energy.push_back(particleEnergy(z, v, p));
  };
  record();
  while (t < t_max - 0.5 * dt_output) {
    for (int s = 0; s < substeps; ++s) {
      const double k1z = v, k1v = particleAcceleration(z, v, p);
      const double k2z = v + 0.5 * h * k1v,
                   k2v = particleAcceleration(z + 0.5 * h * k1z, v + 0.5 * h * k1v, p);
      const double k3z = v + 0.5 * h * k2v,
                   k3v = particleAcceleration(z + 0.5 * h * k2z, v + 0.5 * h * k2v, p);
      const double k4z = v + h * k3v,
                   k4v = particleAcceleration(z + h * k3z, v + h * k3v, p);
      z += h / 6.0 * (k1z + 2 * k2z + 2 * k3z + k4z);
      v += h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
    }
    t += dt_output;
    record();
  }
  return traj;
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("darkness parameter") {
  const auto p = pairParams(1.0, 4.0);  // c = 2
  CHECK(darkness(0.0, p) == doctest::Approx(1.0));
  CHECK(darkness(2.0, p) == doctest::Approx(0.0));
  CHECK(darkness(1.2, p) == doctest::Approx(0.8));  // 0.6 c
  CHECK_THROWS_AS(darkness(2.5, p), ValidationError);
}

TEST_CASE("effective potential values") {
  const auto p = pairParams(1.0, 1.0);  // mu = 1: xi = 1, c = 1
  CHECK(effectivePotential(0.0, 0.0, p) == doctest::Approx(0.5));
  // at the sound speed the interaction term vanishes
  CHECK(effectivePotential(1.3, 1.0, p) == doctest::Approx(0.5 * 1.3 * 1.3).epsilon(1e-12));
  // far away it decays to the harmonic term
  const double far = effectivePotential(30.0, 0.0, p);
  CHECK(std::abs(far - 0.5 * 30.0 * 30.0) < 1e-20 * far + 1e-12);

  ParticleParams single = p;
  single.mode = ParticleParams::Mode::Single;
  CHECK(effectivePotential(0.0, 0.0, single) == doctest::Approx(0.0));
}

TEST_CASE("acceleration is consistent with numeric derivatives of the potential") {
  // independent route: finite differences of V(z, zdot) build the same
  // Euler-Lagrange right-hand side
  const auto p = pairParams(0.34, 8.48);
  const double h = 1e-5;
  for (const auto& [z, v] : std::vector<std::pair<double, double>>{
           {0.31, 0.52}, {1.2, -1.1}, {0.05, 1.9}, {2.4, 0.02}, {-0.8, 1.4}}) {
    auto V = [&](double zz, double vv) { return effectivePotential(zz, vv, p); };
    const double vz = (V(z + h, v) - V(z - h, v)) / (2 * h);
    const double vvv = (V(z, v + h) - 2 * V(z, v) + V(z, v - h)) / (h * h);
    const double vvz = (V(z + h, v + h) - V(z + h, v - h) - V(z - h, v + h) +
                        V(z - h, v - h)) /
                       (4 * h * h);
    const double accel_fd = (-vz + vvz * v) / (1.0 - vvv);
    const double accel = particleAcceleration(z, v, p);
    CHECK(accel == doctest::Approx(accel_fd).epsilon(5e-5));
  }
}

TEST_CASE("single mode is exact harmonic motion") {
  ParticleParams p = pairParams(0.33, 9.0);
  p.mode = ParticleParams::Mode::Single;
  const double period = 2.0 * std::numbers::pi / p.omega_1s;
  TrajectoryOptions opt;
  opt.t_max = 8.0 * period;
  opt.dt_output = period / 1024.0;
  const Trajectory traj = integrateTrajectory(2.0, p, opt);
  const double nu = oscillationFrequency(traj, p);
  const double nu_1s = p.omega_1s / (2.0 * std::numbers::pi);
  CHECK(std::abs(nu - nu_1s) / nu_1s < 1e-6);

  // z(t) = z0 cos(omega t)
  for (std::size_t i = 0; i < traj.t.size(); i += 100) {
    CHECK(traj.z[i] ==
          doctest::Approx(2.0 * std::cos(p.omega_1s * traj.t[i])).epsilon(1e-8));
  }
}

TEST_CASE("pair-mode period pinned by an independent scheme at dt/10") {
  // internal units mu = 1, nu_1s = 1/(2 pi sqrt 2), z0 = 3 xi
  const auto p = pairParams(1.0 / std::numbers::sqrt2, 1.0);
  const double period = 2.0 * std::numbers::pi / p.omega_1s;
  TrajectoryOptions opt;
  opt.t_max = 8.0 * period;
  opt.dt_output = period / 1024.0;
  const Trajectory traj = integrateTrajectory(3.0, p, opt);
  const double nu = oscillationFrequency(traj, p);

  const Trajectory ref = rk4Trajectory(3.0, p, opt.t_max, opt.dt_output, 10);
  const double nu_ref = oscillationFrequency(ref, p);
  CHECK(std::abs(nu - nu_ref) / nu_ref < 1e-6);
}

TEST_CASE("energy conservation and time reversal") {
  const auto p = pairParams(0.34, 8.48);
  const double period = 2.0 * std::numbers::pi / p.omega_1s;
  TrajectoryOptions opt;
  opt.t_max = 10.0 * period;
  opt.dt_output = period / 1024.0;
  const Trajectory traj = integrateTrajectory(2.2, p, opt);
  CHECK(traj.energyDrift() < 1e-8);

  // integrate the reversed end state back to the start
  Trajectory back;
  {
    double z = traj.z.back(), v = -traj.zdot.back(), t = 0.0;
    const int substeps = 40;
    const double h = opt.dt_output / substeps;
    while (t < opt.t_max - 0.5 * opt.dt_output) {
      for (int s = 0; s < substeps; ++s) {
        const double k1z = v, k1v = particleAcceleration(z, v, p);
        const double k2z = v + 0.5 * h * k1v,
                     k2v = particleAcceleration(z + 0.5 * h * k1z, v + 0.5 * h * k1v, p);
        const double k3z = v + 0.5 * h * k2v,
                     k3v = particleAcceleration(z + 0.5 * h * k2z, v + 0.5 * h * k2v, p);
        const double k4z = v + h * k3v,
                     k4v = particleAcceleration(z + h * k3z, v + h * k3v, p);
        z += h / 6.0 * (k1z + 2 * k2z + 2 * k3z + k4z);
        v += h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
      }
      t += opt.dt_output;
    }
    CHECK(std::abs(z - 2.2) < 1e-8);
    CHECK(std::abs(v) < 1e-8);
  }
  (void)back;
}

TEST_CASE("pair-mode frequency falls with amplitude toward the single value") {
  const auto p = pairParams(0.34, 8.48);
  const std::vector<double> amps = {2.0, 3.0, 4.0, 6.0, 8.0};
  const auto points = frequencyVsAmplitude(p, amps);
  const double nu_1s = p.omega_1s / (2.0 * std::numbers::pi);
  for (std::size_t i = 0; i < points.size(); ++i) {
    CHECK(points[i].frequency > nu_1s);
    if (i > 0) CHECK(points[i].frequency < points[i - 1].frequency);
  }
  CHECK(points.back().frequency / nu_1s < 1.05);

  ParticleParams single = p;
  single.mode = ParticleParams::Mode::Single;
  const auto flat = frequencyVsAmplitude(single, amps);
  for (const auto& q : flat) {
    CHECK(std::abs(q.frequency - nu_1s) / nu_1s < 1e-6);
  }
}

TEST_CASE("small-amplitude single mode recovers nu_1s") {
  ParticleParams p = pairParams(0.4557 / std::numbers::sqrt2, 10.0);
  p.mode = ParticleParams::Mode::Single;
  const std::vector<double> amps = {1e-3};
  const auto points = frequencyVsAmplitude(p, amps);
  const double nu_1s = p.omega_1s / (2.0 * std::numbers::pi);
  CHECK(std::abs(points[0].frequency - nu_1s) / nu_1s < 1e-4);
}

TEST_CASE("trajectory guards") {
  const auto p = pairParams(0.34, 8.48);
  TrajectoryOptions opt;
  opt.t_max = 1.0;
  opt.dt_output = 0.01;
  CHECK_THROWS_AS(integrateTrajectory(-1.0, p, opt), ValidationError);
  CHECK_THROWS_AS(integrateTrajectory(0.0, p, opt), ValidationError);

  // too short to oscillate: no turning events
  const Trajectory stub = integrateTrajectory(2.0, p, opt);
  CHECK_THROWS_AS(oscillationFrequency(stub, p), NumericalError);
}

}  // TEST_SUITE
