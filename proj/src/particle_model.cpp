#include "gpelab/particle_model.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "gpelab/errors.hpp"

namespace gpelab {

namespace {

void validateParams(const ParticleParams& p) {
  if (!(p.omega_1s > 0)) throw ValidationError("particle model: omega_1s must be positive");
  if (!(p.mu > 0)) throw ValidationError("particle model: mu must be positive");
}

struct InteractionTerms {
  double w = 0.0;    // W(z, zdot)
  double wz = 0.0;   // dW/dz
  double wv = 0.0;   // dW/dzdot
  double wvv = 0.0;  // d2W/dzdot2
  double wvz = 0.0;  // d2W/(dzdot dz)
};

// W = (mu/2) B^2 sech^2(theta), theta = k B z, k = 2/xi. Closed-form partials;
// the shared bracket Q = -3T + 2kzB T^2 - kzB S^2 shows up in both second
// derivatives.
InteractionTerms interaction(double z, double v, const ParticleParams& p) {
  const double c2 = p.mu;
  const double b2 = 1.0 - v * v / c2;
  if (!(b2 > 0)) {
    throw NumericalError("particle model: speed reached the sound speed (B^2 <= 0)");
  }
  const double b = std::sqrt(b2);
  const double k = 2.0 * std::sqrt(p.mu);  // 2/xi
  const double theta = k * b * z;
  const double t = std::tanh(theta);
  const double s2 = 1.0 / (std::cosh(theta) * std::cosh(theta));
  const double kz = k * z;

  InteractionTerms out;
  out.w = 0.5 * p.mu * b2 * s2;
  out.wz = -p.mu * k * b * b2 * s2 * t;
  out.wv = -v * s2 * (1.0 - kz * b * t);
  const double q = -3.0 * t + 2.0 * kz * b * t * t - kz * b * s2;
  out.wvv = -s2 * (1.0 - kz * b * t) + (v * v * kz / (p.mu * b)) * s2 * q;
  out.wvz = -v * k * b * s2 * q;
  return out;
}

}  // namespace

double ParticleParams::xi() const { return 1.0 / std::sqrt(mu); }

double ParticleParams::soundSpeed() const { return std::sqrt(mu); }

double darkness(double zdot, const ParticleParams& params) {
  validateParams(params);
  const double c = params.soundSpeed();
  if (std::abs(zdot) > c * (1.0 + 1e-12)) {
    throw ValidationError("darkness: |zdot| exceeds the sound speed");
  }
  return std::sqrt(std::max(0.0, 1.0 - (zdot / c) * (zdot / c)));
}

double effectivePotential(double z, double zdot, const ParticleParams& params) {
  validateParams(params);
  double v = 0.5 * params.omega_1s * params.omega_1s * z * z;
  if (params.mode == ParticleParams::Mode::Pair) {
    v += interaction(z, zdot, params).w;
  }
  return v;
}

double particleAcceleration(double z, double zdot, const ParticleParams& params) {
  const double harmonic = -params.omega_1s * params.omega_1s * z;
  if (params.mode == ParticleParams::Mode::Single) return harmonic;
  const auto w = interaction(z, zdot, params);
  return (harmonic - w.wz + w.wvz * zdot) / (1.0 - w.wvv);
}

double particleEnergy(double z, double zdot, const ParticleParams& params) {
  double e = 0.5 * zdot * zdot + effectivePotential(z, zdot, params);
  if (params.mode == ParticleParams::Mode::Pair) {
    e -= zdot * interaction(z, zdot, params).wv;
  }
  return e;
}

double Trajectory::energyDrift() const {
  if (energy.empty()) return 0.0;
  const double e0 = energy.front();
  double drift = 0.0;
  for (double e : energy) drift = std::max(drift, std::abs(e - e0));
  return drift / std::max(std::abs(e0), 1e-300);
}

Trajectory integrateTrajectory(double z0, const ParticleParams& params,
                               const TrajectoryOptions& options) {
  validateParams(params);
  if (!(z0 > 0)) throw ValidationError("integrateTrajectory: z0 must be positive");
  if (!(options.t_max > 0) || !(options.dt_output > 0)) {
    throw ValidationError("integrateTrajectory: t_max and dt_output must be positive");
  }

  using State = std::array<double, 2>;
  namespace ode = boost::numeric::odeint;

  auto rhs = [&params](const State& s, State& dsdt, double) {
    dsdt[0] = s[1];
    dsdt[1] = particleAcceleration(s[0], s[1], params);
  };

  Trajectory traj;
  auto record = [&](const State& s, double t) {
    traj.t.push_back(t);
    traj.z.push_back(s[0]);
    traj.zdot.push_back(s[1]);
    traj.energy.push_back(particleEnergy(s[0], s[1], params));
  };

  State state = {z0, 0.0};
  auto stepper = ode::make_controlled(options.abs_tol, options.rel_tol,
                                      ode::runge_kutta_dopri5<State>());
  ode::integrate_const(stepper, rhs, state, 0.0, options.t_max, options.dt_output,
                       record);

  const double drift = traj.energyDrift();
  if (drift > options.energy_tol) {
    throw NumericalError("integrateTrajectory: energy drift " + std::to_string(drift) +
                         " beyond tolerance");
  }
  return traj;
}

namespace {

// Root of the cubic Hermite interpolant of (y0, dy0) -> (y1, dy1) on [0, h],
// assuming a sign change. Bisection on the interpolant.
double hermiteRoot(double h, double y0, double dy0, double y1, double dy1) {
  auto eval = [&](double s) {
    const double u = s / h;
    const double u2 = u * u, u3 = u2 * u;
    return (2 * u3 - 3 * u2 + 1) * y0 + (u3 - 2 * u2 + u) * h * dy0 +
           (-2 * u3 + 3 * u2) * y1 + (u3 - u2) * h * dy1;
  };
  double a = 0.0, b = h;
  double fa = y0;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (a + b);
    const double fm = eval(mid);
    if ((fa <= 0 && fm <= 0) || (fa >= 0 && fm >= 0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

double oscillationFrequency(const Trajectory& traj, const ParticleParams& params) {
  const std::size_t n = traj.t.size();
  if (n < 4) throw NumericalError("oscillationFrequency: trajectory too short");

  std::vector<double> events;
  auto push = [&events](double t) { events.push_back(t); };

  std::vector<double> acc(n);
  for (std::size_t i = 0; i < n; ++i) {
    acc[i] = particleAcceleration(traj.z[i], traj.zdot[i], params);
  }

  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double h = traj.t[i + 1] - traj.t[i];
    // turning points: zdot = 0
    if (traj.zdot[i] == 0.0) {
      push(traj.t[i]);
    } else if (traj.zdot[i] * traj.zdot[i + 1] < 0) {
      push(traj.t[i] + hermiteRoot(h, traj.zdot[i], acc[i], traj.zdot[i + 1], acc[i + 1]));
    }
    // center crossings: z = 0
    if (traj.z[i] == 0.0) {
      push(traj.t[i]);
    } else if (traj.z[i] * traj.z[i + 1] < 0) {
      push(traj.t[i] + hermiteRoot(h, traj.z[i], traj.zdot[i], traj.z[i + 1],
                                   traj.zdot[i + 1]));
    }
  }
  std::sort(events.begin(), events.end());
  const double min_gap = 0.25 * (traj.t[1] - traj.t[0]);
  std::vector<double> distinct;
  for (double t : events) {
    if (distinct.empty() || t - distinct.back() > min_gap) distinct.push_back(t);
  }
  events.swap(distinct);

  if (events.size() < 3) {
    throw NumericalError("oscillationFrequency: no oscillation found (" +
                         std::to_string(events.size()) + " events)");
  }
  const double span = events.back() - events.front();
  const double nu_d = (static_cast<double>(events.size()) - 1.0) / (2.0 * span);
  return 0.5 * nu_d;
}

std::vector<FrequencyPoint> frequencyVsAmplitude(const ParticleParams& params,
                                                 std::span<const double> amplitudes) {
  validateParams(params);
  const double period_1s = 2.0 * std::numbers::pi / params.omega_1s;
  std::vector<FrequencyPoint> out;
  out.reserve(amplitudes.size());
  for (double amplitude : amplitudes) {
    if (!(amplitude > 0)) {
      throw ValidationError("frequencyVsAmplitude: amplitudes must be positive");
    }
    TrajectoryOptions opt;
    opt.t_max = 8.0 * period_1s;
    opt.dt_output = period_1s / 1024.0;
    const Trajectory traj = integrateTrajectory(amplitude, params, opt);
    out.push_back({amplitude, oscillationFrequency(traj, params)});
  }
  return out;
}

}  // namespace gpelab
