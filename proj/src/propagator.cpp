#include "gpelab/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "gpelab/errors.hpp"
#include "gpelab/fft.hpp"

namespace gpelab {

namespace {

constexpr double kDtGuard = 0.05;
constexpr double kNormDriftAbort = 1e-6;
constexpr long kCheckInterval = 1000;

std::vector<std::complex<double>> kineticPhases(std::span<const double> k, double tau) {
  std::vector<std::complex<double>> phase(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) {
    phase[i] = std::polar(1.0, -0.5 * k[i] * k[i] * tau);
  }
  return phase;
}

double bufferNorm(std::span<const std::complex<double>> buf, double dz) {
  double s = 0.0;
  for (const auto& v : buf) s += std::norm(v);
  return s * dz;
}

void checkFinite(std::span<const std::complex<double>> buf, long step) {
  for (const auto& v : buf) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw NumericalError("evolveRealTime: non-finite value at step " +
                           std::to_string(step));
    }
  }
}

}  // namespace

Wavefunction evolveRealTime(const Wavefunction& psi0, const PotentialFn& potential,
                            const Nonlinearity& nonlinearity, const EvolveOptions& options,
                            const Observer& observer) {
  if (!psi0.grid) throw ValidationError("evolveRealTime: wavefunction has no grid");
  if (!(options.dt > 0)) throw ValidationError("evolveRealTime: dt must be positive");
  if (options.n_steps < 0) throw ValidationError("evolveRealTime: n_steps must be >= 0");
  if (!allFinite(psi0)) throw ValidationError("evolveRealTime: initial state not finite");

  const Grid1D& grid = *psi0.grid;
  const int n = grid.size();
  const double dt = options.dt;
  const double t0 = psi0.time;

  std::vector<double> v_samples(n), g_samples(n), dens(n);

  // stability guard at t = 0
  potential(t0, v_samples);
  for (int i = 0; i < n; ++i) dens[i] = std::norm(psi0.values[i]);
  nonlinearity.evaluate(dens, t0, g_samples);
  double e_max = 0.0;
  for (int i = 0; i < n; ++i) {
    e_max = std::max(e_max, std::abs(v_samples[i]) + std::abs(g_samples[i]));
  }
  if (e_max > 0 && dt * e_max > kDtGuard * (1.0 + 1e-12)) {
    throw ValidationError("evolveRealTime: dt " + std::to_string(dt) +
                          " violates the guard dt*max(|V|+|G|) <= " +
                          std::to_string(kDtGuard));
  }

  Fft1D fft(n);
  auto buf = fft.data();
  std::copy(psi0.values.begin(), psi0.values.end(), buf.begin());

  const auto kin_half = kineticPhases(grid.k(), 0.5 * dt);
  const auto kin_full = kineticPhases(grid.k(), dt);

  const double norm0 = bufferNorm(buf, grid.dz());
  if (!(norm0 > 0)) throw ValidationError("evolveRealTime: initial norm is zero");

  Wavefunction snapshot = psi0;
  auto emit = [&](long step) {
    if (!observer) return;
    std::copy(buf.begin(), buf.end(), snapshot.values.begin());
    snapshot.time = t0 + step * dt;
    observer(step, snapshot);
  };

  if (options.observe_every > 0) emit(0);

  long step = 0;
  while (step < options.n_steps) {
    long block_end = std::min(options.n_steps, step + kCheckInterval);
    if (options.observe_every > 0) {
      const long next_obs = (step / options.observe_every + 1) * options.observe_every;
      block_end = std::min(block_end, next_obs);
    }

    // fused block: K(dt/2) [P K(dt)]^{m-1} P K(dt/2)
    fft.forward();
    for (int i = 0; i < n; ++i) buf[i] *= kin_half[i];
    fft.inverse();
    for (long s = step; s < block_end; ++s) {
      const double t_mid = t0 + (s + 0.5) * dt;
      potential(t_mid, v_samples);
      for (int i = 0; i < n; ++i) dens[i] = std::norm(buf[i]);
      nonlinearity.evaluate(dens, t_mid, g_samples);
      for (int i = 0; i < n; ++i) {
        buf[i] *= std::polar(1.0, -(v_samples[i] + g_samples[i]) * dt);
      }
      if (s + 1 < block_end) {
        fft.forward();
        for (int i = 0; i < n; ++i) buf[i] *= kin_full[i];
        fft.inverse();
      }
    }
    fft.forward();
    for (int i = 0; i < n; ++i) buf[i] *= kin_half[i];
    fft.inverse();
    step = block_end;

    checkFinite(buf, step);
    const double nn = bufferNorm(buf, grid.dz());
    if (std::abs(nn - norm0) / norm0 > kNormDriftAbort) {
      throw NumericalError("evolveRealTime: norm drift " +
                           std::to_string(std::abs(nn - norm0) / norm0) +
                           " at step " + std::to_string(step));
    }
    if (options.observe_every > 0 && (step % options.observe_every == 0 || step == options.n_steps)) {
      emit(step);
    }
  }

  Wavefunction result = psi0;
  std::copy(buf.begin(), buf.end(), result.values.begin());
  result.time = t0 + options.n_steps * dt;
  return result;
}

}  // namespace gpelab
