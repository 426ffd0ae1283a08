#include "gpelab/ground_state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "gpelab/errors.hpp"
#include "gpelab/fft.hpp"
#include "gpelab/observables.hpp"

namespace gpelab {

namespace {

constexpr double kDtGuard = 0.05;

std::vector<double> kineticDecay(std::span<const double> k, double tau) {
  std::vector<double> f(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) f[i] = std::exp(-0.5 * k[i] * k[i] * tau);
  return f;
}

}  // namespace

// Two stages. Split-step imaginary time relaxes toward the ground state but
// its fixed point carries an O(dt_tau^2) bias, so the residual floors there;
// once mu stalls, a kinetic-preconditioned residual descent polishes the
// state down to the requested tolerance. An explicit dt_tau skips the polish
// and converges on |delta mu| alone (useful when the caller wants the fixed
// point of the split map itself).
GroundStateResult groundStateImaginaryTime(std::shared_ptr<const Grid1D> grid,
                                           const PotentialFn& potential,
                                           const Nonlinearity& nonlinearity,
                                           const GroundStateOptions& options,
                                           const std::optional<Wavefunction>& guess) {
  if (!grid) throw ValidationError("groundState: null grid");
  if (!(options.tol > 0)) throw ValidationError("groundState: tol must be positive");
  const int n = grid->size();
  const double dz = grid->dz();

  std::vector<double> v_samples(n);
  potential(0.0, v_samples);
  const auto [v_min_it, v_max_it] = std::minmax_element(v_samples.begin(), v_samples.end());
  if (!std::isfinite(*v_min_it) || !std::isfinite(*v_max_it)) {
    throw ValidationError("groundState: potential not finite on the grid");
  }

  Wavefunction psi(grid);
  if (guess) {
    if (guess->grid->size() != n) throw ValidationError("groundState: guess grid mismatch");
    psi = *guess;
  } else {
    const double dv = std::max(*v_max_it - *v_min_it, 1e-12);
    for (int i = 0; i < n; ++i) {
      psi.values[i] = std::exp(-6.0 * (v_samples[i] - *v_min_it) / dv);
    }
  }
  normalize(psi);
  psi.time = 0.0;

  std::vector<double> dens(n), g_samples(n);
  for (int i = 0; i < n; ++i) dens[i] = std::norm(psi.values[i]);
  nonlinearity.evaluate(dens, 0.0, g_samples);
  double e_max = 0.0;
  for (int i = 0; i < n; ++i) {
    e_max = std::max(e_max, std::abs(v_samples[i]) + std::abs(g_samples[i]));
  }
  const double dt_base = options.dt_tau > 0 ? options.dt_tau
                                            : (e_max > 0 ? kDtGuard / e_max : 1e-2);
  const bool fixed_step = options.dt_tau > 0;

  Fft1D fft(n);
  auto buf = fft.data();
  std::copy(psi.values.begin(), psi.values.end(), buf.begin());

  auto materialize = [&]() {
    std::copy(buf.begin(), buf.end(), psi.values.begin());
    normalize(psi);
    std::copy(psi.values.begin(), psi.values.end(), buf.begin());
  };

  double mu = 0.0;
  double residual_rel = std::numeric_limits<double>::infinity();
  double mu_prev = std::numeric_limits<double>::quiet_NaN();
  long step = 0;

  // ---- stage 1: split-step relaxation (coarse, then base step) ----
  double dt_tau = fixed_step ? dt_base : 4.0 * dt_base;
  auto kin_half = kineticDecay(grid->k(), 0.5 * dt_tau);
  bool coarse = !fixed_step;

  while (step < options.max_steps) {
    const long block = std::min<long>(options.check_every, options.max_steps - step);
    for (long s = 0; s < block; ++s) {
      fft.forward();
      for (int i = 0; i < n; ++i) buf[i] *= kin_half[i];
      fft.inverse();
      for (int i = 0; i < n; ++i) dens[i] = std::norm(buf[i]);
      nonlinearity.evaluate(dens, 0.0, g_samples);
      for (int i = 0; i < n; ++i) {
        buf[i] *= std::exp(-(v_samples[i] + g_samples[i]) * dt_tau);
      }
      fft.forward();
      for (int i = 0; i < n; ++i) buf[i] *= kin_half[i];
      fft.inverse();
      double nn = 0.0;
      for (int i = 0; i < n; ++i) nn += std::norm(buf[i]);
      nn *= dz;
      if (!(nn > 0) || !std::isfinite(nn)) {
        throw NumericalError("groundState: norm lost at step " + std::to_string(step + s));
      }
      const double scale = 1.0 / std::sqrt(nn);
      for (int i = 0; i < n; ++i) buf[i] *= scale;
    }
    step += block;

    materialize();
    if (options.observer) options.observer(step, psi);
    mu = chemicalPotential(psi, v_samples, nonlinearity, 0.0);
    const double scale = std::max(std::abs(mu), 1e-3);
    residual_rel = residualNorm(psi, v_samples, nonlinearity, 0.0, mu) / scale;
    const double dmu = std::isnan(mu_prev) ? std::numeric_limits<double>::infinity()
                                           : std::abs(mu - mu_prev);
    mu_prev = mu;

    if (fixed_step) {
      if (dmu <= options.tol * scale) return {psi, mu, residual_rel, step};
      continue;
    }
    if (residual_rel < options.tol && dmu <= options.tol * scale) {
      return {psi, mu, residual_rel, step};
    }
    // stalled at this step's bias floor
    const bool stalled = dmu <= std::max(options.tol, 0.02 * residual_rel) * scale;
    if (stalled) {
      if (coarse) {
        coarse = false;
        dt_tau = dt_base;
        kin_half = kineticDecay(grid->k(), 0.5 * dt_tau);
        mu_prev = std::numeric_limits<double>::quiet_NaN();
      } else {
        break;  // hand over to the polish stage
      }
    }
  }

  if (fixed_step || step >= options.max_steps) {
    throw NumericalError("groundState: no convergence after " + std::to_string(step) +
                         " steps, residual " + std::to_string(residual_rel));
  }

  // ---- stage 2: preconditioned residual descent ----
  // psi <- normalize(psi - alpha P (H psi - mu psi)), P = (k^2/2 + |mu|)^{-1};
  // alpha adapts to keep the residual decreasing.
  Fft1D work(n);
  auto wbuf = work.data();
  std::vector<std::complex<double>> h_psi(n), candidate(n);
  Wavefunction trial(grid);

  auto applyH = [&](const Wavefunction& w) {
    std::copy(w.values.begin(), w.values.end(), wbuf.begin());
    work.forward();
    const auto k = grid->k();
    for (int i = 0; i < n; ++i) wbuf[i] *= 0.5 * k[i] * k[i];
    work.inverse();
    for (int i = 0; i < n; ++i) dens[i] = std::norm(w.values[i]);
    nonlinearity.evaluate(dens, 0.0, g_samples);
    for (int i = 0; i < n; ++i) {
      h_psi[i] = wbuf[i] + (v_samples[i] + g_samples[i]) * w.values[i];
    }
  };

  double alpha = 1.0;
  mu_prev = mu;
  for (int iter = 0; iter < 2000; ++iter) {
    applyH(psi);
    const double shift = std::max(std::abs(mu), 1e-3);
    std::copy(h_psi.begin(), h_psi.end(), wbuf.begin());
    for (int i = 0; i < n; ++i) wbuf[i] -= mu * psi.values[i];
    work.forward();
    const auto k = grid->k();
    for (int i = 0; i < n; ++i) wbuf[i] /= 0.5 * k[i] * k[i] + shift;
    work.inverse();
    std::copy(wbuf.begin(), wbuf.end(), candidate.begin());

    bool accepted = false;
    while (alpha > 1e-6) {
      for (int i = 0; i < n; ++i) {
        trial.values[i] = psi.values[i] - alpha * candidate[i];
      }
      normalize(trial);
      const double mu_t = chemicalPotential(trial, v_samples, nonlinearity, 0.0);
      const double scale_t = std::max(std::abs(mu_t), 1e-3);
      const double res_t =
          residualNorm(trial, v_samples, nonlinearity, 0.0, mu_t) / scale_t;
      if (res_t < residual_rel) {
        psi.values = trial.values;
        mu = mu_t;
        residual_rel = res_t;
        alpha = std::min(1.0, alpha * 1.3);
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    ++step;
    if (options.observer) options.observer(step, psi);
    const double scale = std::max(std::abs(mu), 1e-3);
    if (residual_rel < options.tol && std::abs(mu - mu_prev) <= options.tol * scale) {
      return {psi, mu, residual_rel, step};
    }
    mu_prev = mu;
    if (!accepted) break;  // descent exhausted above the tolerance
  }

  throw NumericalError("groundState: polish stalled at residual " +
                       std::to_string(residual_rel));
}

}  // namespace gpelab
