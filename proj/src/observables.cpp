#include "gpelab/observables.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include "gpelab/fft.hpp"

namespace gpelab {

namespace {

// Kinetic energy via Parseval: int |psi'|^2 dz = (dz/n) sum k^2 |psi_hat_k|^2.
double kineticEnergy(const Wavefunction& psi, Fft1D& fft) {
  const auto k = psi.grid->k();
  auto buf = fft.data();
  std::copy(psi.values.begin(), psi.values.end(), buf.begin());
  fft.forward();
  double s = 0.0;
  for (std::size_t i = 0; i < buf.size(); ++i) s += k[i] * k[i] * std::norm(buf[i]);
  return 0.5 * s * psi.grid->dz() / psi.grid->size();
}

}  // namespace

EnergyBreakdown energyFunctional(const Wavefunction& psi,
                                 std::span<const double> potential,
                                 const Nonlinearity& nonlinearity, double t) {
  const int n = psi.grid->size();
  Fft1D fft(n);
  EnergyBreakdown e;
  e.kinetic = kineticEnergy(psi, fft);
  std::vector<double> dens = density(psi);
  std::vector<double> f(n);
  nonlinearity.energyDensity(dens, t, f);
  const double dz = psi.grid->dz();
  for (int i = 0; i < n; ++i) {
    e.potential += potential[i] * dens[i] * dz;
    e.interaction += f[i] * dz;
  }
  e.total = e.kinetic + e.potential + e.interaction;
  return e;
}

double chemicalPotential(const Wavefunction& psi, std::span<const double> potential,
                         const Nonlinearity& nonlinearity, double t) {
  const int n = psi.grid->size();
  Fft1D fft(n);
  const double e_kin = kineticEnergy(psi, fft);
  std::vector<double> dens = density(psi);
  std::vector<double> g(n);
  nonlinearity.evaluate(dens, t, g);
  const double dz = psi.grid->dz();
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += (potential[i] + g[i]) * dens[i] * dz;
  return (e_kin + s) / norm(psi);
}

double residualNorm(const Wavefunction& psi, std::span<const double> potential,
                    const Nonlinearity& nonlinearity, double t, double mu) {
  const int n = psi.grid->size();
  const auto k = psi.grid->k();
  Fft1D fft(n);
  auto buf = fft.data();
  std::copy(psi.values.begin(), psi.values.end(), buf.begin());
  fft.forward();
  for (int i = 0; i < n; ++i) buf[i] *= 0.5 * k[i] * k[i];
  fft.inverse();

  std::vector<double> dens = density(psi);
  std::vector<double> g(n);
  nonlinearity.evaluate(dens, t, g);

  double r2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const std::complex<double> h = buf[i] + (potential[i] + g[i] - mu) * psi.values[i];
    r2 += std::norm(h);
  }
  const double dz = psi.grid->dz();
  return std::sqrt(r2 * dz / norm(psi));
}

}  // namespace gpelab
