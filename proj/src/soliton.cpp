#include "gpelab/soliton.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "gpelab/errors.hpp"

namespace gpelab {

namespace {

void checkOffsetInsideCloud(const Wavefunction& bg, double center) {
  // proxy for "within the condensate": require some background density there
  const auto dens = density(bg);
  const double peak = *std::max_element(dens.begin(), dens.end());
  const int idx = bg.grid->indexOf(center);
  if (!(dens[idx] > 0.01 * peak)) {
    throw ValidationError("imprintSoliton: offset lies outside the condensate bulk");
  }
}

void applySolitonFactor(Wavefunction& psi, double center, double velocity, double mu) {
  if (!(mu > 0)) throw ValidationError("imprintSoliton: mu must be positive");
  const double c = std::sqrt(mu);
  if (!(std::abs(velocity) < c)) {
    throw ValidationError("imprintSoliton: |velocity| must be below the sound speed");
  }
  const double b = std::sqrt(1.0 - (velocity / c) * (velocity / c));
  const double xi = 1.0 / std::sqrt(mu);
  const auto z = psi.grid->z();
  const std::complex<double> flow(0.0, velocity / c);
  for (std::size_t i = 0; i < psi.values.size(); ++i) {
    psi.values[i] *= b * std::tanh(b * (z[i] - center) / xi) + flow;
  }
}

}  // namespace

Wavefunction imprintSoliton(const Wavefunction& background, double center,
                            double velocity, double mu) {
  checkOffsetInsideCloud(background, center);
  Wavefunction psi = background;
  applySolitonFactor(psi, center, velocity, mu);
  normalize(psi);
  return psi;
}

Wavefunction imprintSolitonPair(const Wavefunction& background, double z0,
                                double velocity, double mu) {
  checkOffsetInsideCloud(background, z0);
  checkOffsetInsideCloud(background, -z0);
  Wavefunction psi = background;
  applySolitonFactor(psi, z0, velocity, mu);
  applySolitonFactor(psi, -z0, -velocity, mu);
  normalize(psi);
  return psi;
}

}  // namespace gpelab
