#include "gpelab/wavefunction.hpp"

#include <cmath>
#include <numbers>

#include "gpelab/errors.hpp"

namespace gpelab {

double norm(const Wavefunction& psi) {
  double s = 0.0;
  for (const auto& v : psi.values) s += std::norm(v);
  return s * psi.grid->dz();
}

void normalize(Wavefunction& psi) {
  const double n = norm(psi);
  if (!(n > 0) || !std::isfinite(n)) {
    throw NumericalError("normalize: wavefunction has zero or non-finite norm");
  }
  const double scale = 1.0 / std::sqrt(n);
  for (auto& v : psi.values) v *= scale;
}

std::vector<double> density(const Wavefunction& psi) {
  std::vector<double> n(psi.values.size());
  for (std::size_t i = 0; i < n.size(); ++i) n[i] = std::norm(psi.values[i]);
  return n;
}

std::vector<double> phaseProfile(const Wavefunction& psi) {
  const std::size_t n = psi.values.size();
  std::vector<double> phase(n, 0.0);
  if (n == 0) return phase;
  phase[0] = std::arg(psi.values[0]);
  constexpr double pi = std::numbers::pi;
  for (std::size_t i = 1; i < n; ++i) {
    double d = std::arg(psi.values[i]) - std::arg(psi.values[i - 1]);
    // fold increments into (-pi, pi]
    while (d > pi) d -= 2.0 * pi;
    while (d <= -pi) d += 2.0 * pi;
    phase[i] = phase[i - 1] + d;
  }
  return phase;
}

bool allFinite(const Wavefunction& psi) {
  for (const auto& v : psi.values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

double meanPosition(const Wavefunction& psi) {
  const auto z = psi.grid->z();
  double m = 0.0;
  for (std::size_t i = 0; i < psi.values.size(); ++i) {
    m += z[i] * std::norm(psi.values[i]);
  }
  return m * psi.grid->dz() / norm(psi);
}

double rmsWidth(const Wavefunction& psi) {
  const auto z = psi.grid->z();
  double m1 = 0.0, m2 = 0.0, w = 0.0;
  for (std::size_t i = 0; i < psi.values.size(); ++i) {
    const double n = std::norm(psi.values[i]);
    m1 += z[i] * n;
    m2 += z[i] * z[i] * n;
    w += n;
  }
  m1 /= w;
  m2 /= w;
  return std::sqrt(std::max(0.0, m2 - m1 * m1));
}

}  // namespace gpelab
