#include "gpelab/nonlinearity.hpp"

#include <cmath>
#include <string>

#include "gpelab/errors.hpp"

namespace gpelab {

void ZeroNonlinearity::evaluate(std::span<const double>, double,
                                std::span<double> out) const {
  for (auto& v : out) v = 0.0;
}

void ZeroNonlinearity::energyDensity(std::span<const double>, double,
                                     std::span<double> out) const {
  for (auto& v : out) v = 0.0;
}

CubicNonlinearity::CubicNonlinearity(double g1)
    : g1_([g1](double) { return g1; }) {}

CubicNonlinearity::CubicNonlinearity(std::function<double(double)> g1_of_t)
    : g1_(std::move(g1_of_t)) {}

void CubicNonlinearity::evaluate(std::span<const double> density, double t,
                                 std::span<double> out) const {
  const double g1 = g1_(t);
  for (std::size_t i = 0; i < density.size(); ++i) out[i] = g1 * density[i];
}

void CubicNonlinearity::energyDensity(std::span<const double> density, double t,
                                      std::span<double> out) const {
  const double g1 = g1_(t);
  for (std::size_t i = 0; i < density.size(); ++i) {
    out[i] = 0.5 * g1 * density[i] * density[i];
  }
}

NpseNonlinearity::NpseNonlinearity(double scattering_length, double atom_number,
                                   double omega_perp)
    : a_s_(scattering_length),
      atom_number_(atom_number),
      omega_perp_([omega_perp](double) { return omega_perp; }) {}

NpseNonlinearity::NpseNonlinearity(double scattering_length, double atom_number,
                                   std::function<double(double)> omega_perp_of_t)
    : a_s_(scattering_length),
      atom_number_(atom_number),
      omega_perp_(std::move(omega_perp_of_t)) {}

void NpseNonlinearity::evaluate(std::span<const double> density, double t,
                                std::span<double> out) const {
  const double wp = omega_perp_(t);
  const double beta = 2.0 * a_s_ * atom_number_;
  for (std::size_t i = 0; i < density.size(); ++i) {
    const double x = beta * density[i];
    const double arg = 1.0 + x;
    if (!(arg > 0)) {
      throw NumericalError("npse: 1 + 2 a_s N n <= 0 at sample " + std::to_string(i));
    }
    const double s = std::sqrt(arg);  // sigma^2 / a_perp^2
    out[i] = beta * wp * density[i] / s + 0.5 * wp * (1.0 / s + s) - wp;
  }
}

void NpseNonlinearity::energyDensity(std::span<const double> density, double t,
                                     std::span<double> out) const {
  // e(n) = (wp/2)(1/s + s) n + (wp beta/2) n^2 / s - wp n, s = sqrt(1 + beta n).
  // The transverse width minimizes e pointwise, so de/dn equals evaluate().
  const double wp = omega_perp_(t);
  const double beta = 2.0 * a_s_ * atom_number_;
  for (std::size_t i = 0; i < density.size(); ++i) {
    const double n = density[i];
    const double arg = 1.0 + beta * n;
    if (!(arg > 0)) {
      throw NumericalError("npse: 1 + 2 a_s N n <= 0 at sample " + std::to_string(i));
    }
    const double s = std::sqrt(arg);
    out[i] = 0.5 * wp * (1.0 / s + s) * n + 0.5 * wp * beta * n * n / s - wp * n;
  }
}

NonlinearSpec NonlinearSpec::gpe1d(double omega_perp, double a_s, double atom_number) {
  NonlinearSpec spec;
  spec.kind = Kind::Gpe1d;
  spec.a_s = a_s;
  spec.atom_number = atom_number;
  spec.a_perp = 1.0 / std::sqrt(omega_perp);
  spec.g1 = 2.0 * omega_perp * a_s * atom_number;
  if (!(spec.a_perp > spec.a_s)) {
    throw ValidationError("NonlinearSpec: a_perp must exceed a_s for the quasi-1D reduction");
  }
  return spec;
}

NonlinearSpec NonlinearSpec::npse(double omega_perp, double a_s, double atom_number) {
  NonlinearSpec spec = gpe1d(omega_perp, a_s, atom_number);
  spec.kind = Kind::Npse;
  return spec;
}

std::vector<double> gpe1dNonlinearity(const NonlinearSpec& spec,
                                      std::span<const double> density) {
  std::vector<double> out(density.size());
  CubicNonlinearity nl(spec.g1);
  nl.evaluate(density, 0.0, out);
  return out;
}

std::vector<double> npseNonlinearity(const NonlinearSpec& spec,
                                     std::span<const double> density) {
  std::vector<double> out(density.size());
  const double omega_perp = 1.0 / (spec.a_perp * spec.a_perp);
  NpseNonlinearity nl(spec.a_s, spec.atom_number, omega_perp);
  nl.evaluate(density, 0.0, out);
  return out;
}

std::unique_ptr<Nonlinearity> makeNonlinearity(const NonlinearSpec& spec) {
  const double omega_perp = 1.0 / (spec.a_perp * spec.a_perp);
  if (spec.kind == NonlinearSpec::Kind::Gpe1d) {
    return std::make_unique<CubicNonlinearity>(spec.g1);
  }
  return std::make_unique<NpseNonlinearity>(spec.a_s, spec.atom_number, omega_perp);
}

std::unique_ptr<Nonlinearity> makeNonlinearity(const NonlinearSpec& spec,
                                               std::function<double(double)> omega_perp_of_t) {
  if (spec.kind == NonlinearSpec::Kind::Gpe1d) {
    const double a_s = spec.a_s;
    const double n_atoms = spec.atom_number;
    auto g1 = [a_s, n_atoms, w = std::move(omega_perp_of_t)](double t) {
      return 2.0 * w(t) * a_s * n_atoms;
    };
    return std::make_unique<CubicNonlinearity>(std::move(g1));
  }
  return std::make_unique<NpseNonlinearity>(spec.a_s, spec.atom_number,
                                            std::move(omega_perp_of_t));
}

}  // namespace gpelab
