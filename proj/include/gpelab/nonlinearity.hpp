#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace gpelab {

// Density-dependent mean-field term of i hbar dpsi/dt = [T + V + G(|psi|^2)] psi.
// evaluate() gives G(n); energyDensity() gives the primitive F(n) with
// F' = G and F(0) = 0, used by the energy functional. Time enters only through
// slowly ramped trap parameters.
class Nonlinearity {
 public:
  virtual ~Nonlinearity() = default;
  virtual void evaluate(std::span<const double> density, double t,
                        std::span<double> out) const = 0;
  virtual void energyDensity(std::span<const double> density, double t,
                             std::span<double> out) const = 0;
};

class ZeroNonlinearity : public Nonlinearity {
 public:
  void evaluate(std::span<const double> density, double t,
                std::span<double> out) const override;
  void energyDensity(std::span<const double> density, double t,
                     std::span<double> out) const override;
};

// G(n) = g1 n with g1 = 2 hbar omega_perp a_s N (psi normalized to 1).
class CubicNonlinearity : public Nonlinearity {
 public:
  explicit CubicNonlinearity(double g1);
  explicit CubicNonlinearity(std::function<double(double)> g1_of_t);

  void evaluate(std::span<const double> density, double t,
                std::span<double> out) const override;
  void energyDensity(std::span<const double> density, double t,
                     std::span<double> out) const override;

 private:
  std::function<double(double)> g1_;
};

// Nonpolynomial reduction with transverse width sigma^2 = a_perp^2 sqrt(1 + 2 a_s N n):
//   G(n) = 2 a_s N omega_perp n / sqrt(1+x)
//        + (omega_perp/2) (1/sqrt(1+x) + sqrt(1+x)) - omega_perp,
// with x = 2 a_s N n, in internal units (hbar = m = 1). The constant
// transverse zero-point energy omega_perp is gauged away so G(0) = 0 and the
// weak-density limit reduces to the cubic term above.
class NpseNonlinearity : public Nonlinearity {
 public:
  NpseNonlinearity(double scattering_length, double atom_number, double omega_perp);
  NpseNonlinearity(double scattering_length, double atom_number,
                   std::function<double(double)> omega_perp_of_t);

  void evaluate(std::span<const double> density, double t,
                std::span<double> out) const override;
  void energyDensity(std::span<const double> density, double t,
                     std::span<double> out) const override;

 private:
  double a_s_;
  double atom_number_;
  std::function<double(double)> omega_perp_;
};

// Static description used by configs and the free sampling functions below.
struct NonlinearSpec {
  enum class Kind { Gpe1d, Npse };

  Kind kind = Kind::Npse;
  double g1 = 0.0;           // cubic coefficient (Gpe1d)
  double a_s = 0.0;          // scattering length, internal (both)
  double a_perp = 0.0;       // transverse oscillator length, internal
  double atom_number = 0.0;

  static NonlinearSpec gpe1d(double omega_perp, double a_s, double atom_number);
  static NonlinearSpec npse(double omega_perp, double a_s, double atom_number);
};

std::vector<double> gpe1dNonlinearity(const NonlinearSpec& spec,
                                      std::span<const double> density);
std::vector<double> npseNonlinearity(const NonlinearSpec& spec,
                                     std::span<const double> density);

std::unique_ptr<Nonlinearity> makeNonlinearity(const NonlinearSpec& spec);
std::unique_ptr<Nonlinearity> makeNonlinearity(const NonlinearSpec& spec,
                                               std::function<double(double)> omega_perp_of_t);

}  // namespace gpelab
