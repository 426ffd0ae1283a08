#pragma once

#include <span>

#include "gpelab/nonlinearity.hpp"
#include "gpelab/wavefunction.hpp"

namespace gpelab {

struct EnergyBreakdown {
  double kinetic = 0.0;
  double potential = 0.0;
  double interaction = 0.0;  // integral of F(n), F' = G
  double total = 0.0;
};

// E[psi] = int (1/2)|dpsi/dz|^2 + V n + F(n) dz, conserved in real time for
// static V.
EnergyBreakdown energyFunctional(const Wavefunction& psi,
                                 std::span<const double> potential,
                                 const Nonlinearity& nonlinearity, double t);

// mu = <psi| -1/2 d^2/dz^2 + V + G(n) |psi> with the full nonlinear term at
// the given density (for the cubic GPE this is the chemical potential, not
// the energy per particle).
double chemicalPotential(const Wavefunction& psi, std::span<const double> potential,
                         const Nonlinearity& nonlinearity, double t);

// ||H psi - mu psi||_2 / ||psi||_2, in energy units.
double residualNorm(const Wavefunction& psi, std::span<const double> potential,
                    const Nonlinearity& nonlinearity, double t, double mu);

}  // namespace gpelab
