#pragma once

#include <complex>
#include <vector>

#include "gpelab/grid.hpp"

namespace gpelab {

// Condensate order parameter on a grid. Normalized to 1; the atom number
// lives in the nonlinearity coefficient.
struct Wavefunction {
  std::shared_ptr<const Grid1D> grid;
  std::vector<std::complex<double>> values;
  double time = 0.0;

  Wavefunction() = default;
  explicit Wavefunction(std::shared_ptr<const Grid1D> g)
      : grid(std::move(g)), values(grid->size(), {0.0, 0.0}) {}
};

double norm(const Wavefunction& psi);                    // integral |psi|^2 dz
void normalize(Wavefunction& psi);                       // scales norm to 1
std::vector<double> density(const Wavefunction& psi);    // |psi|^2
std::vector<double> phaseProfile(const Wavefunction& psi);  // unwrapped arg
bool allFinite(const Wavefunction& psi);

double meanPosition(const Wavefunction& psi);   // <z>
double rmsWidth(const Wavefunction& psi);       // sqrt(<z^2> - <z>^2)

}  // namespace gpelab
