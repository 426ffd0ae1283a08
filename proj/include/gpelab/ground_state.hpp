#pragma once

#include <optional>

#include "gpelab/nonlinearity.hpp"
#include "gpelab/potentials.hpp"
#include "gpelab/wavefunction.hpp"

namespace gpelab {

struct GroundStateOptions {
  // Convergence: residual ||H psi - mu psi|| / max(|mu|, 1e-3) < tol and
  // |delta mu| < tol * max(|mu|, 1e-3) between checks.
  double tol = 1e-9;
  double dt_tau = 0.0;      // 0: derived from the guard dt*max(|V|+|G|) <= 0.05
  long max_steps = 2000000;
  int check_every = 200;
  // Called with the renormalized state at every check instant.
  std::function<void(long step, const Wavefunction&)> observer;
};

struct GroundStateResult {
  Wavefunction psi;             // normalized, time = 0
  double chemical_potential = 0.0;
  double residual = 0.0;        // relative, see above
  long steps = 0;
};

// Imaginary-time split-step relaxation with renormalization after every step.
// The potential is sampled at t = 0. Starts from `guess` when given, else from
// a smooth positive profile shaped by exp(-beta V). Throws NumericalError with
// the final residual if the step cap is reached before convergence.
GroundStateResult groundStateImaginaryTime(
    std::shared_ptr<const Grid1D> grid, const PotentialFn& potential,
    const Nonlinearity& nonlinearity, const GroundStateOptions& options = {},
    const std::optional<Wavefunction>& guess = std::nullopt);

}  // namespace gpelab
