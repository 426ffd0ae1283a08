#pragma once

#include <functional>

#include "gpelab/nonlinearity.hpp"
#include "gpelab/potentials.hpp"
#include "gpelab/wavefunction.hpp"

namespace gpelab {

// Called every observe_every steps (and at step 0 and the final step).
using Observer = std::function<void(long step, const Wavefunction& psi)>;

struct EvolveOptions {
  double dt = 0.0;
  long n_steps = 0;
  int observe_every = 0;  // 0: no observer calls
};

// Strang-split real-time propagation: half kinetic step in momentum space,
// full potential + nonlinearity step in position space, half kinetic step.
// Time-dependent potentials are sampled at the midpoint of each step.
// The potential step is an exact phase rotation, so the norm is conserved to
// roundoff; drift beyond 1e-6 relative or any NaN aborts.
//
// dt must respect the guard dt * max(|V| + |G|) <= 0.05 evaluated at t0.
Wavefunction evolveRealTime(const Wavefunction& psi0, const PotentialFn& potential,
                            const Nonlinearity& nonlinearity, const EvolveOptions& options,
                            const Observer& observer = {});

}  // namespace gpelab
