#pragma once

#include "gpelab/wavefunction.hpp"

namespace gpelab {

// Multiplies the background by the dark-soliton profile
//   s(z; z_c, v) = B tanh(B (z - z_c)/xi) + i v/c,
// with B = sqrt(1 - (v/c)^2), xi = 1/sqrt(mu), c = sqrt(mu), and renormalizes.
// |v| >= c is rejected (no dark soliton exists there).
Wavefunction imprintSoliton(const Wavefunction& background, double center,
                            double velocity, double mu);

// Symmetric pair at +-z0 with opposite velocities +-v.
Wavefunction imprintSolitonPair(const Wavefunction& background, double z0,
                                double velocity, double mu);

}  // namespace gpelab
