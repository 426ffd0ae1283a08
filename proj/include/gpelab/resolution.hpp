#pragma once

#include "gpelab/carpet.hpp"

namespace gpelab {

// Gaussian blur along z (std sigma_z) and t (std sigma_t), emulating the
// finite optical and temporal resolution of an absorption image. Kernels are
// truncated at 4 sigma and renormalized, also at the edges, so a frame's atom
// number is preserved away from the boundary.
DensityCarpet applyResolution(const DensityCarpet& carpet, double sigma_z,
                              double sigma_t);

}  // namespace gpelab
