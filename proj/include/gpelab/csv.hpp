#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "gpelab/carpet.hpp"
#include "gpelab/units.hpp"

namespace gpelab {

// Fixed "%.12g" formatting keeps outputs bit-identical across reruns.
std::string formatDouble(double v);

// One '#' header line naming columns and units, then comma-separated rows.
void writeCsv(const std::filesystem::path& path, const std::string& header,
              const std::vector<std::vector<double>>& rows);

// Matrix layout: '#' header line; first row 0 followed by z in um; then one
// row per frame, t in ms followed by the atom density N|psi|^2 per um.
void writeCarpetCsv(const std::filesystem::path& path, const DensityCarpet& carpet,
                    const UnitSystem& units, double atom_number);

}  // namespace gpelab
