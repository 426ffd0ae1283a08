#include "gpelab/csv.hpp"

#include <cstdio>
#include <fstream>

#include "gpelab/errors.hpp"

namespace gpelab {

std::string formatDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

namespace {
std::ofstream openOut(const std::filesystem::path& path) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw NumericalError("cannot write " + path.string());
  return out;
}
}  // namespace

void writeCsv(const std::filesystem::path& path, const std::string& header,
              const std::vector<std::vector<double>>& rows) {
  auto out = openOut(path);
  out << "# " << header << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ",";
      out << formatDouble(row[i]);
    }
    out << "\n";
  }
}

void writeCarpetCsv(const std::filesystem::path& path, const DensityCarpet& carpet,
                    const UnitSystem& units, double atom_number) {
  auto out = openOut(path);
  out << "# density carpet: first row 0,z[um]...; rows t[ms],atom density[1/um]...\n";
  out << "0";
  for (double z : carpet.grid->z()) out << "," << formatDouble(z);
  out << "\n";
  for (int f = 0; f < carpet.frameCount(); ++f) {
    out << formatDouble(units.timeToMs(carpet.times[f]));
    for (double v : carpet.frame(f)) out << "," << formatDouble(atom_number * v);
    out << "\n";
  }
}

}  // namespace gpelab
