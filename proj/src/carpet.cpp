#include "gpelab/carpet.hpp"

#include <string>

#include "gpelab/errors.hpp"

namespace gpelab {

void DensityCarpet::append(double t, std::span<const double> density) {
  if (!grid) throw ValidationError("DensityCarpet: no grid");
  if (static_cast<int>(density.size()) != grid->size()) {
    throw ValidationError("DensityCarpet: frame size mismatch");
  }
  if (!times.empty() && !(t > times.back())) {
    throw ValidationError("DensityCarpet: timestamps must be strictly increasing");
  }
  times.push_back(t);
  data.insert(data.end(), density.begin(), density.end());
}

void DensityCarpet::validate() const {
  if (!grid) throw ValidationError("DensityCarpet: no grid");
  if (data.size() != times.size() * static_cast<std::size_t>(grid->size())) {
    throw ValidationError("DensityCarpet: storage size mismatch");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw ValidationError("DensityCarpet: timestamps must be strictly increasing");
    }
  }
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data[i] < 0) {
      throw ValidationError("DensityCarpet: negative density at flat index " +
                            std::to_string(i));
    }
  }
}

}  // namespace gpelab
