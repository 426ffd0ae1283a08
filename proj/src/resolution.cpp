#include "gpelab/resolution.hpp"

#include <cmath>
#include <vector>

#include "gpelab/errors.hpp"

namespace gpelab {

namespace {

std::vector<double> gaussianKernel(double sigma_steps) {
  const int half = static_cast<int>(std::ceil(4.0 * sigma_steps));
  std::vector<double> kernel(2 * half + 1);
  double sum = 0.0;
  for (int i = -half; i <= half; ++i) {
    const double v = std::exp(-0.5 * (i / sigma_steps) * (i / sigma_steps));
    kernel[i + half] = v;
    sum += v;
  }
  for (auto& v : kernel) v /= sum;
  return kernel;
}

// 1D convolution with edge renormalization over the in-range kernel part.
void convolveRenormalized(const std::vector<double>& kernel, std::span<const double> in,
                          std::span<double> out, std::size_t stride, std::size_t count) {
  const int half = (static_cast<int>(kernel.size()) - 1) / 2;
  for (std::size_t j = 0; j < count; ++j) {
    double acc = 0.0, used = 0.0;
    for (int k = -half; k <= half; ++k) {
      const long idx = static_cast<long>(j) + k;
      if (idx < 0 || idx >= static_cast<long>(count)) continue;
      const double kv = kernel[k + half];
      acc += kv * in[idx * stride];
      used += kv;
    }
    out[j * stride] = acc / used;
  }
}

}  // namespace

DensityCarpet applyResolution(const DensityCarpet& carpet, double sigma_z,
                              double sigma_t) {
  if (sigma_z < 0 || sigma_t < 0) {
    throw ValidationError("applyResolution: sigmas must be >= 0");
  }
  carpet.validate();
  DensityCarpet out = carpet;
  const std::size_t n = carpet.grid->size();
  const std::size_t frames = carpet.times.size();

  if (sigma_z > 0) {
    const auto kernel = gaussianKernel(sigma_z / carpet.grid->dz());
    std::vector<double> row(n);
    for (std::size_t f = 0; f < frames; ++f) {
      auto src = std::span<const double>(out.data).subspan(f * n, n);
      convolveRenormalized(kernel, src, row, 1, n);
      std::copy(row.begin(), row.end(), out.data.begin() + f * n);
    }
  }

  if (sigma_t > 0 && frames > 1) {
    // temporal blur assumes (near) uniform frame spacing
    const double dt0 = carpet.times[1] - carpet.times[0];
    for (std::size_t i = 1; i < frames; ++i) {
      const double dt = carpet.times[i] - carpet.times[i - 1];
      if (std::abs(dt - dt0) > 0.01 * dt0) {
        throw ValidationError("applyResolution: temporal blur needs uniform sampling");
      }
    }
    const auto kernel = gaussianKernel(sigma_t / dt0);
    std::vector<double> column(frames);
    std::vector<double> blurred(frames);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t f = 0; f < frames; ++f) column[f] = out.data[f * n + j];
      convolveRenormalized(kernel, column, blurred, 1, frames);
      for (std::size_t f = 0; f < frames; ++f) out.data[f * n + j] = blurred[f];
    }
  }
  return out;
}

}  // namespace gpelab
