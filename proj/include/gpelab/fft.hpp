#pragma once

#include <complex>
#include <memory>
#include <span>

namespace gpelab {

// In-place complex FFT working on an owned, FFTW-aligned buffer.
// Plan creation and destruction are serialized internally; execution is
// thread safe, so independent simulation runs can use one Fft1D each.
class Fft1D {
 public:
  explicit Fft1D(int n);
  ~Fft1D();

  Fft1D(const Fft1D&) = delete;
  Fft1D& operator=(const Fft1D&) = delete;

  int size() const;
  std::span<std::complex<double>> data();

  void forward();   // unnormalized
  void inverse();   // normalized by 1/n

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace gpelab
