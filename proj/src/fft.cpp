#include "gpelab/fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace gpelab {

namespace {
std::mutex& plannerMutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct Fft1D::Impl {
  int n = 0;
  fftw_complex* buf = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

Fft1D::Fft1D(int n) : impl_(std::make_unique<Impl>()) {
  impl_->n = n;
  impl_->buf = fftw_alloc_complex(static_cast<std::size_t>(n));
  // FFTW_ESTIMATE keeps planning deterministic (no runtime measurement).
  std::lock_guard<std::mutex> lock(plannerMutex());
  impl_->fwd = fftw_plan_dft_1d(n, impl_->buf, impl_->buf, FFTW_FORWARD, FFTW_ESTIMATE);
  impl_->bwd = fftw_plan_dft_1d(n, impl_->buf, impl_->buf, FFTW_BACKWARD, FFTW_ESTIMATE);
}

Fft1D::~Fft1D() {
  std::lock_guard<std::mutex> lock(plannerMutex());
  fftw_destroy_plan(impl_->fwd);
  fftw_destroy_plan(impl_->bwd);
  fftw_free(impl_->buf);
}

int Fft1D::size() const { return impl_->n; }

std::span<std::complex<double>> Fft1D::data() {
  return {reinterpret_cast<std::complex<double>*>(impl_->buf),
          static_cast<std::size_t>(impl_->n)};
}

void Fft1D::forward() { fftw_execute(impl_->fwd); }

void Fft1D::inverse() {
  fftw_execute(impl_->bwd);
  const double inv = 1.0 / impl_->n;
  auto d = data();
  for (auto& v : d) v *= inv;
}

}  // namespace gpelab
