// Copyright 2026 The windpr authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "windpr/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <stdexcept>

#include "windpr/errors.hpp"

namespace windpr {

struct RealFft::Impl {
  std::size_t n = 0;
  double* real = nullptr;
  fftw_complex* cplx = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan inv = nullptr;

  explicit Impl(std::size_t size) : n(size) {
    real = fftw_alloc_real(n);
    cplx = fftw_alloc_complex(n / 2 + 1);
    if (real == nullptr || cplx == nullptr) {
      release();
      throw std::bad_alloc();
    }
    // FFTW_ESTIMATE keeps plan selection deterministic and planning cheap.
    fwd = fftw_plan_dft_r2c_1d(static_cast<int>(n), real, cplx, FFTW_ESTIMATE);
    inv = fftw_plan_dft_c2r_1d(static_cast<int>(n), cplx, real, FFTW_ESTIMATE);
    if (fwd == nullptr || inv == nullptr) {
      release();
      throw std::runtime_error("RealFft: plan creation failed");
    }
  }

  void release() {
    if (fwd != nullptr) fftw_destroy_plan(fwd);
    if (inv != nullptr) fftw_destroy_plan(inv);
    if (real != nullptr) fftw_free(real);
    if (cplx != nullptr) fftw_free(cplx);
    fwd = inv = nullptr;
    real = nullptr;
    cplx = nullptr;
  }

  ~Impl() { release(); }
};

RealFft::RealFft(std::size_t size) {
  if (size < 2) throw std::invalid_argument("RealFft: size must be >= 2");
  impl_ = std::make_unique<Impl>(size);
}

RealFft::~RealFft() = default;
RealFft::RealFft(RealFft&&) noexcept = default;
RealFft& RealFft::operator=(RealFft&&) noexcept = default;

std::size_t RealFft::size() const { return impl_->n; }

void RealFft::forward(std::span<const double> in,
                      std::span<std::complex<double>> out) {
  if (in.size() != impl_->n || out.size() != bins())
    throw ContractError("RealFft::forward: buffer size mismatch");
  std::memcpy(impl_->real, in.data(), impl_->n * sizeof(double));
  fftw_execute(impl_->fwd);
  // std::complex<double> is layout-compatible with fftw_complex.
  std::memcpy(static_cast<void*>(out.data()), impl_->cplx,
              bins() * sizeof(fftw_complex));
}

void RealFft::inverse(std::span<const std::complex<double>> in,
                      std::span<double> out) {
  if (in.size() != bins() || out.size() != impl_->n)
    throw ContractError("RealFft::inverse: buffer size mismatch");
  std::memcpy(impl_->cplx, static_cast<const void*>(in.data()),
              bins() * sizeof(fftw_complex));
  // c2r expects a Hermitian half-spectrum: DC (and Nyquist for even n) real.
  impl_->cplx[0][1] = 0.0;
  if (impl_->n % 2 == 0) impl_->cplx[impl_->n / 2][1] = 0.0;
  fftw_execute(impl_->inv);
  const double scale = 1.0 / static_cast<double>(impl_->n);
  for (std::size_t i = 0; i < impl_->n; ++i) out[i] = impl_->real[i] * scale;
}

}  // namespace windpr
