// Copyright 2026 The windpr authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef WINDPR_FFT_HPP_
#define WINDPR_FFT_HPP_

#include <complex>
#include <cstddef>
#include <memory>
#include <span>

namespace windpr {

// One-dimensional real<->half-complex transform of a fixed size (any N, not
// just powers of two). Not thread-safe per instance; create one per thread.
class RealFft {
 public:
  explicit RealFft(std::size_t size);
  ~RealFft();
  RealFft(RealFft&&) noexcept;
  RealFft& operator=(RealFft&&) noexcept;
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t size() const;
  std::size_t bins() const { return size() / 2 + 1; }

  // out[k] = sum_n in[n] exp(-i 2 pi k n / N), k = 0..N/2.
  void forward(std::span<const double> in, std::span<std::complex<double>> out);

  // Inverse of forward, scaled by 1/N (round trip is the identity). The
  // imaginary parts of in[0] and, for even N, in[N/2] are ignored.
  void inverse(std::span<const std::complex<double>> in, std::span<double> out);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace windpr

#endif  // WINDPR_FFT_HPP_
