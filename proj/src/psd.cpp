// Copyright 2026 The windpr authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "windpr/psd.hpp"

#include <cmath>
#include <stdexcept>

#include "windpr/errors.hpp"

namespace windpr {

PsdState::PsdState(double smoothing) : beta(smoothing) {
  if (!(beta >= 0.0) || !(beta < 1.0))
    throw std::invalid_argument("PsdState: beta must be in [0,1)");
}

namespace {

inline double sqr_abs(const std::complex<double>& z) {
  return z.real() * z.real() + z.imag() * z.imag();
}

}  // namespace

void PsdState::update(const FramePair& frame) {
  const std::size_t n = frame.x1.size();
  if (frame.x2.size() != n)
    throw ContractError("PsdState::update: frame channel bin mismatch");
  if (initialized && n != bins())
    throw ContractError("PsdState::update: bin count mismatch with state");

  if (!initialized) {
    phi_diff.assign(n, 0.0);
    phi_sum.assign(n, 0.0);
    phi_11.assign(n, 0.0);
    phi_22.assign(n, 0.0);
    phi_12.assign(n, {0.0, 0.0});
  }
  // First frame seeds the state with the instantaneous periodogram.
  const double b = initialized ? beta : 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::complex<double> d = frame.x1[k] - frame.x2[k];
    const std::complex<double> s = frame.x1[k] + frame.x2[k];
    phi_diff[k] = b * phi_diff[k] + (1.0 - b) * sqr_abs(d);
    phi_sum[k] = b * phi_sum[k] + (1.0 - b) * sqr_abs(s);
    phi_11[k] = b * phi_11[k] + (1.0 - b) * sqr_abs(frame.x1[k]);
    phi_22[k] = b * phi_22[k] + (1.0 - b) * sqr_abs(frame.x2[k]);
    phi_12[k] = b * phi_12[k] +
                (1.0 - b) * frame.x1[k] * std::conj(frame.x2[k]);
  }
  initialized = true;
}

double PsdState::total_power() const {
  double total = 0.0;
  for (std::size_t k = 0; k < bins(); ++k) total += phi_11[k] + phi_22[k];
  return total;
}

std::optional<double> PsdState::power_ratio(std::size_t k, double floor) const {
  if (k >= bins()) throw ContractError("power_ratio: bin out of range");
  if (!(phi_sum[k] > floor)) return std::nullopt;
  return phi_diff[k] / phi_sum[k];
}

std::optional<double> PsdState::power_ratio(std::size_t k) const {
  return power_ratio(k, floor_value());
}

std::optional<double> PsdState::msc(std::size_t k, double floor) const {
  if (k >= bins()) throw ContractError("msc: bin out of range");
  if (!(phi_11[k] > floor) || !(phi_22[k] > floor)) return std::nullopt;
  return sqr_abs(phi_12[k]) / (phi_11[k] * phi_22[k]);
}

std::optional<double> PsdState::msc(std::size_t k) const {
  return msc(k, floor_value());
}

std::vector<std::size_t> band_bins(const StftConfig& config, double f_lo,
                                   double f_hi) {
  config.validate();
  const double nyquist = config.sample_rate / 2.0;
  if (!(f_lo >= 0.0) || !(f_lo < f_hi) || !(f_hi <= nyquist))
    throw std::invalid_argument("band_bins: need 0 <= f_lo < f_hi <= fs/2");
  std::vector<std::size_t> bins;
  for (std::size_t k = 1; k < config.num_bins(); ++k) {  // DC excluded
    const double f = config.bin_hz(k);
    if (f >= f_lo && f <= f_hi) bins.push_back(k);
  }
  if (bins.empty())
    throw std::invalid_argument("band_bins: band contains no bins");
  return bins;
}

void AveragedPsd::accumulate(const FramePair& frame) {
  const std::size_t n = frame.x1.size();
  if (frame.x2.size() != n)
    throw ContractError("AveragedPsd: frame channel bin mismatch");
  if (count == 0) {
    phi_diff.assign(n, 0.0);
    phi_sum.assign(n, 0.0);
    phi_11.assign(n, 0.0);
    phi_22.assign(n, 0.0);
    phi_12.assign(n, {0.0, 0.0});
  } else if (n != phi_diff.size()) {
    throw ContractError("AveragedPsd: bin count mismatch");
  }
  ++count;
  const double w = 1.0 / static_cast<double>(count);
  for (std::size_t k = 0; k < n; ++k) {
    const std::complex<double> d = frame.x1[k] - frame.x2[k];
    const std::complex<double> s = frame.x1[k] + frame.x2[k];
    phi_diff[k] += w * (sqr_abs(d) - phi_diff[k]);
    phi_sum[k] += w * (sqr_abs(s) - phi_sum[k]);
    phi_11[k] += w * (sqr_abs(frame.x1[k]) - phi_11[k]);
    phi_22[k] += w * (sqr_abs(frame.x2[k]) - phi_22[k]);
    phi_12[k] += w * (frame.x1[k] * std::conj(frame.x2[k]) - phi_12[k]);
  }
}

double AveragedPsd::power_ratio(std::size_t k) const {
  if (k >= phi_diff.size()) throw ContractError("AveragedPsd: bin out of range");
  return phi_diff[k] / phi_sum[k];
}

double AveragedPsd::msc(std::size_t k) const {
  if (k >= phi_11.size()) throw ContractError("AveragedPsd: bin out of range");
  return sqr_abs(phi_12[k]) / (phi_11[k] * phi_22[k]);
}

std::complex<double> AveragedPsd::coherence(std::size_t k) const {
  if (k >= phi_11.size()) throw ContractError("AveragedPsd: bin out of range");
  return phi_12[k] / std::sqrt(phi_11[k] * phi_22[k]);
}

}  // namespace windpr
