// Copyright 2026 The windpr authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef WINDPR_PSD_HPP_
#define WINDPR_PSD_HPP_

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "windpr/stft.hpp"

namespace windpr {

// Bins whose smoothed PSD falls below this fraction of the frame's total
// power are treated as undefined and excluded from band averages.
inline constexpr double kPsdFloorRel = 1e-12;

// Recursively smoothed periodogram estimates of the difference/sum/auto/cross
// PSDs, p <- beta*p + (1-beta)*instantaneous. The first frame seeds the state
// with its instantaneous periodogram so early frames are unbiased.
struct PsdState {
  std::vector<double> phi_diff, phi_sum, phi_11, phi_22;
  std::vector<std::complex<double>> phi_12;
  double beta = 0.5;
  bool initialized = false;

  explicit PsdState(double smoothing = 0.5);

  std::size_t bins() const { return phi_diff.size(); }

  // Smoothed update from one frame's spectra. Bin-count mismatch against an
  // initialized state is a contract violation.
  void update(const FramePair& frame);

  // Sum over bins of phi_11 + phi_22; the reference for the PSD floor.
  double total_power() const;

  // phi_sum below the floor makes the ratio undefined for that bin.
  std::optional<double> power_ratio(std::size_t k, double floor) const;
  std::optional<double> power_ratio(std::size_t k) const;

  // |phi_12|^2/(phi_11*phi_22); undefined when either auto-PSD is floored.
  std::optional<double> msc(std::size_t k, double floor) const;
  std::optional<double> msc(std::size_t k) const;

  double floor_value() const { return kPsdFloorRel * total_power(); }
};

// Indices k with f_lo <= bin_hz(k) <= f_hi, DC excluded.
std::vector<std::size_t> band_bins(const StftConfig& config, double f_lo,
                                   double f_hi);

// Equal-weight (Welch) mean of the instantaneous periodograms over all frames
// seen; the long-run measurement used to compare against the closed-form
// model curves.
struct AveragedPsd {
  std::vector<double> phi_diff, phi_sum, phi_11, phi_22;
  std::vector<std::complex<double>> phi_12;
  std::size_t count = 0;

  void accumulate(const FramePair& frame);

  double power_ratio(std::size_t k) const;
  double msc(std::size_t k) const;
  std::complex<double> coherence(std::size_t k) const;  // phi_12/sqrt(p11*p22)
};

}  // namespace windpr

#endif  // WINDPR_PSD_HPP_
