// Copyright 2026 The windpr authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef WINDPR_DETECTOR_HPP_
#define WINDPR_DETECTOR_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "windpr/psd.hpp"
#include "windpr/stft.hpp"

namespace windpr {

struct DetectorConfig {
  double band_lo_hz = 0.0;
  double band_hi_hz = 500.0;
  double threshold = 0.5;  // theta in [0,1]
  bool clamp_soft = true;  // clip per-bin PR to [0,1] before the band mean

  void validate() const;
};

// Per-frame detector outputs. Soft scores are nullopt when every band bin was
// undefined (digital silence); the hard decision for such frames is 0.
struct FrameScore {
  std::size_t frame_index = 0;
  std::optional<double> soft_pr;            // per config clamping
  std::optional<double> soft_pr_unclamped;  // same mean without clipping
  std::optional<double> soft_msc;
  int hard_pr = 0;
  int hard_msc = 0;
};

// Band mean of the per-bin power ratio over defined bins, optionally clipping
// each bin to [0,1] first.
std::optional<double> soft_pr(const PsdState& state,
                              std::span<const std::size_t> band, bool clamp);

// 1 minus the band mean of the per-bin magnitude squared coherence.
std::optional<double> soft_msc(const PsdState& state,
                               std::span<const std::size_t> band);

// Hard decision: 1 iff soft > theta (strict). No-decision frames map to 0.
int hard(double soft, double theta);
int hard(std::optional<double> soft, double theta);

// Full pipeline: STFT both channels, run the smoothed-periodogram state
// sequentially, and score every frame with both detectors.
std::vector<FrameScore> score_frames(std::span<const double> ch1,
                                     std::span<const double> ch2,
                                     const StftConfig& stft,
                                     const DetectorConfig& config,
                                     double smoothing);

}  // namespace windpr

#endif  // WINDPR_DETECTOR_HPP_
