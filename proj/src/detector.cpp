// Copyright 2026 The windpr authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "windpr/detector.hpp"

#include <algorithm>
#include <stdexcept>

namespace windpr {

void DetectorConfig::validate() const {
  if (!(threshold >= 0.0) || !(threshold <= 1.0))
    throw std::invalid_argument("DetectorConfig: threshold must be in [0,1]");
  if (!(band_lo_hz >= 0.0) || !(band_lo_hz < band_hi_hz))
    throw std::invalid_argument("DetectorConfig: invalid band");
}

std::optional<double> soft_pr(const PsdState& state,
                              std::span<const std::size_t> band, bool clamp) {
  const double floor = state.floor_value();
  double sum = 0.0;
  std::size_t defined = 0;
  for (const std::size_t k : band) {
    const std::optional<double> pr = state.power_ratio(k, floor);
    if (!pr.has_value()) continue;
    sum += clamp ? std::clamp(*pr, 0.0, 1.0) : *pr;
    ++defined;
  }
  if (defined == 0) return std::nullopt;
  return sum / static_cast<double>(defined);
}

std::optional<double> soft_msc(const PsdState& state,
                               std::span<const std::size_t> band) {
  const double floor = state.floor_value();
  double sum = 0.0;
  std::size_t defined = 0;
  for (const std::size_t k : band) {
    const std::optional<double> m = state.msc(k, floor);
    if (!m.has_value()) continue;
    sum += *m;
    ++defined;
  }
  if (defined == 0) return std::nullopt;
  return 1.0 - sum / static_cast<double>(defined);
}

int hard(double soft, double theta) { return soft > theta ? 1 : 0; }

int hard(std::optional<double> soft, double theta) {
  if (!soft.has_value()) return 0;  // silence is not wind
  return hard(*soft, theta);
}

std::vector<FrameScore> score_frames(std::span<const double> ch1,
                                     std::span<const double> ch2,
                                     const StftConfig& stft,
                                     const DetectorConfig& config,
                                     double smoothing) {
  config.validate();
  const std::vector<std::size_t> band =
      band_bins(stft, config.band_lo_hz, config.band_hi_hz);
  const StftResult frames = stft_frames(ch1, ch2, stft);

  std::vector<FrameScore> scores;
  scores.reserve(frames.frames.size());
  PsdState state(smoothing);
  for (std::size_t l = 0; l < frames.frames.size(); ++l) {
    state.update(frames.frames[l]);
    FrameScore s;
    s.frame_index = l;
    s.soft_pr = soft_pr(state, band, config.clamp_soft);
    s.soft_pr_unclamped = config.clamp_soft ? soft_pr(state, band, false)
                                            : s.soft_pr;
    s.soft_msc = soft_msc(state, band);
    s.hard_pr = hard(s.soft_pr, config.threshold);
    s.hard_msc = hard(s.soft_msc, config.threshold);
    scores.push_back(std::move(s));
  }
  return scores;
}

}  // namespace windpr
