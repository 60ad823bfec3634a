// Copyright 2026 The windpr authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef WINDPR_STFT_HPP_
#define WINDPR_STFT_HPP_

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace windpr {

struct StftConfig {
  double sample_rate = 16000.0;
  std::size_t frame_len = 2048;  // 128 ms at 16 kHz
  std::size_t hop = 512;         // 75% overlap
  enum class Window { kHann, kRect };
  Window window = Window::kHann;

  std::size_t num_bins() const { return frame_len / 2 + 1; }
  double bin_hz(std::size_t k) const {
    return static_cast<double>(k) * sample_rate / static_cast<double>(frame_len);
  }
  double bin_omega(std::size_t k) const {
    return 2.0 * 3.14159265358979323846 * bin_hz(k);
  }

  void validate() const;  // throws std::invalid_argument

  // frame_len = round(frame_ms/1000 * fs), hop = round(frame_len*(1-overlap)).
  static StftConfig from_frame_ms(double sample_rate, double frame_ms,
                                  double overlap);
};

// One analysis frame of the two-channel stream: complex spectra per bin.
struct FramePair {
  std::vector<std::complex<double>> x1, x2;
};

struct StftResult {
  std::vector<FramePair> frames;
  bool input_too_short = false;  // warning: signal shorter than one frame
};

// Number of frames floor((n - frame_len)/hop) + 1, or 0 when n < frame_len.
std::size_t frame_count(std::size_t num_samples, const StftConfig& config);

std::vector<double> make_window(const StftConfig& config);

// Windowed spectra of both channels for every complete frame. Channels must
// have equal length.
StftResult stft_frames(std::span<const double> ch1, std::span<const double> ch2,
                       const StftConfig& config);

}  // namespace windpr

#endif  // WINDPR_STFT_HPP_
