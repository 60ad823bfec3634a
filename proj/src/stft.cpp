// Copyright 2026 The windpr authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "windpr/stft.hpp"

#include <cmath>
#include <stdexcept>

#include "windpr/errors.hpp"
#include "windpr/fft.hpp"

namespace windpr {

void StftConfig::validate() const {
  if (!(sample_rate > 0.0))
    throw std::invalid_argument("StftConfig: sample_rate must be > 0");
  if (frame_len < 2)
    throw std::invalid_argument("StftConfig: frame_len must be >= 2");
  if (hop == 0 || hop > frame_len)
    throw std::invalid_argument("StftConfig: need 0 < hop <= frame_len");
}

StftConfig StftConfig::from_frame_ms(double sample_rate, double frame_ms,
                                     double overlap) {
  if (!(frame_ms > 0.0))
    throw std::invalid_argument("StftConfig: frame_ms must be > 0");
  if (!(overlap >= 0.0) || !(overlap < 1.0))
    throw std::invalid_argument("StftConfig: overlap must be in [0,1)");
  StftConfig cfg;
  cfg.sample_rate = sample_rate;
  cfg.frame_len =
      static_cast<std::size_t>(std::llround(frame_ms / 1000.0 * sample_rate));
  const double hop = std::round(static_cast<double>(cfg.frame_len) * (1.0 - overlap));
  cfg.hop = static_cast<std::size_t>(hop < 1.0 ? 1.0 : hop);
  cfg.validate();
  return cfg;
}

std::size_t frame_count(std::size_t num_samples, const StftConfig& config) {
  if (num_samples < config.frame_len) return 0;
  return (num_samples - config.frame_len) / config.hop + 1;
}

std::vector<double> make_window(const StftConfig& config) {
  std::vector<double> w(config.frame_len, 1.0);
  if (config.window == StftConfig::Window::kHann) {
    const double n = static_cast<double>(config.frame_len);
    for (std::size_t i = 0; i < config.frame_len; ++i)
      w[i] = 0.5 - 0.5 * std::cos(2.0 * 3.14159265358979323846 *
                                  static_cast<double>(i) / n);
  }
  return w;
}

StftResult stft_frames(std::span<const double> ch1, std::span<const double> ch2,
                       const StftConfig& config) {
  config.validate();
  if (ch1.size() != ch2.size())
    throw ContractError("stft_frames: channel length mismatch");

  StftResult result;
  const std::size_t count = frame_count(ch1.size(), config);
  if (count == 0) {
    result.input_too_short = true;
    return result;
  }

  const std::vector<double> window = make_window(config);
  RealFft fft(config.frame_len);
  std::vector<double> buf(config.frame_len);
  result.frames.resize(count);
  for (std::size_t l = 0; l < count; ++l) {
    FramePair& frame = result.frames[l];
    frame.x1.resize(config.num_bins());
    frame.x2.resize(config.num_bins());
    const std::size_t start = l * config.hop;
    for (std::size_t i = 0; i < config.frame_len; ++i)
      buf[i] = window[i] * ch1[start + i];
    fft.forward(buf, frame.x1);
    for (std::size_t i = 0; i < config.frame_len; ++i)
      buf[i] = window[i] * ch2[start + i];
    fft.forward(buf, frame.x2);
  }
  return result;
}

}  // namespace windpr
