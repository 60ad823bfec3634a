// Copyright 2026 The windpr authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef WINDPR_WAV_HPP_
#define WINDPR_WAV_HPP_

#include <cstddef>
#include <string>
#include <vector>

namespace windpr {

struct WavData {
  double sample_rate = 0.0;
  std::vector<std::vector<double>> channels;  // deinterleaved, nominal [-1,1]

  std::size_t num_channels() const { return channels.size(); }
  std::size_t num_frames() const {
    return channels.empty() ? 0 : channels.front().size();
  }
};

enum class WavEncoding { kPcm16, kFloat32 };

// RIFF/WAVE reader with chunk scanning. Accepts 16-bit PCM and 32-bit float;
// other encodings raise UnsupportedWavError, malformed or truncated files
// raise IoError.
WavData read_wav(const std::string& path);

// Deterministic writer (canonical fmt+data layout, no metadata chunks).
// kPcm16 clips to [-1, 1) before quantizing.
void write_wav(const std::string& path, const WavData& data,
               WavEncoding encoding = WavEncoding::kFloat32);

}  // namespace windpr

#endif  // WINDPR_WAV_HPP_
