// Copyright 2026 The windpr authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "windpr/wav.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "windpr/errors.hpp"

namespace windpr {

namespace {

// Little-endian scalar access into a byte buffer.
template <typename T>
T read_le(const unsigned char* p) {
  T v;
  std::memcpy(&v, p, sizeof(T));
  static_assert(std::endian::native == std::endian::little,
                "big-endian hosts need byte swaps here");
  return v;
}

template <typename T>
void append_le(std::string& out, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.append(buf, sizeof(T));
}

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;

}  // namespace

WavData read_wav(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(f)),
                                   std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    throw IoError(path + ": not a RIFF/WAVE file");

  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  bool have_fmt = false;
  const unsigned char* data = nullptr;
  std::size_t data_size = 0;

  // Chunk scan; fmt and data may appear in any order with other chunks
  // interleaved.
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const char* id = reinterpret_cast<const char*>(bytes.data() + pos);
    const std::uint32_t size = read_le<std::uint32_t>(bytes.data() + pos + 4);
    if (pos + 8 + size > bytes.size())
      throw IoError(path + ": truncated chunk");
    const unsigned char* body = bytes.data() + pos + 8;
    if (std::memcmp(id, "fmt ", 4) == 0) {
      if (size < 16) throw IoError(path + ": short fmt chunk");
      format = read_le<std::uint16_t>(body);
      channels = read_le<std::uint16_t>(body + 2);
      rate = read_le<std::uint32_t>(body + 4);
      bits = read_le<std::uint16_t>(body + 14);
      have_fmt = true;
    } else if (std::memcmp(id, "data", 4) == 0) {
      data = body;
      data_size = size;
    }
    pos += 8 + size + (size % 2);  // chunks are word-aligned
  }
  if (!have_fmt || data == nullptr)
    throw IoError(path + ": missing fmt or data chunk");
  if (channels == 0 || rate == 0) throw IoError(path + ": malformed fmt chunk");

  const bool pcm16 = format == kFormatPcm && bits == 16;
  const bool float32 = format == kFormatFloat && bits == 32;
  if (!pcm16 && !float32)
    throw UnsupportedWavError(path + ": unsupported encoding (format=" +
                              std::to_string(format) + ", bits=" +
                              std::to_string(bits) + ")");

  const std::size_t bytes_per_sample = bits / 8;
  const std::size_t stride = bytes_per_sample * channels;
  const std::size_t frames = data_size / stride;

  WavData out;
  out.sample_rate = rate;
  out.channels.assign(channels, std::vector<double>(frames));
  for (std::size_t i = 0; i < frames; ++i) {
    for (std::size_t ch = 0; ch < channels; ++ch) {
      const unsigned char* p = data + i * stride + ch * bytes_per_sample;
      if (pcm16) {
        out.channels[ch][i] =
            static_cast<double>(read_le<std::int16_t>(p)) / 32768.0;
      } else {
        out.channels[ch][i] = static_cast<double>(read_le<float>(p));
      }
    }
  }
  return out;
}

void write_wav(const std::string& path, const WavData& data,
               WavEncoding encoding) {
  if (data.channels.empty() || !(data.sample_rate > 0.0))
    throw std::invalid_argument("write_wav: empty channel set or bad rate");
  const std::size_t frames = data.num_frames();
  for (const auto& ch : data.channels)
    if (ch.size() != frames)
      throw std::invalid_argument("write_wav: ragged channel lengths");

  const std::uint16_t channels = static_cast<std::uint16_t>(data.num_channels());
  const bool pcm = encoding == WavEncoding::kPcm16;
  const std::uint16_t bits = pcm ? 16 : 32;
  const std::uint32_t rate = static_cast<std::uint32_t>(std::llround(data.sample_rate));
  const std::uint16_t block = static_cast<std::uint16_t>(channels * bits / 8);
  const std::uint32_t data_size = static_cast<std::uint32_t>(frames * block);

  std::string out;
  out.reserve(44 + data_size);
  out.append("RIFF");
  append_le<std::uint32_t>(out, 36 + data_size);
  out.append("WAVE");
  out.append("fmt ");
  append_le<std::uint32_t>(out, 16);
  append_le<std::uint16_t>(out, pcm ? kFormatPcm : kFormatFloat);
  append_le<std::uint16_t>(out, channels);
  append_le<std::uint32_t>(out, rate);
  append_le<std::uint32_t>(out, rate * block);
  append_le<std::uint16_t>(out, block);
  append_le<std::uint16_t>(out, bits);
  out.append("data");
  append_le<std::uint32_t>(out, data_size);
  for (std::size_t i = 0; i < frames; ++i) {
    for (std::size_t ch = 0; ch < channels; ++ch) {
      const double v = data.channels[ch][i];
      if (pcm) {
        const double clipped = std::clamp(v, -1.0, 32767.0 / 32768.0);
        append_le<std::int16_t>(
            out, static_cast<std::int16_t>(std::lrint(clipped * 32768.0)));
      } else {
        append_le<float>(out, static_cast<float>(v));
      }
    }
  }

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot create " + path);
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!f) throw IoError("write failed for " + path);
}

}  // namespace windpr
