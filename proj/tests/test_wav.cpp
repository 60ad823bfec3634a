// Copyright 2026 The windpr authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "windpr/wav.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "windpr/errors.hpp"
#include "windpr/rng.hpp"

using namespace windpr;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

WavData random_stereo(std::size_t frames, std::uint64_t seed) {
  Rng rng(seed);
  WavData w;
  w.sample_rate = 16000.0;
  w.channels.assign(2, std::vector<double>(frames));
  for (auto& ch : w.channels)
    for (double& v : ch) v = rng.uniform(-0.9, 0.9);
  return w;
}

}  // namespace

TEST_CASE("float32 round trip is exact at single precision") {
  const std::string path = temp_path("windpr_test_f32.wav");
  const WavData w = random_stereo(1000, 1);
  write_wav(path, w, WavEncoding::kFloat32);
  const WavData r = read_wav(path);
  CHECK(r.sample_rate == 16000.0);
  REQUIRE(r.num_channels() == 2);
  REQUIRE(r.num_frames() == 1000);
  for (std::size_t ch = 0; ch < 2; ++ch)
    for (std::size_t i = 0; i < 1000; ++i)
      CHECK(r.channels[ch][i] ==
            static_cast<double>(static_cast<float>(w.channels[ch][i])));
  std::remove(path.c_str());
}

TEST_CASE("pcm16 round trip within quantization step") {
  const std::string path = temp_path("windpr_test_p16.wav");
  const WavData w = random_stereo(500, 2);
  write_wav(path, w, WavEncoding::kPcm16);
  const WavData r = read_wav(path);
  REQUIRE(r.num_frames() == 500);
  for (std::size_t ch = 0; ch < 2; ++ch)
    for (std::size_t i = 0; i < 500; ++i)
      CHECK(std::abs(r.channels[ch][i] - w.channels[ch][i]) <= 1.0 / 32768.0);
  std::remove(path.c_str());
}

TEST_CASE("missing and malformed files raise IoError") {
  CHECK_THROWS_AS(read_wav(temp_path("windpr_no_such_file.wav")), IoError);

  const std::string path = temp_path("windpr_test_bad.wav");
  {
    std::ofstream f(path, std::ios::binary);
    f << "RIFF....WAV";  // truncated header
  }
  CHECK_THROWS_AS(read_wav(path), IoError);
  {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << "NOT A WAVE FILE AT ALL......";
  }
  CHECK_THROWS_AS(read_wav(path), IoError);
  std::remove(path.c_str());
}

TEST_CASE("truncated data chunk raises IoError") {
  const std::string good = temp_path("windpr_test_trunc_src.wav");
  const std::string bad = temp_path("windpr_test_trunc.wav");
  write_wav(good, random_stereo(100, 3), WavEncoding::kPcm16);
  {
    std::ifstream in(good, std::ios::binary);
    std::vector<char> bytes((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
    bytes.resize(bytes.size() - 37);  // cut into the data chunk
    std::ofstream out(bad, std::ios::binary);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  }
  CHECK_THROWS_AS(read_wav(bad), IoError);
  std::remove(good.c_str());
  std::remove(bad.c_str());
}

TEST_CASE("unsupported encodings are distinguished from I/O failures") {
  const std::string src = temp_path("windpr_test_enc_src.wav");
  const std::string bad = temp_path("windpr_test_enc.wav");
  write_wav(src, random_stereo(64, 4), WavEncoding::kPcm16);
  {
    std::ifstream in(src, std::ios::binary);
    std::vector<char> bytes((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
    bytes[34] = 24;  // bits-per-sample 16 -> 24 inside the fmt chunk
    std::ofstream out(bad, std::ios::binary);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  }
  CHECK_THROWS_AS(read_wav(bad), UnsupportedWavError);
  std::remove(src.c_str());
  std::remove(bad.c_str());
}

TEST_CASE("mono files keep one channel") {
  const std::string path = temp_path("windpr_test_mono.wav");
  WavData w;
  w.sample_rate = 16000.0;
  w.channels = {std::vector<double>(256, 0.25)};
  write_wav(path, w, WavEncoding::kFloat32);
  const WavData r = read_wav(path);
  CHECK(r.num_channels() == 1);
  CHECK(r.num_frames() == 256);
  std::remove(path.c_str());
}

TEST_CASE("writer rejects ragged or empty input") {
  WavData w;
  w.sample_rate = 16000.0;
  CHECK_THROWS_AS(write_wav(temp_path("x.wav"), w), std::invalid_argument);
  w.channels = {std::vector<double>(10), std::vector<double>(11)};
  CHECK_THROWS_AS(write_wav(temp_path("x.wav"), w), std::invalid_argument);
}
