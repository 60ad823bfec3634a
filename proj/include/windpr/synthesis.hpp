// Copyright 2026 The windpr authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef WINDPR_SYNTHESIS_HPP_
#define WINDPR_SYNTHESIS_HPP_

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "windpr/corcos.hpp"
#include "windpr/stft.hpp"

namespace windpr {

struct Stereo {
  std::vector<double> ch1, ch2;
  std::size_t size() const { return ch1.size(); }
};

// Target coherence as a function of angular frequency [rad/s].
using CoherenceFn = std::function<std::complex<double>(double omega)>;
// Amplitude gain as a function of frequency [Hz].
using EnvelopeFn = std::function<double(double hz)>;

// 1/f amplitude, flat below 50 Hz and above 1 kHz, zero at DC. Wind energy
// concentrates in the low band; the exact spectrum is configuration, not a
// modelled quantity.
double default_wind_envelope(double hz);
double flat_envelope(double hz);

struct NoiseSpec {
  CorcosParams corcos;
  double duration_s = 10.0;
  std::uint64_t seed = 0;
  EnvelopeFn envelope;  // empty -> default_wind_envelope
};

// Two-channel noise whose measured complex coherence matches `target` bin by
// bin: V1 = env*N1, V2 = env*(conj(target)*N1 + sqrt(1-|target|^2)*N2) on a
// full-signal DFT grid with unit-magnitude random-phase N1, N2. The second
// half of the record repeats the channel-1 content with the orthogonal
// component sign-flipped (hop-aligned period), which cancels the
// realization's coherent-by-orthogonal cross terms in frame-averaged spectra
// and makes the measured statistics converge at O(1/duration). Channel 1 is
// normalized to unit RMS, channel 2 by the same scalar. Throws ContractError
// if |target| > 1 at any bin.
Stereo coherent_noise(const CoherenceFn& target, const EnvelopeFn& envelope,
                      double duration_s, double sample_rate, std::size_t hop,
                      std::uint64_t seed);

// coherent_noise driven by the Corcos model of spec.corcos.
Stereo gen_coherent_noise(const NoiseSpec& spec, const StftConfig& stft);

// Deterministic speech stand-in: harmonic source with wandering f0, syllabic
// amplitude modulation and a low noise floor. RMS 0.1.
std::vector<double> gen_speech_like(double duration_s, double sample_rate,
                                    std::uint64_t seed);

// Channel 1 = input; channel 2 = the input delayed by geom.tdoa() via
// per-bin phase multiplication exp(-i omega tau) in the STFT domain
// (Hann-windowed overlap-add). tau = 0 returns an exact copy.
Stereo delay_speech(std::span<const double> mono, const SpeechGeometry& geom,
                    const StftConfig& stft);

// Scalar gain g such that 10*log10(P_speech/(g^2*P_noise)) = isnr_db, powers
// measured on channel 1. Zero-power input is a configuration error.
double isnr_noise_gain(std::span<const double> speech_ch1,
                       std::span<const double> noise_ch1, double isnr_db);

// speech + g*noise per channel, g from isnr_noise_gain. Noise longer than
// speech is cropped, shorter is looped.
Stereo mix_at_isnr(const Stereo& speech, const Stereo& noise, double isnr_db);

enum class SegmentKind { kSpeech, kWind, kMixture };

struct Segment {
  SegmentKind kind = SegmentKind::kSpeech;
  double duration_s = 2.0;
};

// Provider of mono speech at the pipeline sample rate. Must return at least
// round(duration_s * sample_rate) samples.
using SpeechSource =
    std::function<std::vector<double>(double duration_s, std::uint64_t seed)>;

struct SequenceSpec {
  std::vector<Segment> plan;  // empty -> default_plan(2.0)
  double isnr_db = -5.0;
  SpeechGeometry speech;  // default broadside
  CorcosParams wind;
  EnvelopeFn envelope;  // wind envelope; empty -> default
  std::uint64_t seed = 0;

  // speech / wind / mixture / speech / mixture.
  static std::vector<Segment> default_plan(double segment_s);
};

struct LabeledStereo {
  Stereo audio;
  std::vector<int> labels;  // per STFT frame; 1 = wind or mixture present
};

// Concatenated segments per the plan with per-frame ground-truth labels on
// the STFT grid of `stft`. Frames straddling a boundary take the label of the
// majority of their samples (ties resolve to 1).
LabeledStereo build_sequence(const SequenceSpec& spec,
                             const SpeechSource& speech_source,
                             const StftConfig& stft);

}  // namespace windpr

#endif  // WINDPR_SYNTHESIS_HPP_
