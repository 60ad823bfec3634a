// Copyright 2026 The windpr authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "windpr/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "windpr/errors.hpp"
#include "windpr/fft.hpp"
#include "windpr/rng.hpp"

namespace windpr {

namespace {

constexpr double kPi = 3.14159265358979323846;

double rms(std::span<const double> x) {
  double acc = 0.0;
  for (const double v : x) acc += v * v;
  return x.empty() ? 0.0 : std::sqrt(acc / static_cast<double>(x.size()));
}

std::size_t duration_samples(double duration_s, double sample_rate) {
  if (!(duration_s > 0.0))
    throw std::invalid_argument("duration must be > 0 s");
  return static_cast<std::size_t>(std::llround(duration_s * sample_rate));
}

}  // namespace

double default_wind_envelope(double hz) {
  if (hz <= 0.0) return 0.0;
  return 1.0 / std::max(std::min(hz, 1000.0), 50.0);
}

double flat_envelope(double hz) { return hz <= 0.0 ? 0.0 : 1.0; }

Stereo coherent_noise(const CoherenceFn& target, const EnvelopeFn& envelope,
                      double duration_s, double sample_rate, std::size_t hop,
                      std::uint64_t seed) {
  if (!(sample_rate > 0.0))
    throw std::invalid_argument("coherent_noise: sample_rate must be > 0");
  if (hop == 0) throw std::invalid_argument("coherent_noise: hop must be > 0");
  const std::size_t total = duration_samples(duration_s, sample_rate);
  if (total < 4)
    throw std::invalid_argument("coherent_noise: duration too short");

  // Generation period: half the record, rounded down to a whole number of
  // hops so frames in the repeated half land on identical channel-1 content.
  std::size_t period = (total / 2 / hop) * hop;
  if (period < 4) period = total;  // record too short to split; no repeat

  RealFft fft(period);
  const std::size_t bins = fft.bins();
  std::vector<std::complex<double>> v1(bins), v2_coh(bins), v2_orth(bins);
  Rng rng(seed);
  for (std::size_t j = 0; j < bins; ++j) {
    const double hz = static_cast<double>(j) * sample_rate /
                      static_cast<double>(period);
    const std::complex<double> g = target(2.0 * kPi * hz);
    const double mag2 = std::norm(g);
    if (mag2 > 1.0 + 1e-9)
      throw ContractError("coherent_noise: |target coherence| > 1");
    const double env = envelope(hz);
    if (!(env >= 0.0) || !std::isfinite(env))
      throw std::invalid_argument("coherent_noise: envelope must be finite, >= 0");
    const std::complex<double> n1 = std::polar(1.0, rng.uniform(0.0, 2.0 * kPi));
    const std::complex<double> n2 = std::polar(1.0, rng.uniform(0.0, 2.0 * kPi));
    v1[j] = env * n1;
    v2_coh[j] = env * std::conj(g) * n1;
    v2_orth[j] = env * std::sqrt(std::max(0.0, 1.0 - mag2)) * n2;
  }
  // Real signal: DC and Nyquist carry no energy.
  v1[0] = v2_coh[0] = v2_orth[0] = 0.0;
  v1[bins - 1] = v2_coh[bins - 1] = v2_orth[bins - 1] = 0.0;

  std::vector<double> y1(period), y2_coh(period), y2_orth(period);
  fft.inverse(v1, y1);
  fft.inverse(v2_coh, y2_coh);
  fft.inverse(v2_orth, y2_orth);

  Stereo out;
  out.ch1.resize(total);
  out.ch2.resize(total);
  for (std::size_t t = 0; t < total; ++t) {
    const std::size_t j = t % period;
    const double sign = (t % (2 * period)) < period ? 1.0 : -1.0;
    out.ch1[t] = y1[j];
    out.ch2[t] = y2_coh[j] + sign * y2_orth[j];
  }
  const double level = rms(out.ch1);
  if (level > 0.0) {
    const double s = 1.0 / level;
    for (double& v : out.ch1) v *= s;
    for (double& v : out.ch2) v *= s;
  }
  return out;
}

Stereo gen_coherent_noise(const NoiseSpec& spec, const StftConfig& stft) {
  spec.corcos.validate();
  stft.validate();
  const CorcosParams params = spec.corcos;
  const CoherenceFn target = [params](double omega) {
    return coherence(params, omega);
  };
  const EnvelopeFn env =
      spec.envelope ? spec.envelope : EnvelopeFn(default_wind_envelope);
  return coherent_noise(target, env, spec.duration_s, stft.sample_rate,
                        stft.hop, spec.seed);
}

std::vector<double> gen_speech_like(double duration_s, double sample_rate,
                                    std::uint64_t seed) {
  const std::size_t total = duration_samples(duration_s, sample_rate);
  Rng rng(seed);
  constexpr int kHarmonics = 25;
  double harmonic_phase[kHarmonics];
  for (double& p : harmonic_phase) p = rng.uniform(0.0, 2.0 * kPi);
  const double vibrato_phase = rng.uniform(0.0, 2.0 * kPi);
  const double am_phase = rng.uniform(0.0, 2.0 * kPi);

  std::vector<double> x(total);
  double phase = 0.0;
  for (std::size_t n = 0; n < total; ++n) {
    const double t = static_cast<double>(n) / sample_rate;
    const double f0 =
        110.0 + 30.0 * std::sin(2.0 * kPi * 0.4 * t + vibrato_phase);
    phase += 2.0 * kPi * f0 / sample_rate;
    double sample = 0.0;
    for (int h = 1; h <= kHarmonics; ++h)
      sample += std::sin(h * phase + harmonic_phase[h - 1]) /
                static_cast<double>(h);
    // Syllabic 3.1 Hz modulation with a floor so pauses are never digital
    // silence.
    const double am_raw = std::sin(2.0 * kPi * 3.1 * t + am_phase);
    const double am = 0.15 + 0.85 * std::pow(std::max(0.0, am_raw), 1.2);
    x[n] = sample * am + 0.02 * rng.gaussian();
  }
  const double level = rms(x);
  if (level > 0.0)
    for (double& v : x) v *= 0.1 / level;
  return x;
}

Stereo delay_speech(std::span<const double> mono, const SpeechGeometry& geom,
                    const StftConfig& stft) {
  geom.validate();
  stft.validate();
  Stereo out;
  out.ch1.assign(mono.begin(), mono.end());
  const double tau = geom.tdoa();
  // Snap sub-numerical delays (cos(pi/2) rounds to ~6e-17) to the exact-copy
  // broadside path.
  if (std::fabs(tau) * stft.sample_rate < 1e-12 || mono.empty()) {
    out.ch2 = out.ch1;  // broadside: no relative phase difference
    return out;
  }

  const std::size_t n = stft.frame_len;
  const std::size_t hop = stft.hop;
  const std::vector<double> window = make_window(stft);
  RealFft fft(n);

  // Per-bin delay rotor exp(-i omega tau); Nyquist kept real for the c2r
  // inverse transform.
  std::vector<std::complex<double>> rotor(stft.num_bins());
  for (std::size_t k = 0; k < rotor.size(); ++k)
    rotor[k] = std::polar(1.0, -stft.bin_omega(k) * tau);
  rotor[0] = 1.0;
  rotor[rotor.size() - 1] = std::cos(stft.bin_omega(rotor.size() - 1) * tau);

  // Zero-pad one frame on each side so every input sample is fully covered.
  std::vector<double> padded(mono.size() + 2 * n, 0.0);
  std::copy(mono.begin(), mono.end(), padded.begin() + static_cast<long>(n));
  std::vector<double> acc(padded.size(), 0.0);
  std::vector<double> wsum(padded.size(), 0.0);
  std::vector<double> buf(n);
  std::vector<std::complex<double>> spec(stft.num_bins());
  for (std::size_t start = 0; start + n <= padded.size(); start += hop) {
    for (std::size_t i = 0; i < n; ++i) buf[i] = window[i] * padded[start + i];
    fft.forward(buf, spec);
    for (std::size_t k = 0; k < spec.size(); ++k) spec[k] *= rotor[k];
    fft.inverse(spec, buf);
    for (std::size_t i = 0; i < n; ++i) {
      acc[start + i] += buf[i];
      wsum[start + i] += window[i];
    }
  }
  out.ch2.resize(mono.size());
  for (std::size_t i = 0; i < mono.size(); ++i) {
    const double w = wsum[n + i];
    out.ch2[i] = w > 1e-9 ? acc[n + i] / w : 0.0;
  }
  return out;
}

double isnr_noise_gain(std::span<const double> speech_ch1,
                       std::span<const double> noise_ch1, double isnr_db) {
  const double ps = rms(speech_ch1);
  const double pn = rms(noise_ch1);
  if (!(ps > 0.0) || !(pn > 0.0))
    throw std::invalid_argument("isnr: zero-power speech or noise segment");
  return (ps / pn) * std::pow(10.0, -isnr_db / 20.0);
}

Stereo mix_at_isnr(const Stereo& speech, const Stereo& noise, double isnr_db) {
  if (speech.ch1.size() != speech.ch2.size() ||
      noise.ch1.size() != noise.ch2.size())
    throw ContractError("mix_at_isnr: channel length mismatch");
  if (speech.size() == 0 || noise.size() == 0)
    throw std::invalid_argument("mix_at_isnr: empty input");

  // Crop or loop the noise to the speech length.
  Stereo fitted;
  fitted.ch1.resize(speech.size());
  fitted.ch2.resize(speech.size());
  for (std::size_t i = 0; i < speech.size(); ++i) {
    const std::size_t j = i % noise.size();
    fitted.ch1[i] = noise.ch1[j];
    fitted.ch2[i] = noise.ch2[j];
  }

  const double g = isnr_noise_gain(speech.ch1, fitted.ch1, isnr_db);
  Stereo out;
  out.ch1.resize(speech.size());
  out.ch2.resize(speech.size());
  for (std::size_t i = 0; i < speech.size(); ++i) {
    out.ch1[i] = speech.ch1[i] + g * fitted.ch1[i];
    out.ch2[i] = speech.ch2[i] + g * fitted.ch2[i];
  }
  return out;
}

std::vector<Segment> SequenceSpec::default_plan(double segment_s) {
  return {{SegmentKind::kSpeech, segment_s},
          {SegmentKind::kWind, segment_s},
          {SegmentKind::kMixture, segment_s},
          {SegmentKind::kSpeech, segment_s},
          {SegmentKind::kMixture, segment_s}};
}

LabeledStereo build_sequence(const SequenceSpec& spec,
                             const SpeechSource& speech_source,
                             const StftConfig& stft) {
  stft.validate();
  spec.speech.validate();
  spec.wind.validate();
  if (!speech_source)
    throw std::invalid_argument("build_sequence: no speech source");
  const std::vector<Segment> plan =
      spec.plan.empty() ? SequenceSpec::default_plan(2.0) : spec.plan;

  const CorcosParams wind_params = spec.wind;
  const CoherenceFn target = [wind_params](double omega) {
    return coherence(wind_params, omega);
  };
  const EnvelopeFn env =
      spec.envelope ? spec.envelope : EnvelopeFn(default_wind_envelope);

  const auto speech_segment = [&](double dur, std::uint64_t seed) {
    std::vector<double> mono = speech_source(dur, seed);
    const std::size_t want = duration_samples(dur, stft.sample_rate);
    if (mono.size() < want)
      throw std::invalid_argument(
          "build_sequence: insufficient speech source material");
    mono.resize(want);
    return delay_speech(mono, spec.speech, stft);
  };
  const auto wind_segment = [&](double dur, std::uint64_t seed) {
    Stereo w = coherent_noise(target, env, dur, stft.sample_rate, stft.hop,
                              seed);
    for (double& v : w.ch1) v *= 0.1;  // headroom; detectors are scale-free
    for (double& v : w.ch2) v *= 0.1;
    return w;
  };

  LabeledStereo result;
  std::vector<int> sample_labels;
  for (std::size_t i = 0; i < plan.size(); ++i) {
    const Segment& seg = plan[i];
    const std::uint64_t seg_seed = derive_seed(spec.seed, i);
    Stereo audio;
    int label = 0;
    switch (seg.kind) {
      case SegmentKind::kSpeech:
        audio = speech_segment(seg.duration_s, seg_seed);
        label = 0;
        break;
      case SegmentKind::kWind:
        audio = wind_segment(seg.duration_s, seg_seed);
        label = 1;
        break;
      case SegmentKind::kMixture: {
        const Stereo sp = speech_segment(seg.duration_s, derive_seed(seg_seed, 1));
        const Stereo wn = wind_segment(seg.duration_s, derive_seed(seg_seed, 2));
        audio = mix_at_isnr(sp, wn, spec.isnr_db);
        label = 1;
        break;
      }
    }
    result.audio.ch1.insert(result.audio.ch1.end(), audio.ch1.begin(),
                            audio.ch1.end());
    result.audio.ch2.insert(result.audio.ch2.end(), audio.ch2.begin(),
                            audio.ch2.end());
    sample_labels.insert(sample_labels.end(), audio.size(), label);
  }

  // Per-frame labels on the analysis grid; boundary frames take the majority
  // label of their samples, ties resolving to wind.
  const std::size_t frames = frame_count(result.audio.size(), stft);
  result.labels.resize(frames);
  for (std::size_t l = 0; l < frames; ++l) {
    std::size_t ones = 0;
    const std::size_t start = l * stft.hop;
    for (std::size_t i = 0; i < stft.frame_len; ++i)
      ones += static_cast<std::size_t>(sample_labels[start + i]);
    result.labels[l] = (2 * ones >= stft.frame_len) ? 1 : 0;
  }
  return result;
}

}  // namespace windpr
