// Copyright 2026 The windpr authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)
//
// Dual-microphone wind-noise analysis tool.
//
//   windpr theory  — closed-form wind/speech power-ratio curves as CSV
//   windpr synth   — coherence-matched wind noise or a labelled 5-segment
//                    speech/wind/mixture sequence as WAV + label sidecar
//   windpr detect  — per-frame soft/hard PR and MSC detector scores for a
//                    stereo WAV, as CSV
//   windpr roc     — multi-trial ROC comparison of the PR and MSC detectors
//
// Exit codes: 0 success, 2 usage, 3 I/O, 4 numeric/contract.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "windpr/corcos.hpp"
#include "windpr/detector.hpp"
#include "windpr/errors.hpp"
#include "windpr/evaluation.hpp"
#include "windpr/psd.hpp"
#include "windpr/rng.hpp"
#include "windpr/stft.hpp"
#include "windpr/synthesis.hpp"
#include "windpr/wav.hpp"

namespace {

using nlohmann::json;

constexpr double kDegToRad = 3.14159265358979323846 / 180.0;

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

struct BandHz {
  double lo = 0.0, hi = 500.0;
};

BandHz parse_band(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw CLI::ValidationError("--band-hz", "expected LO:HI, e.g. 0:500");
  BandHz band;
  try {
    band.lo = std::stod(text.substr(0, colon));
    band.hi = std::stod(text.substr(colon + 1));
  } catch (const std::exception&) {
    throw CLI::ValidationError("--band-hz", "expected numeric LO:HI");
  }
  return band;
}

// Shared physical/front-end flags.
struct CommonOpts {
  double mic_distance_m = 0.004;
  double wind_doa_deg = 0.0;
  double wind_speed_ms = 1.8;
  double alpha1 = 0.125;
  double alpha2 = 0.7;
  double speech_doa_deg = 90.0;
  double sound_speed = 343.0;
  double sample_rate = 16000.0;
  double frame_ms = 128.0;
  double overlap = 0.75;
  double smoothing = 0.5;
  std::string band = "0:500";
  double threshold = 0.5;
  bool no_clamp = false;
  std::uint64_t seed = 0;

  windpr::CorcosParams corcos() const {
    return {mic_distance_m, wind_doa_deg * kDegToRad, wind_speed_ms, alpha1,
            alpha2};
  }
  windpr::SpeechGeometry speech() const {
    return {mic_distance_m, speech_doa_deg * kDegToRad, sound_speed};
  }
  windpr::StftConfig stft() const {
    return windpr::StftConfig::from_frame_ms(sample_rate, frame_ms, overlap);
  }
  windpr::DetectorConfig detector() const {
    const BandHz b = parse_band(band);
    return {b.lo, b.hi, threshold, !no_clamp};
  }
};

void add_wind_flags(CLI::App* cmd, CommonOpts* o) {
  cmd->add_option("--mic-distance-m", o->mic_distance_m, "Microphone spacing [m]")
      ->capture_default_str();
  cmd->add_option("--wind-doa-deg", o->wind_doa_deg,
                  "Wind stream DOA w.r.t. the mic axis [deg]")
      ->capture_default_str();
  cmd->add_option("--wind-speed-ms", o->wind_speed_ms,
                  "Free-field wind speed [m/s]")
      ->capture_default_str();
  cmd->add_option("--alpha1", o->alpha1, "Longitudinal coherence decay rate")
      ->capture_default_str();
  cmd->add_option("--alpha2", o->alpha2, "Lateral coherence decay rate")
      ->capture_default_str();
}

void add_speech_flags(CLI::App* cmd, CommonOpts* o) {
  cmd->add_option("--speech-doa-deg", o->speech_doa_deg, "Speech DOA [deg]")
      ->capture_default_str();
  cmd->add_option("--sound-speed", o->sound_speed, "Speed of sound [m/s]")
      ->capture_default_str();
}

void add_frontend_flags(CLI::App* cmd, CommonOpts* o) {
  cmd->add_option("--sample-rate", o->sample_rate, "Sample rate [Hz]")
      ->capture_default_str();
  cmd->add_option("--frame-ms", o->frame_ms, "Analysis frame length [ms]")
      ->capture_default_str();
  cmd->add_option("--overlap", o->overlap, "Frame overlap fraction")
      ->capture_default_str();
  cmd->add_option("--smoothing", o->smoothing,
                  "Recursive periodogram smoothing constant beta")
      ->capture_default_str();
}

void add_detector_flags(CLI::App* cmd, CommonOpts* o) {
  cmd->add_option("--band-hz", o->band, "Detector band LO:HI [Hz]")
      ->capture_default_str();
  cmd->add_option("--threshold", o->threshold, "Hard detection threshold theta")
      ->capture_default_str();
  cmd->add_flag("--no-clamp", o->no_clamp,
                "Do not clip per-bin power ratios to [0,1] before averaging");
}

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw windpr::IoError("cannot create " + path);
  return f;
}

std::string echo_line(const std::string& sub,
                      const std::vector<std::pair<std::string, std::string>>& kv) {
  std::ostringstream os;
  os << "# windpr " << sub;
  for (const auto& [k, v] : kv) os << ' ' << k << '=' << v;
  os << '\n';
  return os.str();
}

windpr::EnvelopeFn envelope_by_name(const std::string& name) {
  if (name == "wind") return windpr::default_wind_envelope;
  if (name == "flat") return windpr::flat_envelope;
  throw CLI::ValidationError("--envelope", "must be 'wind' or 'flat'");
}

// ---------------------------------------------------------------- theory ---

struct TheoryOpts {
  CommonOpts common;
  double fmin = 0.0, fmax = 8000.0, fstep = 1.0;
  std::string out;
};

int run_theory(const TheoryOpts& o) {
  if (!(o.fstep > 0.0) || !(o.fmax > o.fmin))
    throw std::invalid_argument("theory: empty frequency grid");
  const windpr::CorcosParams wind = o.common.corcos();
  const windpr::SpeechGeometry speech = o.common.speech();
  wind.validate();
  speech.validate();

  std::ostringstream os;
  os << echo_line("theory",
                  {{"d", fmt(wind.d)},
                   {"wind_doa_deg", fmt(o.common.wind_doa_deg)},
                   {"U", fmt(wind.U)},
                   {"alpha1", fmt(wind.alpha1)},
                   {"alpha2", fmt(wind.alpha2)},
                   {"speech_doa_deg", fmt(o.common.speech_doa_deg)},
                   {"c", fmt(speech.c)},
                   {"fmin", fmt(o.fmin)},
                   {"fmax", fmt(o.fmax)},
                   {"fstep", fmt(o.fstep)}});
  os << "frequency_hz,pr_wind,pr_speech\n";
  for (double f = o.fmin; f <= o.fmax + 1e-9; f += o.fstep) {
    const double omega = 2.0 * 3.14159265358979323846 * f;
    os << fmt(f) << ',' << fmt(windpr::pr_wind(wind, omega)) << ','
       << fmt(windpr::pr_speech(speech, omega)) << '\n';
  }
  if (o.out.empty()) {
    std::cout << os.str();
  } else {
    open_output(o.out) << os.str();
  }
  return 0;
}

// ----------------------------------------------------------------- synth ---

struct SynthOpts {
  CommonOpts common;
  std::string mode = "sequence";
  double duration_s = 10.0;
  double segment_s = 2.0;
  double isnr_db = -5.0;
  std::string envelope = "wind";
  std::string speech_wav;
  std::string out;
  std::string labels;
  std::string encoding = "float32";
};

windpr::SpeechSource file_speech_source(const std::string& path,
                                        double sample_rate) {
  const windpr::WavData wav = windpr::read_wav(path);
  if (wav.num_channels() != 1)
    throw std::invalid_argument(path + ": speech WAV must be mono");
  if (wav.sample_rate != sample_rate)
    throw std::invalid_argument(path + ": speech WAV rate must match --sample-rate");
  if (wav.num_frames() == 0)
    throw std::invalid_argument(path + ": speech WAV is empty");
  std::vector<double> samples = wav.channels.front();
  return [samples = std::move(samples), sample_rate](
             double dur, std::uint64_t seed) {
    windpr::Rng rng(seed);
    const std::size_t want =
        static_cast<std::size_t>(std::llround(dur * sample_rate));
    const std::size_t offset = rng.raw() % samples.size();
    std::vector<double> out(want);
    for (std::size_t i = 0; i < want; ++i)
      out[i] = samples[(offset + i) % samples.size()];
    return out;
  };
}

windpr::SpeechSource builtin_speech_source(double sample_rate) {
  return [sample_rate](double dur, std::uint64_t seed) {
    return windpr::gen_speech_like(dur, sample_rate, seed);
  };
}

void write_labels(const std::string& path, const std::string& header,
                  const std::vector<int>& labels) {
  std::ofstream f = open_output(path);
  f << header << "frame_index,label\n";
  for (std::size_t l = 0; l < labels.size(); ++l)
    f << l << ',' << labels[l] << '\n';
}

int run_synth(const SynthOpts& o) {
  const windpr::StftConfig stft = o.common.stft();
  const windpr::WavEncoding enc = [&] {
    if (o.encoding == "float32") return windpr::WavEncoding::kFloat32;
    if (o.encoding == "pcm16") return windpr::WavEncoding::kPcm16;
    throw CLI::ValidationError("--encoding", "must be 'float32' or 'pcm16'");
  }();
  const std::string labels_path =
      o.labels.empty() ? o.out + ".labels.csv" : o.labels;

  windpr::Stereo audio;
  std::vector<int> labels;
  std::vector<std::pair<std::string, std::string>> echo = {
      {"mode", o.mode},
      {"seed", std::to_string(o.common.seed)},
      {"fs", fmt(stft.sample_rate)},
      {"frame_len", std::to_string(stft.frame_len)},
      {"hop", std::to_string(stft.hop)},
      {"d", fmt(o.common.mic_distance_m)},
      {"wind_doa_deg", fmt(o.common.wind_doa_deg)},
      {"U", fmt(o.common.wind_speed_ms)},
      {"envelope", o.envelope}};

  if (o.mode == "noise") {
    windpr::NoiseSpec spec;
    spec.corcos = o.common.corcos();
    spec.duration_s = o.duration_s;
    spec.seed = o.common.seed;
    spec.envelope = envelope_by_name(o.envelope);
    audio = windpr::gen_coherent_noise(spec, stft);
    for (double& v : audio.ch1) v *= 0.1;  // headroom
    for (double& v : audio.ch2) v *= 0.1;
    labels.assign(windpr::frame_count(audio.size(), stft), 1);
    echo.push_back({"duration_s", fmt(o.duration_s)});
  } else if (o.mode == "sequence") {
    windpr::SequenceSpec spec;
    spec.plan = windpr::SequenceSpec::default_plan(o.segment_s);
    spec.isnr_db = o.isnr_db;
    spec.speech = o.common.speech();
    spec.wind = o.common.corcos();
    spec.envelope = envelope_by_name(o.envelope);
    spec.seed = o.common.seed;
    const windpr::SpeechSource source =
        o.speech_wav.empty() ? builtin_speech_source(stft.sample_rate)
                             : file_speech_source(o.speech_wav, stft.sample_rate);
    windpr::LabeledStereo seq = windpr::build_sequence(spec, source, stft);
    audio = std::move(seq.audio);
    labels = std::move(seq.labels);
    echo.push_back({"segment_s", fmt(o.segment_s)});
    echo.push_back({"isnr_db", fmt(o.isnr_db)});
    echo.push_back({"speech_doa_deg", fmt(o.common.speech_doa_deg)});
    echo.push_back(
        {"speech", o.speech_wav.empty() ? std::string("builtin") : o.speech_wav});
  } else {
    throw CLI::ValidationError("--mode", "must be 'noise' or 'sequence'");
  }

  windpr::WavData wav;
  wav.sample_rate = stft.sample_rate;
  wav.channels = {std::move(audio.ch1), std::move(audio.ch2)};
  windpr::write_wav(o.out, wav, enc);
  write_labels(labels_path, echo_line("synth", echo), labels);
  return 0;
}

// ---------------------------------------------------------------- detect ---

struct DetectOpts {
  CommonOpts common;
  std::string in;
  std::string out;
};

int run_detect(const DetectOpts& o) {
  const windpr::WavData wav = windpr::read_wav(o.in);
  if (wav.num_channels() != 2)
    throw std::invalid_argument(o.in + ": detect requires a stereo (2-channel) WAV");
  CommonOpts common = o.common;
  common.sample_rate = wav.sample_rate;
  const windpr::StftConfig stft = common.stft();
  const windpr::DetectorConfig det = common.detector();

  std::ostringstream os;
  os << echo_line("detect",
                  {{"in", o.in},
                   {"fs", fmt(stft.sample_rate)},
                   {"frame_len", std::to_string(stft.frame_len)},
                   {"hop", std::to_string(stft.hop)},
                   {"smoothing", fmt(common.smoothing)},
                   {"band_hz", common.band},
                   {"threshold", fmt(det.threshold)},
                   {"clamp", det.clamp_soft ? "1" : "0"}});
  os << "frame_index,time_s,soft_pr,hard_pr,soft_msc,hard_msc\n";

  if (windpr::frame_count(wav.num_frames(), stft) == 0) {
    std::cerr << "windpr detect: warning: input shorter than one frame, "
                 "no scores emitted\n";
  } else {
    const std::vector<windpr::FrameScore> scores = windpr::score_frames(
        wav.channels[0], wav.channels[1], stft, det, common.smoothing);
    const double nan = std::nan("");
    for (const windpr::FrameScore& s : scores) {
      const double t =
          static_cast<double>(s.frame_index) * stft.hop / stft.sample_rate;
      os << s.frame_index << ',' << fmt(t) << ','
         << fmt(s.soft_pr.value_or(nan)) << ',' << s.hard_pr << ','
         << fmt(s.soft_msc.value_or(nan)) << ',' << s.hard_msc << '\n';
    }
  }
  if (o.out.empty()) {
    std::cout << os.str();
  } else {
    open_output(o.out) << os.str();
  }
  return 0;
}

// ------------------------------------------------------------------- roc ---

struct RocOpts {
  CommonOpts common;
  std::size_t trials = 10;
  std::size_t thresholds = 20;
  double segment_s = 2.0;
  double isnr_db = -5.0;
  std::string envelope = "wind";
  std::string speech_dir;
  std::string out_csv = "roc.csv";
  std::string out_json = "roc_summary.json";
};

windpr::SpeechSource pool_speech_source(const std::string& dir,
                                        double sample_rate) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir))
    throw std::invalid_argument(dir + ": not a directory");
  std::vector<std::string> paths;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".wav")
      paths.push_back(entry.path().string());
  }
  std::sort(paths.begin(), paths.end());
  if (paths.empty())
    throw std::invalid_argument(dir + ": speech pool is empty");
  std::vector<std::vector<double>> items;
  for (const std::string& p : paths) {
    const windpr::WavData wav = windpr::read_wav(p);
    if (wav.num_channels() != 1)
      throw std::invalid_argument(p + ": speech pool WAVs must be mono");
    if (wav.sample_rate != sample_rate)
      throw std::invalid_argument(p + ": speech pool rate must match --sample-rate");
    if (wav.num_frames() > 0) items.push_back(wav.channels.front());
  }
  if (items.empty())
    throw std::invalid_argument(dir + ": speech pool has no usable items");
  return [items = std::move(items), sample_rate](double dur,
                                                 std::uint64_t seed) {
    windpr::Rng rng(seed);
    const std::vector<double>& item = items[rng.raw() % items.size()];
    const std::size_t want =
        static_cast<std::size_t>(std::llround(dur * sample_rate));
    const std::size_t offset = rng.raw() % item.size();
    std::vector<double> out(want);
    for (std::size_t i = 0; i < want; ++i)
      out[i] = item[(offset + i) % item.size()];
    return out;
  };
}

int run_roc(const RocOpts& o) {
  const windpr::StftConfig stft = o.common.stft();
  const windpr::DetectorConfig det = o.common.detector();

  windpr::SequenceSpec spec;
  spec.plan = windpr::SequenceSpec::default_plan(o.segment_s);
  spec.isnr_db = o.isnr_db;
  spec.speech = o.common.speech();
  spec.wind = o.common.corcos();
  spec.envelope = envelope_by_name(o.envelope);

  const windpr::SpeechSource source =
      o.speech_dir.empty() ? builtin_speech_source(stft.sample_rate)
                           : pool_speech_source(o.speech_dir, stft.sample_rate);
  const std::vector<double> thetas =
      windpr::default_threshold_grid(o.thresholds);

  const windpr::RocSummary summary =
      windpr::run_trials(o.trials, spec, det, stft, o.common.smoothing, source,
                         thetas, o.common.seed);

  const std::vector<std::pair<std::string, std::string>> echo = {
      {"trials", std::to_string(o.trials)},
      {"seed", std::to_string(o.common.seed)},
      {"isnr_db", fmt(o.isnr_db)},
      {"segment_s", fmt(o.segment_s)},
      {"band_hz", o.common.band},
      {"smoothing", fmt(o.common.smoothing)},
      {"thresholds", std::to_string(o.thresholds)},
      {"d", fmt(o.common.mic_distance_m)},
      {"wind_doa_deg", fmt(o.common.wind_doa_deg)},
      {"U", fmt(o.common.wind_speed_ms)},
      {"speech_doa_deg", fmt(o.common.speech_doa_deg)},
      {"speech", o.speech_dir.empty() ? std::string("builtin") : o.speech_dir}};

  std::ofstream csv = open_output(o.out_csv);
  csv << echo_line("roc", echo);
  csv << "theta,fpr_pr,tpr_pr,fpr_msc,tpr_msc\n";
  for (std::size_t t = 0; t < thetas.size(); ++t) {
    csv << fmt(thetas[t]) << ',' << fmt(summary.pr_mean[t].false_positive_rate)
        << ',' << fmt(summary.pr_mean[t].true_positive_rate) << ','
        << fmt(summary.msc_mean[t].false_positive_rate) << ','
        << fmt(summary.msc_mean[t].true_positive_rate) << '\n';
  }
  csv.close();

  json j;
  j["auc_pr"] = summary.auc_pr;
  j["auc_msc"] = summary.auc_msc;
  json seeds = json::array();
  for (const windpr::TrialResult& trial : summary.trials)
    seeds.push_back(trial.seed);
  j["trial_seeds"] = seeds;
  json cfg;
  for (const auto& [k, v] : echo) cfg[k] = v;
  cfg["frame_len"] = stft.frame_len;
  cfg["hop"] = stft.hop;
  cfg["fs"] = stft.sample_rate;
  cfg["threshold_grid"] = thetas;
  j["config"] = cfg;
  open_output(o.out_json) << j.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dual-microphone wind-noise power-ratio toolkit"};
  app.require_subcommand(1);

  TheoryOpts theory;
  theory.common.speech_doa_deg = 0.0;  // endfire speech, as in the PR curves
  CLI::App* theory_cmd = app.add_subcommand(
      "theory", "Closed-form wind/speech power-ratio curves");
  add_wind_flags(theory_cmd, &theory.common);
  add_speech_flags(theory_cmd, &theory.common);
  theory_cmd->add_option("--fmin", theory.fmin, "Grid start [Hz]")
      ->capture_default_str();
  theory_cmd->add_option("--fmax", theory.fmax, "Grid end [Hz]")
      ->capture_default_str();
  theory_cmd->add_option("--fstep", theory.fstep, "Grid step [Hz]")
      ->capture_default_str();
  theory_cmd->add_option("--out", theory.out, "Output CSV (stdout if omitted)");

  SynthOpts synth;
  CLI::App* synth_cmd = app.add_subcommand(
      "synth", "Synthesize wind noise or a labelled evaluation sequence");
  add_wind_flags(synth_cmd, &synth.common);
  add_speech_flags(synth_cmd, &synth.common);
  add_frontend_flags(synth_cmd, &synth.common);
  synth_cmd->add_option("--mode", synth.mode, "'sequence' or 'noise'")
      ->capture_default_str();
  synth_cmd->add_option("--duration-s", synth.duration_s,
                        "Noise duration [s] (noise mode)")
      ->capture_default_str();
  synth_cmd->add_option("--segment-s", synth.segment_s,
                        "Segment duration [s] (sequence mode)")
      ->capture_default_str();
  synth_cmd->add_option("--isnr-db", synth.isnr_db, "Mixture input SNR [dB]")
      ->capture_default_str();
  synth_cmd->add_option("--envelope", synth.envelope,
                        "Wind spectral envelope: 'wind' or 'flat'")
      ->capture_default_str();
  synth_cmd->add_option("--speech-wav", synth.speech_wav,
                        "Mono speech WAV (builtin generator if omitted)");
  synth_cmd->add_option("--seed", synth.common.seed, "RNG seed")
      ->capture_default_str();
  synth_cmd->add_option("--encoding", synth.encoding, "'float32' or 'pcm16'")
      ->capture_default_str();
  synth_cmd->add_option("--out", synth.out, "Output WAV path")->required();
  synth_cmd->add_option("--labels", synth.labels,
                        "Label CSV path (default <out>.labels.csv)");

  DetectOpts detect;
  CLI::App* detect_cmd = app.add_subcommand(
      "detect", "Frame-wise wind detector scores for a stereo WAV");
  add_frontend_flags(detect_cmd, &detect.common);
  add_detector_flags(detect_cmd, &detect.common);
  detect_cmd->add_option("--in", detect.in, "Input stereo WAV")->required();
  detect_cmd->add_option("--out", detect.out, "Output CSV (stdout if omitted)");

  RocOpts roc;
  CLI::App* roc_cmd = app.add_subcommand(
      "roc", "ROC comparison of the PR and MSC detectors");
  add_wind_flags(roc_cmd, &roc.common);
  add_speech_flags(roc_cmd, &roc.common);
  add_frontend_flags(roc_cmd, &roc.common);
  add_detector_flags(roc_cmd, &roc.common);
  roc_cmd->add_option("--trials", roc.trials, "Number of trials")
      ->capture_default_str();
  roc_cmd->add_option("--thresholds", roc.thresholds,
                      "Threshold count (grid 0:0.05:...)")
      ->capture_default_str();
  roc_cmd->add_option("--segment-s", roc.segment_s, "Segment duration [s]")
      ->capture_default_str();
  roc_cmd->add_option("--isnr-db", roc.isnr_db, "Mixture input SNR [dB]")
      ->capture_default_str();
  roc_cmd->add_option("--envelope", roc.envelope,
                      "Wind spectral envelope: 'wind' or 'flat'")
      ->capture_default_str();
  roc_cmd->add_option("--speech-dir", roc.speech_dir,
                      "Directory of mono speech WAVs (builtin if omitted)");
  roc_cmd->add_option("--seed", roc.common.seed, "Base RNG seed")
      ->capture_default_str();
  roc_cmd->add_option("--out-csv", roc.out_csv, "ROC table CSV path")
      ->capture_default_str();
  roc_cmd->add_option("--out-json", roc.out_json, "Summary JSON path")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
    if (*theory_cmd) return run_theory(theory);
    if (*synth_cmd) return run_synth(synth);
    if (*detect_cmd) return run_detect(detect);
    if (*roc_cmd) return run_roc(roc);
    return 2;
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "windpr: " << e.what() << '\n';
    return 2;
  } catch (const windpr::IoError& e) {
    std::cerr << "windpr: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "windpr: " << e.what() << '\n';
    return 4;
  }
}
