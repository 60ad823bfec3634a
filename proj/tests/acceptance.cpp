// Copyright 2026 The windpr authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)
//
// End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
// exits non-zero if any fails. argv[1] must point at the windpr CLI binary
// (used by the determinism criterion).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "windpr/corcos.hpp"
#include "windpr/detector.hpp"
#include "windpr/evaluation.hpp"
#include "windpr/psd.hpp"
#include "windpr/rng.hpp"
#include "windpr/stft.hpp"
#include "windpr/synthesis.hpp"

using namespace windpr;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int g_failures = 0;

void report(int index, const std::string& name,
            const std::function<Outcome()>& body, double budget_s) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    outcome = body();
  } catch (const std::exception& e) {
    outcome.pass = false;
    outcome.detail = std::string("exception: ") + e.what();
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  if (elapsed >= budget_s) {
    outcome.pass = false;
    outcome.detail += " [over time budget]";
  }
  std::printf("[%s] criterion %d: %s (%s; %.2f s, budget %.0f s)\n",
              outcome.pass ? "PASS" : "FAIL", index, name.c_str(),
              outcome.detail.c_str(), elapsed, budget_s);
  std::fflush(stdout);
  if (!outcome.pass) ++g_failures;
}

struct Case {
  CorcosParams wind;
  SpeechGeometry speech;
};

// The two published parameter sets for the power-ratio curves.
std::vector<Case> figure_cases() {
  return {{{0.004, kPi / 2, 1.8, 0.125, 0.7}, {0.004, 0.0, 343.0}},
          {{0.020, 0.0, 2.8, 0.125, 0.7}, {0.020, 0.0, 343.0}}};
}

Outcome criterion1_reductions() {
  double max_err = 0.0;
  for (const Case& c : figure_cases()) {
    for (int f = 0; f <= 8000; ++f) {
      const double omega = 2.0 * kPi * static_cast<double>(f);
      const double speech_route = pr_speech(c.speech, omega);
      const double mix_speech = pr_mixture(1.3, 0.0, c.speech, c.wind, omega);
      const double wind_route = pr_wind(c.wind, omega);
      const double mix_wind = pr_mixture(0.0, 0.7, c.speech, c.wind, omega);
      max_err = std::max(max_err, std::fabs(mix_speech - speech_route));
      max_err = std::max(max_err, std::fabs(mix_wind - wind_route));
    }
  }
  Outcome o;
  o.pass = max_err <= 1e-12;
  std::ostringstream os;
  os << "max abs err " << max_err;
  o.detail = os.str();
  return o;
}

Outcome criterion2_roundtrip() {
  StftConfig cfg;
  std::ostringstream os;
  bool pass = true;
  int index = 0;
  for (const Case& c : figure_cases()) {
    NoiseSpec spec;
    spec.corcos = c.wind;
    spec.duration_s = 30.0;
    spec.seed = 20240 + static_cast<std::uint64_t>(index);
    const Stereo wind = gen_coherent_noise(spec, cfg);
    const StftResult frames = stft_frames(wind.ch1, wind.ch2, cfg);
    AveragedPsd avg;
    for (const FramePair& f : frames.frames) avg.accumulate(f);

    const auto band = band_bins(cfg, 0.0, 1000.0);
    double mae = 0.0;
    for (const std::size_t k : band)
      mae += std::fabs(avg.power_ratio(k) - pr_wind(c.wind, cfg.bin_omega(k)));
    mae /= static_cast<double>(band.size());
    pass = pass && mae <= 0.05;
    os << (index == 0 ? "MAE " : ", ") << mae;
    ++index;
  }
  return {pass, os.str()};
}

Outcome criterion3_separation() {
  StftConfig cfg;
  SequenceSpec spec;
  const double segment_s = 2.0;
  spec.plan = SequenceSpec::default_plan(segment_s);
  spec.speech = {0.004, kPi / 2, 343.0};
  spec.wind = {0.004, 0.0, 1.8, 0.125, 0.7};
  spec.seed = 1912;
  const SpeechSource source = [&](double dur, std::uint64_t seed) {
    return gen_speech_like(dur, cfg.sample_rate, seed);
  };
  const LabeledStereo seq = build_sequence(spec, source, cfg);
  DetectorConfig det;  // band 0-500, theta 0.5, clamped
  const std::vector<FrameScore> scores =
      score_frames(seq.audio.ch1, seq.audio.ch2, cfg, det, 0.5);

  // Frames fully inside segment i.
  const auto segment_frames = [&](std::size_t i) {
    const std::size_t seg_len =
        static_cast<std::size_t>(segment_s * cfg.sample_rate);
    const std::size_t lo = i * seg_len;
    const std::size_t hi = (i + 1) * seg_len;
    std::vector<std::size_t> out;
    for (std::size_t l = 0; l < scores.size(); ++l) {
      const std::size_t start = l * cfg.hop;
      if (start >= lo && start + cfg.frame_len <= hi) out.push_back(l);
    }
    return out;
  };
  const auto median_soft = [&](const std::vector<std::size_t>& frames) {
    std::vector<double> v;
    for (const std::size_t l : frames)
      v.push_back(scores[l].soft_pr.value_or(0.0));
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
  };

  const std::vector<std::size_t> speech_frames = [&] {
    std::vector<std::size_t> s0 = segment_frames(0);
    const std::vector<std::size_t> s3 = segment_frames(3);
    s0.insert(s0.end(), s3.begin(), s3.end());
    return s0;
  }();
  const std::vector<std::size_t> wind_frames = segment_frames(1);

  const double med_speech = median_soft(speech_frames);
  const double med_wind = median_soft(wind_frames);

  // Majority-correct hard decisions per pure segment at theta = 0.5.
  const auto majority_ok = [&](const std::vector<std::size_t>& frames,
                               int expect) {
    std::size_t correct = 0;
    for (const std::size_t l : frames)
      if (scores[l].hard_pr == expect) ++correct;
    return 2 * correct > frames.size();
  };
  const bool majorities = majority_ok(segment_frames(0), 0) &&
                          majority_ok(segment_frames(3), 0) &&
                          majority_ok(wind_frames, 1);

  Outcome o;
  o.pass = med_wind > 0.5 && med_speech < 0.1 && majorities;
  std::ostringstream os;
  os << "median wind " << med_wind << ", median speech " << med_speech
     << ", segment majorities " << (majorities ? "ok" : "violated");
  o.detail = os.str();
  return o;
}

Outcome criterion4_roc_dominance() {
  StftConfig cfg;  // 16 kHz, 128 ms, 75%
  DetectorConfig det;
  SequenceSpec spec;
  spec.plan = SequenceSpec::default_plan(2.0);
  spec.isnr_db = -5.0;
  spec.speech = {0.004, kPi / 2, 343.0};
  spec.wind = {0.004, 0.0, 1.8, 0.125, 0.7};
  const SpeechSource source = [&](double dur, std::uint64_t seed) {
    return gen_speech_like(dur, cfg.sample_rate, seed);
  };
  const std::vector<double> thetas = default_threshold_grid(20);
  const RocSummary summary =
      run_trials(10, spec, det, cfg, 0.5, source, thetas, 8261);

  double worst_gap = 1.0;
  for (double fpr = 0.0; fpr <= 1.0 + 1e-9; fpr += 0.02) {
    const double tpr_pr = interpolate_tpr(summary.pr_mean, fpr);
    const double tpr_msc = interpolate_tpr(summary.msc_mean, fpr);
    worst_gap = std::min(worst_gap, tpr_pr - tpr_msc);
  }
  Outcome o;
  o.pass = summary.auc_pr > summary.auc_msc && worst_gap >= -0.05;
  std::ostringstream os;
  os << "AUC pr " << summary.auc_pr << " vs msc " << summary.auc_msc
     << ", min TPR gap " << worst_gap;
  o.detail = os.str();
  return o;
}

Outcome criterion5_estimator_invariants() {
  StftConfig cfg;
  Rng rng(5150);
  const std::size_t total = cfg.frame_len + 60 * cfg.hop;
  std::vector<double> x1(total), x2(total);
  for (std::size_t i = 0; i < total; ++i) {
    x1[i] = rng.gaussian();
    x2[i] = 0.4 * x1[i] + rng.gaussian();  // partially coherent pair
  }

  const StftResult frames = stft_frames(x1, x2, cfg);
  PsdState state(0.5);
  double max_par = 0.0, max_msc = 0.0;
  for (const FramePair& f : frames.frames) {
    state.update(f);
    for (std::size_t k = 0; k < state.bins(); ++k) {
      const double lhs = state.phi_diff[k] + state.phi_sum[k];
      const double rhs = 2.0 * (state.phi_11[k] + state.phi_22[k]);
      if (rhs > 0.0) max_par = std::max(max_par, std::fabs(lhs - rhs) / rhs);
      const auto m = state.msc(k);
      if (m.has_value()) {
        max_msc = std::max(max_msc, *m - 1.0);
        if (*m < 0.0) max_msc = 1.0;
      }
    }
  }

  // Per-pair scalar gain must leave both ratios untouched.
  const double gain = 7.3;
  std::vector<double> g1(total), g2(total);
  for (std::size_t i = 0; i < total; ++i) {
    g1[i] = gain * x1[i];
    g2[i] = gain * x2[i];
  }
  const StftResult gframes = stft_frames(g1, g2, cfg);
  PsdState plain(0.5), scaled(0.5);
  double max_gain_dev = 0.0;
  for (std::size_t l = 0; l < frames.frames.size(); ++l) {
    plain.update(frames.frames[l]);
    scaled.update(gframes.frames[l]);
  }
  const double floor_plain = plain.floor_value();
  const double floor_scaled = scaled.floor_value();
  for (std::size_t k = 0; k < plain.bins(); ++k) {
    const auto pr_a = plain.power_ratio(k, floor_plain);
    const auto pr_b = scaled.power_ratio(k, floor_scaled);
    const auto msc_a = plain.msc(k, floor_plain);
    const auto msc_b = scaled.msc(k, floor_scaled);
    if (pr_a.has_value() != pr_b.has_value() ||
        msc_a.has_value() != msc_b.has_value()) {
      max_gain_dev = 1.0;
      break;
    }
    if (pr_a && *pr_a > 0.0)
      max_gain_dev = std::max(max_gain_dev, std::fabs(*pr_b - *pr_a) / *pr_a);
    if (msc_a && *msc_a > 0.0)
      max_gain_dev = std::max(max_gain_dev, std::fabs(*msc_b - *msc_a) / *msc_a);
  }

  Outcome o;
  o.pass = max_par <= 1e-6 && max_msc <= 1e-9 && max_gain_dev <= 1e-12;
  std::ostringstream os;
  os << "parallelogram " << max_par << ", msc excess " << max_msc
     << ", gain dev " << max_gain_dev;
  o.detail = os.str();
  return o;
}

Outcome criterion6_roc_mechanics() {
  // Hand-counted example: 6 frames, 3 wind, 3 speech.
  const std::vector<int> labels = {1, 0, 1, 0, 1, 0};
  const std::vector<int> j1 = {1, 0, 1, 1, 0, 0};  // 2 hits, 1 false alarm
  const Rates r = rates(labels, j1);
  bool pass = r.p_wind == 2.0 / 3.0 && r.p_speech == 1.0 / 3.0;

  const std::vector<int> perfect = {1, 0, 1, 0, 1, 0};
  pass = pass && rates(labels, perfect).p_wind == 1.0 &&
         rates(labels, perfect).p_speech == 0.0;
  const std::vector<int> always(6, 1);
  pass = pass && rates(labels, always).p_wind == 1.0 &&
         rates(labels, always).p_speech == 1.0;
  const std::vector<int> never(6, 0);
  pass = pass && rates(labels, never).p_wind == 0.0 &&
         rates(labels, never).p_speech == 0.0;

  // Monotonicity of both rates over the sweep, 1000 random cases.
  Rng rng(616);
  const std::vector<double> thetas = default_threshold_grid();
  int violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 20 + static_cast<std::size_t>(rng.uniform(0, 80));
    std::vector<double> soft(n);
    std::vector<int> lab(n);
    lab[0] = 0;
    lab[1] = 1;
    for (std::size_t i = 0; i < n; ++i) {
      soft[i] = rng.uniform01();
      if (i > 1) lab[i] = rng.uniform01() < 0.5 ? 0 : 1;
    }
    const std::vector<RocPoint> pts = roc_sweep(soft, lab, thetas);
    for (std::size_t t = 1; t < pts.size(); ++t) {
      if (pts[t].true_positive_rate > pts[t - 1].true_positive_rate ||
          pts[t].false_positive_rate > pts[t - 1].false_positive_rate)
        ++violations;
    }
  }
  pass = pass && violations == 0;

  Outcome o;
  o.pass = pass;
  std::ostringstream os;
  os << "hand counts " << (pass ? "exact" : "wrong") << ", monotonicity violations "
     << violations << "/1000";
  o.detail = os.str();
  return o;
}

std::string file_bytes(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return "<missing:" + path + ">";
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

Outcome criterion7_determinism(const std::string& cli) {
  Outcome o;
  if (cli.empty()) {
    o.detail = "no CLI path supplied";
    return o;
  }
  namespace fs = std::filesystem;
  const fs::path dir =
      fs::temp_directory_path() / ("windpr_accept_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const auto run = [&](const std::string& args) {
    const std::string cmd =
        "\"" + cli + "\" " + args + " >/dev/null 2>&1";
    return std::system(cmd.c_str()) == 0;
  };
  const auto out = [&](const std::string& name) {
    return (dir / name).string();
  };

  struct Step {
    std::string args_template;        // '@' replaced by the output tag
    std::vector<std::string> outputs; // files to compare, per tag
  };
  const std::string seq_wav = out("seq_a.wav");
  const std::vector<Step> steps = {
      {"theory --fmax 2000 --out " + out("theory_@.csv"), {"theory_@.csv"}},
      {"synth --mode noise --duration-s 2 --seed 3 --out " + out("noise_@.wav") +
           " --labels " + out("noise_@.labels.csv"),
       {"noise_@.wav", "noise_@.labels.csv"}},
      {"synth --mode sequence --segment-s 1 --seed 3 --out " + out("seq_@.wav") +
           " --labels " + out("seq_@.labels.csv"),
       {"seq_@.wav", "seq_@.labels.csv"}},
      {"detect --in " + seq_wav + " --out " + out("detect_@.csv"),
       {"detect_@.csv"}},
      {"roc --trials 2 --segment-s 1 --seed 5 --out-csv " + out("roc_@.csv") +
           " --out-json " + out("roc_@.json"),
       {"roc_@.csv", "roc_@.json"}},
  };

  const auto subst = [](std::string s, const std::string& tag) {
    for (std::size_t p = s.find('@'); p != std::string::npos; p = s.find('@'))
      s.replace(p, 1, tag);
    return s;
  };

  bool pass = true;
  std::string failed;
  for (const Step& step : steps) {
    if (!run(subst(step.args_template, "a")) ||
        !run(subst(step.args_template, "b"))) {
      pass = false;
      failed = "command failed: " + step.args_template;
      break;
    }
    for (const std::string& output : step.outputs) {
      const std::string a = file_bytes(out(subst(output, "a")));
      const std::string b = file_bytes(out(subst(output, "b")));
      if (a != b || a.empty()) {
        pass = false;
        failed = "mismatch or empty: " + output;
      }
    }
    if (!pass) break;
  }
  fs::remove_all(dir);
  o.pass = pass;
  o.detail = pass ? "all subcommand outputs byte-identical" : failed;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  report(1, "theory reduction identities", criterion1_reductions, 1.0);
  report(2, "coherence round-trip, measured PR vs model", criterion2_roundtrip,
         30.0);
  report(3, "sequence separation and hard decisions", criterion3_separation,
         30.0);
  report(4, "ROC dominance of the PR detector", criterion4_roc_dominance,
         300.0);
  report(5, "estimator invariants", criterion5_estimator_invariants, 60.0);
  report(6, "ROC mechanics", criterion6_roc_mechanics, 60.0);
  report(7, "CLI determinism", [&] { return criterion7_determinism(cli); },
         120.0);
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
