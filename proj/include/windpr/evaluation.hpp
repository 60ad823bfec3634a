// Copyright 2026 The windpr authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef WINDPR_EVALUATION_HPP_
#define WINDPR_EVALUATION_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "windpr/detector.hpp"
#include "windpr/stft.hpp"
#include "windpr/synthesis.hpp"

namespace windpr {

struct Rates {
  double p_wind;    // wind detection rate (true positives / M_w)
  double p_speech;  // speech misdetection rate (false positives / M_s)
};

// Counting rates over per-frame labels L and hard decisions J. Requires at
// least one frame of each label.
Rates rates(std::span<const int> labels, std::span<const int> hard);

struct RocPoint {
  double theta;
  double false_positive_rate;  // P_s
  double true_positive_rate;   // P_w
};

// {0, 0.05, ..., (count-1)*0.05}; default 20 values ending at 0.95.
std::vector<double> default_threshold_grid(std::size_t count = 20);

// One RocPoint per threshold. Soft scores may carry NaN for no-decision
// frames, which stay 0 at every threshold.
std::vector<RocPoint> roc_sweep(std::span<const double> soft,
                                std::span<const int> labels,
                                std::span<const double> thetas);

// Trapezoidal area under the curve sorted by false-positive rate, with (0,0)
// and (1,1) appended when absent.
double auc(std::vector<RocPoint> points);

// Piecewise-linear interpolation of the true-positive rate at the given
// false-positive rate (same curve construction as auc).
double interpolate_tpr(std::vector<RocPoint> points, double fpr);

struct TrialResult {
  std::uint64_t seed = 0;
  std::vector<RocPoint> pr;
  std::vector<RocPoint> msc;
  std::size_t frames_wind = 0;
  std::size_t frames_speech = 0;
};

struct RocSummary {
  std::vector<RocPoint> pr_mean;
  std::vector<RocPoint> msc_mean;
  double auc_pr = 0.0;
  double auc_msc = 0.0;
  std::vector<TrialResult> trials;
};

// The full protocol: per trial, build a fresh labelled sequence (seed
// derive_seed(base_seed, trial)), score every frame once, and sweep the
// threshold grid for the PR and MSC detectors on the identical score stream.
// Per-threshold rates are averaged across trials.
RocSummary run_trials(std::size_t n_trials, const SequenceSpec& base,
                      const DetectorConfig& det, const StftConfig& stft,
                      double smoothing, const SpeechSource& speech_source,
                      std::span<const double> thetas, std::uint64_t base_seed);

}  // namespace windpr

#endif  // WINDPR_EVALUATION_HPP_
