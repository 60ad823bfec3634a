// Copyright 2026 The windpr authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "windpr/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "windpr/errors.hpp"
#include "windpr/rng.hpp"

namespace windpr {

Rates rates(std::span<const int> labels, std::span<const int> hard) {
  if (labels.size() != hard.size())
    throw std::invalid_argument("rates: label/decision length mismatch");
  std::size_t m_wind = 0, m_speech = 0, hit = 0, false_alarm = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == 1) {
      ++m_wind;
      if (hard[i] == 1) ++hit;
    } else {
      ++m_speech;
      if (hard[i] == 1) ++false_alarm;
    }
  }
  if (m_wind == 0 || m_speech == 0)
    throw std::invalid_argument("rates: need at least one frame of each label");
  return {static_cast<double>(hit) / static_cast<double>(m_wind),
          static_cast<double>(false_alarm) / static_cast<double>(m_speech)};
}

std::vector<double> default_threshold_grid(std::size_t count) {
  if (count == 0)
    throw std::invalid_argument("threshold grid must be non-empty");
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i)
    grid[i] = 0.05 * static_cast<double>(i);
  return grid;
}

std::vector<RocPoint> roc_sweep(std::span<const double> soft,
                                std::span<const int> labels,
                                std::span<const double> thetas) {
  if (soft.size() != labels.size())
    throw std::invalid_argument("roc_sweep: score/label length mismatch");
  if (!std::is_sorted(thetas.begin(), thetas.end()))
    throw std::invalid_argument("roc_sweep: thresholds must be ascending");
  std::vector<RocPoint> points;
  points.reserve(thetas.size());
  std::vector<int> decisions(soft.size());
  for (const double theta : thetas) {
    for (std::size_t i = 0; i < soft.size(); ++i)
      decisions[i] = (!std::isnan(soft[i]) && soft[i] > theta) ? 1 : 0;
    const Rates r = rates(labels, decisions);
    points.push_back({theta, r.p_speech, r.p_wind});
  }
  return points;
}

namespace {

// Curve over false-positive rate with (0,0)/(1,1) endpoints appended when
// absent, sorted ascending.
std::vector<RocPoint> roc_curve(std::vector<RocPoint> points) {
  if (points.size() < 2)
    throw std::invalid_argument("roc curve needs at least 2 points");
  const auto has = [&](double fpr, double tpr) {
    return std::any_of(points.begin(), points.end(), [&](const RocPoint& p) {
      return p.false_positive_rate == fpr && p.true_positive_rate == tpr;
    });
  };
  if (!has(0.0, 0.0)) points.push_back({1.0, 0.0, 0.0});
  if (!has(1.0, 1.0)) points.push_back({0.0, 1.0, 1.0});
  std::sort(points.begin(), points.end(), [](const RocPoint& a, const RocPoint& b) {
    if (a.false_positive_rate != b.false_positive_rate)
      return a.false_positive_rate < b.false_positive_rate;
    return a.true_positive_rate < b.true_positive_rate;
  });
  return points;
}

}  // namespace

double auc(std::vector<RocPoint> points) {
  const std::vector<RocPoint> curve = roc_curve(std::move(points));
  double area = 0.0;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    const double dx =
        curve[i].false_positive_rate - curve[i - 1].false_positive_rate;
    area += dx * (curve[i].true_positive_rate + curve[i - 1].true_positive_rate) / 2.0;
  }
  return area;
}

double interpolate_tpr(std::vector<RocPoint> points, double fpr) {
  const std::vector<RocPoint> curve = roc_curve(std::move(points));
  if (fpr <= curve.front().false_positive_rate)
    return curve.front().true_positive_rate;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    if (fpr <= curve[i].false_positive_rate) {
      const double x0 = curve[i - 1].false_positive_rate;
      const double x1 = curve[i].false_positive_rate;
      const double y0 = curve[i - 1].true_positive_rate;
      const double y1 = curve[i].true_positive_rate;
      if (x1 == x0) return std::max(y0, y1);
      return y0 + (y1 - y0) * (fpr - x0) / (x1 - x0);
    }
  }
  return curve.back().true_positive_rate;
}

RocSummary run_trials(std::size_t n_trials, const SequenceSpec& base,
                      const DetectorConfig& det, const StftConfig& stft,
                      double smoothing, const SpeechSource& speech_source,
                      std::span<const double> thetas, std::uint64_t base_seed) {
  if (n_trials == 0)
    throw std::invalid_argument("run_trials: n_trials must be >= 1");
  det.validate();

  RocSummary summary;
  summary.pr_mean.resize(thetas.size());
  summary.msc_mean.resize(thetas.size());
  for (std::size_t t = 0; t < thetas.size(); ++t) {
    summary.pr_mean[t] = {thetas[t], 0.0, 0.0};
    summary.msc_mean[t] = {thetas[t], 0.0, 0.0};
  }

  for (std::size_t trial = 0; trial < n_trials; ++trial) {
    SequenceSpec spec = base;
    spec.seed = derive_seed(base_seed, trial);

    LabeledStereo seq;
    std::vector<FrameScore> scores;
    try {
      seq = build_sequence(spec, speech_source, stft);
      scores = score_frames(seq.audio.ch1, seq.audio.ch2, stft, det, smoothing);
    } catch (const std::exception& e) {
      throw std::runtime_error("run_trials: trial " + std::to_string(trial) +
                               ": " + e.what());
    }
    if (scores.size() != seq.labels.size())
      throw ContractError("run_trials: score/label count mismatch");

    // Both detectors consume the identical score stream.
    std::vector<double> soft_pr_scores(scores.size());
    std::vector<double> soft_msc_scores(scores.size());
    const double nan = std::nan("");
    for (std::size_t i = 0; i < scores.size(); ++i) {
      soft_pr_scores[i] = scores[i].soft_pr.value_or(nan);
      soft_msc_scores[i] = scores[i].soft_msc.value_or(nan);
    }

    TrialResult result;
    result.seed = spec.seed;
    result.pr = roc_sweep(soft_pr_scores, seq.labels, thetas);
    result.msc = roc_sweep(soft_msc_scores, seq.labels, thetas);
    for (const int label : seq.labels)
      (label == 1 ? result.frames_wind : result.frames_speech) += 1;

    const double w = 1.0 / static_cast<double>(n_trials);
    for (std::size_t t = 0; t < thetas.size(); ++t) {
      summary.pr_mean[t].false_positive_rate += w * result.pr[t].false_positive_rate;
      summary.pr_mean[t].true_positive_rate += w * result.pr[t].true_positive_rate;
      summary.msc_mean[t].false_positive_rate += w * result.msc[t].false_positive_rate;
      summary.msc_mean[t].true_positive_rate += w * result.msc[t].true_positive_rate;
    }
    summary.trials.push_back(std::move(result));
  }
  summary.auc_pr = auc(summary.pr_mean);
  summary.auc_msc = auc(summary.msc_mean);
  return summary;
}

}  // namespace windpr
