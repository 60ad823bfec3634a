// Copyright 2026 The windpr authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "windpr/corcos.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace windpr {

void CorcosParams::validate() const {
  if (!(d > 0.0)) throw std::invalid_argument("CorcosParams: d must be > 0");
  if (!(U > 0.0)) throw std::invalid_argument("CorcosParams: U must be > 0");
  if (!(alpha1 > 0.0) || !(alpha2 > 0.0))
    throw std::invalid_argument("CorcosParams: decay rates must be > 0");
  if (!std::isfinite(theta_w))
    throw std::invalid_argument("CorcosParams: theta_w must be finite");
}

double SpeechGeometry::tdoa() const { return d * std::cos(theta_s) / c; }

void SpeechGeometry::validate() const {
  if (!(d > 0.0)) throw std::invalid_argument("SpeechGeometry: d must be > 0");
  if (!(c > 0.0)) throw std::invalid_argument("SpeechGeometry: c must be > 0");
  if (!std::isfinite(theta_s))
    throw std::invalid_argument("SpeechGeometry: theta_s must be finite");
}

double decay_rate(double theta_w, double alpha1, double alpha2) {
  if (!(alpha1 > 0.0) || !(alpha2 > 0.0))
    throw std::invalid_argument("decay_rate: decay rates must be > 0");
  return alpha1 * std::fabs(std::cos(theta_w)) +
         alpha2 * std::fabs(std::sin(theta_w));
}

namespace {

void check_omega(double omega) {
  if (!(omega >= 0.0))
    throw std::invalid_argument("omega must be >= 0 rad/s");
}

}  // namespace

std::complex<double> coherence(const CorcosParams& params, double omega) {
  params.validate();
  check_omega(omega);
  if (omega == 0.0) return {1.0, 0.0};
  const double uc = params.convective_speed();
  const double alpha = decay_rate(params.theta_w, params.alpha1, params.alpha2);
  const double mag = std::exp(-alpha * omega * params.d / uc);
  const double phase = omega * params.d * std::cos(params.theta_w) / uc;
  return std::polar(mag, phase);
}

double pr_speech(const SpeechGeometry& geom, double omega) {
  geom.validate();
  check_omega(omega);
  const double x = omega * geom.d * std::cos(geom.theta_s) / (2.0 * geom.c);
  if (std::cos(x) == 0.0) return std::numeric_limits<double>::infinity();
  const double t = std::tan(x);
  return t * t;
}

double pr_wind(const CorcosParams& params, double omega) {
  params.validate();
  check_omega(omega);
  if (omega == 0.0) return 0.0;
  const double uc = params.convective_speed();
  const double alpha = decay_rate(params.theta_w, params.alpha1, params.alpha2);
  const double decay = std::exp(-alpha * omega * params.d / uc);
  const double osc = std::cos(omega * params.d * std::cos(params.theta_w) / uc);
  const double x = decay * osc;  // |x| < 1 for omega > 0
  return (1.0 - x) / (1.0 + x);
}

double pr_mixture(double phi_ss, double phi_vv, const SpeechGeometry& geom,
                  const CorcosParams& params, double omega) {
  geom.validate();
  params.validate();
  check_omega(omega);
  if (!(phi_ss >= 0.0) || !(phi_vv >= 0.0))
    throw std::invalid_argument("pr_mixture: PSDs must be >= 0");
  if (phi_ss == 0.0 && phi_vv == 0.0)
    throw std::invalid_argument("pr_mixture: both PSDs zero is undefined");

  const double arg = omega * geom.d * std::cos(geom.theta_s) / (2.0 * geom.c);
  const double s = std::sin(arg);
  const double co = std::cos(arg);
  const double re_gamma = coherence(params, omega).real();
  const double num = 4.0 * phi_ss * s * s + 2.0 * phi_vv * (1.0 - re_gamma);
  const double den = 4.0 * phi_ss * co * co + 2.0 * phi_vv * (1.0 + re_gamma);
  if (den == 0.0) return std::numeric_limits<double>::infinity();
  return num / den;
}

}  // namespace windpr
