// Copyright 2026 The windpr authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef WINDPR_CORCOS_HPP_
#define WINDPR_CORCOS_HPP_

#include <complex>

namespace windpr {

// Corcos model of the complex coherence of convective turbulence observed by
// two microphones: exponential magnitude decay in frequency x spacing plus a
// convective phase term. Angles are radians w.r.t. the microphone axis.
struct CorcosParams {
  double d = 0.004;       // mic spacing [m]
  double theta_w = 0.0;   // wind stream DOA [rad]
  double U = 1.8;         // free-field wind speed [m/s]
  double alpha1 = 0.125;  // longitudinal coherence decay rate
  double alpha2 = 0.7;    // lateral coherence decay rate

  // Convective turbulence speed in the boundary layer.
  double convective_speed() const { return 0.8 * U; }

  void validate() const;  // throws std::invalid_argument
};

// Geometry of the (anechoic, far-field) speech path to the microphone pair.
struct SpeechGeometry {
  double d = 0.004;        // mic spacing [m]
  double theta_s = 1.5707963267948966;  // speech DOA [rad]; default broadside
  double c = 343.0;        // speed of sound [m/s]

  // Inter-microphone time difference of arrival, d*cos(theta_s)/c.
  double tdoa() const;

  void validate() const;
};

// DOA-dependent decay rate alpha1*|cos| + alpha2*|sin|.
double decay_rate(double theta_w, double alpha1, double alpha2);

// Complex coherence of the two wind-noise observations at angular frequency
// omega [rad/s]. Magnitude exp(-alpha*omega*d/Uc), phase omega*d*cos/Uc;
// exactly 1+0i at omega = 0.
std::complex<double> coherence(const CorcosParams& params, double omega);

// Difference-to-sum power ratio of clean speech, tan^2(omega*d*cos/(2c)).
// Unbounded near its asymptotes; returns +infinity exactly there so callers
// can clip deliberately.
double pr_speech(const SpeechGeometry& geom, double omega);

// Difference-to-sum power ratio of pure wind noise. Non-negative, exactly 0
// at omega = 0, and may exceed 1 where Re{coherence} < 0.
double pr_wind(const CorcosParams& params, double omega);

// General speech+wind power ratio for the given speech/wind PSD levels.
// Reduces to pr_speech when phi_vv = 0 and to pr_wind when phi_ss = 0; both
// PSDs zero is rejected.
double pr_mixture(double phi_ss, double phi_vv, const SpeechGeometry& geom,
                  const CorcosParams& params, double omega);

}  // namespace windpr

#endif  // WINDPR_CORCOS_HPP_
