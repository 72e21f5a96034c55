#pragma once

#include <complex>

#include "bso/field.hpp"
#include "bso/state.hpp"

namespace bso {

// Sigma = (i/2) exp(-i(2wt + 2phi)); |value| = 1/2.
struct SigmaFactor {
  std::complex<double> value;

  static SigmaFactor at(const FieldParams& p, double t);
};

// First-order lab-frame amplitudes, with T = g0'(t) t / 2 and eta = eta(t):
//   C0 = cos T - 2 eta Sigma sin T
//   C1 = i e^{-i(wt+phi)} [ sin T + 2 eta Sigma* cos T ]
// Normalized to O(eta^2).
StateAmplitudes analytic_amplitudes(const FieldParams& p, double t);

// Smallest tau with pulse area g0'(tau) tau = pi/2 + 2 pi cycle, by bisection;
// residual below 1e-10. At such times sin^2(area/2) = 1/2 (populations equal)
// and the 2w oscillation envelope sin(area) is at its positive peak.
double pi_half_time(const FieldParams& p, int cycle = 0);

// Smallest cycle index whose pi/2 crossing has eta(tau) >= min_saturation*eta0,
// i.e. the readout sits on the saturated part of the switching envelope.
int saturated_pi_half_cycle(const FieldParams& p, double min_saturation = 0.85);
double saturated_pi_half_time(const FieldParams& p,
                              double min_saturation = 0.85);

// Excited-state population read out at a pi/2 time tau:
//   |C1(tau)|^2 = (1/2) [1 + 2 eta(tau) sin(2(w tau + phi))].
// tau must satisfy the pi/2 condition (area = pi/2 mod 2pi) within 1e-6.
double readout_population(const FieldParams& p, double tau);

// Uniformly sampled lab-frame trajectory of the closed-form solution
// (t = 0 carries the exact initial state).
Trajectory analytic_trajectory(const FieldParams& p, double t_end,
                               double dt_sample);

}  // namespace bso
