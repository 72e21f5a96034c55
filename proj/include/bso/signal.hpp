#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "bso/field.hpp"
#include "bso/state.hpp"

namespace bso {

struct TimeSeries {
  std::vector<double> t;
  std::vector<double> y;

  std::size_t size() const { return t.size(); }
};

// Least-squares model A + B sin(Omega t + psi), B >= 0, psi in [0, 2pi).
struct SinusoidFit {
  double offset = 0.0;
  double amplitude = 0.0;
  double frequency = 0.0;
  double phase = 0.0;
  double residual_rms = 0.0;
  // false when the amplitude is consistent with zero and the phase carries
  // no information (e.g. a constant series)
  bool phase_constrained = true;
};

double wrap_2pi(double x);
double wrap_pi(double x);
// minimal circular distance of a and b on a circle of the given period
double circular_distance(double a, double b, double period);

// |C1(t)|^2 minus the Rabi oscillation sin^2(g0'(t) t / 2) per sample; for
// first-order model data this is the BSO eta(t) sin(g0't) sin(2wt + 2phi).
TimeSeries bso_residual(const Trajectory& traj, const FieldParams& p);

TimeSeries slice(const TimeSeries& s, std::size_t first, std::size_t last);

// Sample index range [first, last) on which the BSO envelope
// eta(t) sin(g0'(t) t) stays within max_variation of its (positive) maximum.
std::pair<std::size_t, std::size_t> saturated_envelope_window(
    const TimeSeries& s, const FieldParams& p, double max_variation = 0.1);

// Variable-projection least squares: linear solve for (A, B, psi) at fixed
// frequency, Gauss-Newton refinement of the frequency seeded at freq_hint.
// The series must be uniformly sampled and span >= 4 periods of freq_hint.
SinusoidFit fit_sinusoid(const TimeSeries& s, double freq_hint);

// Product-model variant for the full BSO record: fits
//   y = A + k E(t) sin(Omega t + psi),  E(t) = eta(t) sin(g0'(t) t),
// so the known envelope need not be constant over the fit window. The
// returned amplitude is the envelope scale k (~1 for model data).
SinusoidFit fit_bso_product(const TimeSeries& s, const FieldParams& p,
                            double freq_hint);

// Dominant angular frequency of a uniformly sampled series: Hann-windowed
// power-of-two DFT, parabolic interpolation of the log-magnitude peak.
double spectral_peak(const TimeSeries& s);

// Width of one DFT bin (rad/time) as used by spectral_peak on this series.
double spectral_bin_width(const TimeSeries& s);

// Recover the phase reference w*tau (mod pi) from pi/2-readout populations
// sampled against the initial field phase: fits
//   pop(phi) = A + B sin(2 phi + psi),  psi = 2 w tau (mod 2pi),
// and returns psi/2 in [0, pi). Needs >= 8 samples spanning a good part of
// [0, pi). tau is the nominal readout time (validated, not used in the fit).
double estimate_absolute_phase(
    const std::vector<std::pair<double, double>>& pop_vs_phi,
    const FieldParams& p, double tau);

}  // namespace bso
