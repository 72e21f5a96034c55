#include "bso/analytic.hpp"

#include <cmath>

namespace bso {

namespace {

using Cd = std::complex<double>;

constexpr Cd kI{0.0, 1.0};
constexpr double kPi = 3.14159265358979323846;

}  // namespace

SigmaFactor SigmaFactor::at(const FieldParams& p, double t) {
  const double chi = 2.0 * (p.omega() * t + p.phi());
  return {0.5 * kI * Cd{std::cos(chi), -std::sin(chi)}};
}

StateAmplitudes analytic_amplitudes(const FieldParams& p, double t) {
  if (!(t > 0.0)) throw DomainError("analytic_amplitudes: t must be > 0");
  const double theta = 0.5 * pulse_area(p, t);
  const double et = eta(p, t);
  const Cd sigma = SigmaFactor::at(p, t).value;
  const double c = std::cos(theta);
  const double s = std::sin(theta);

  const double th1 = p.omega() * t + p.phi();
  const Cd rot{std::cos(th1), -std::sin(th1)};  // e^{-i(wt+phi)}

  StateAmplitudes out;
  out.c0 = c - 2.0 * et * sigma * s;
  out.c1 = kI * rot * (s + 2.0 * et * std::conj(sigma) * c);
  out.frame = Frame::Lab;
  return out;
}

double pi_half_time(const FieldParams& p, int cycle) {
  if (!(p.g0M() > 0.0)) throw DomainError("pi_half_time: g0M must be > 0");
  if (cycle < 0) throw DomainError("pi_half_time: cycle must be >= 0");
  const double target = 0.5 * kPi + 2.0 * kPi * cycle;

  double lo = 0.0;
  double hi = 10.0 * (target / p.g0M() + p.tau_sw());
  if (pulse_area(p, hi) < target)
    throw SearchError("pi_half_time: no pi/2 crossing below t_max");

  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (pulse_area(p, mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

int saturated_pi_half_cycle(const FieldParams& p, double min_saturation) {
  if (!(min_saturation > 0.0 && min_saturation < 1.0))
    throw DomainError("saturated_pi_half_cycle: min_saturation must be in (0,1)");
  if (p.tau_sw() == 0.0) return 0;

  // crossing must lie past t_min where 1 - exp(-t/tau_sw) = min_saturation
  const double t_min = -p.tau_sw() * std::log1p(-min_saturation);
  const double area_min = pulse_area(p, t_min);
  int k = (int)std::ceil((area_min - 0.5 * kPi) / (2.0 * kPi) - 1e-12);
  if (k < 0) k = 0;
  while (-std::expm1(-pi_half_time(p, k) / p.tau_sw()) < min_saturation) ++k;
  return k;
}

double saturated_pi_half_time(const FieldParams& p, double min_saturation) {
  return pi_half_time(p, saturated_pi_half_cycle(p, min_saturation));
}

double readout_population(const FieldParams& p, double tau) {
  if (!(tau > 0.0)) throw DomainError("readout_population: tau must be > 0");
  const double area = pulse_area(p, tau);
  const double k = std::round((area - 0.5 * kPi) / (2.0 * kPi));
  if (k < 0.0 || std::abs(area - (0.5 * kPi + 2.0 * kPi * k)) > 1e-6)
    throw DomainError("readout_population: tau is not a pi/2 readout time");
  const double phi_tau = p.omega() * tau + p.phi();
  return 0.5 * (1.0 + 2.0 * eta(p, tau) * std::sin(2.0 * phi_tau));
}

Trajectory analytic_trajectory(const FieldParams& p, double t_end,
                               double dt_sample) {
  if (!(t_end > 0.0)) throw DomainError("analytic_trajectory: t_end must be > 0");
  if (!(dt_sample > 0.0) || dt_sample > t_end)
    throw DomainError("analytic_trajectory: need 0 < dt_sample <= t_end");
  const long n = (long)std::floor(t_end / dt_sample + 1e-9);

  Trajectory traj{{}, {}, p, 0.0};
  traj.times.reserve((std::size_t)n + 1);
  traj.states.reserve((std::size_t)n + 1);
  traj.times.push_back(0.0);
  traj.states.push_back({{1.0, 0.0}, {0.0, 0.0}, Frame::Lab});
  for (long i = 1; i <= n; ++i) {
    const double t = i * dt_sample;
    traj.times.push_back(t);
    traj.states.push_back(analytic_amplitudes(p, t));
    traj.max_norm_drift = std::max(
        traj.max_norm_drift, std::abs(traj.states.back().norm2() - 1.0));
  }
  return traj;
}

}  // namespace bso
