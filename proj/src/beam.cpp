#include "bso/beam.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bso/analytic.hpp"
#include "bso/quadrature.hpp"

namespace bso {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Slow-atom truncation of the w = u/v integrals; the weight decays as 2 w^-5,
// so the discarded tail is below 1/(2 * 360^4) ~ 3e-11.
constexpr double kWTail = 360.0;

// Velocity integrals are evaluated in w = u/v, where the interaction phase is
// exactly linear: area_v = w * area_u (tau_v / tau_sw,v is the same for every
// velocity group). The weight is the mapped speed density
//   q(w) = 2 w^-5 exp(-1/w^2),
// and panels of half an oscillation keep the composite Gauss rule spectral.
struct WAverages {
  double mass = 0.0;  // integral of q
  double dc = 0.0;    // integral of q sin^2(area_v / 2)
  double osc = 0.0;   // integral of q sin(area_v)
};

WAverages integrate_w(double w_lo, double w_hi, double area_u, int order,
                      long n_panels) {
  const GaussRule rule = gauss_legendre(order);
  WAverages acc;
  const double step = (w_hi - w_lo) / (double)n_panels;
  for (long k = 0; k < n_panels; ++k) {
    const double a = w_lo + k * step;
    const double c = a + 0.5 * step;
    const double half = 0.5 * step;
    for (int j = 0; j < order; ++j) {
      const double w = c + half * rule.x[(std::size_t)j];
      const double wt = half * rule.w[(std::size_t)j];
      const double q = 2.0 * std::exp(-1.0 / (w * w)) / (w * w * w * w * w);
      const double area = area_u * w;
      acc.mass += wt * q;
      const double s_half = std::sin(0.5 * area);
      acc.dc += wt * q * s_half * s_half;
      acc.osc += wt * q * std::sin(area);
    }
  }
  return acc;
}

BeamSignalComponents components_on(const BeamParams& b, const FieldParams& p,
                                   double w_lo, double w_hi, bool renormalize) {
  const double area_u =
      pulse_area(p.g0M(), b.z_sw() / b.u(), b.tau_bar());
  const double span = w_hi - w_lo;
  // panels short enough for both the oscillation (half period in w) and the
  // sharply peaked weight 2 w^-5 exp(-1/w^2)
  const double panel =
      std::min({span, kPi / std::max(area_u, 0.25), 0.25});
  const long n0 = std::max(1L, (long)std::ceil(span / panel));

  const WAverages coarse = integrate_w(w_lo, w_hi, area_u, b.quad_order(), n0);
  const WAverages fine = integrate_w(w_lo, w_hi, area_u, b.quad_order(), 2 * n0);

  auto make = [&](const WAverages& r) {
    const double scale = renormalize ? 1.0 / r.mass : 1.0;
    return BeamSignalComponents{r.dc * scale, p.eta0() * r.osc * scale};
  };
  const BeamSignalComponents c1 = make(coarse);
  const BeamSignalComponents c2 = make(fine);
  if (std::abs(c2.dc - c1.dc) + std::abs(c2.amplitude - c1.amplitude) > 1e-8)
    throw QuadratureError(
        "beam_signal: velocity quadrature did not converge (doubling the "
        "panel count moved S by more than 1e-8)");
  return c2;
}

}  // namespace

BeamParams::BeamParams(double u, double z0, double z_sw, double tau_bar,
                       int quad_order, double v_cutoff)
    : u_(u), z0_(z0), z_sw_(z_sw), tau_bar_(tau_bar), quad_order_(quad_order),
      v_cutoff_(v_cutoff) {
  if (!(u > 0.0) || !std::isfinite(u))
    throw DomainError("BeamParams: u must be > 0");
  if (!(z_sw > 0.0) || !std::isfinite(z_sw))
    throw DomainError("BeamParams: z_sw must be > 0");
  if (!(tau_bar > 0.0) || !std::isfinite(tau_bar))
    throw DomainError("BeamParams: tau_bar must be > 0");
  if (!std::isfinite(z0)) throw DomainError("BeamParams: z0 must be finite");
  if (quad_order < 4 || quad_order > 64)
    throw DomainError("BeamParams: quad_order must be in [4, 64]");
  if (!(v_cutoff > 1.0))
    throw DomainError("BeamParams: v_cutoff must be > 1");

  // truncated-grid normalization of f(v); 1e-6 closeness is a hard invariant
  const double span = kWTail - 1.0 / v_cutoff_;
  const WAverages r = integrate_w(1.0 / v_cutoff_, kWTail, 1.0, quad_order_,
                                  (long)std::ceil(span / 0.25));
  if (std::abs(r.mass - 1.0) > 1e-6)
    throw DomainError(
        "BeamParams: truncated velocity pdf mass deviates from 1 by " +
        std::to_string(std::abs(r.mass - 1.0)) +
        " (> 1e-6); increase v_cutoff");
}

BeamParams BeamParams::with_pi_half_readout(const FieldParams& p, double u,
                                            double z0, double z_sw,
                                            int quad_order, double v_cutoff,
                                            int cycle) {
  const FieldParams pv(p.g0M(), 1.0, p.phi(), z_sw / u,
                       p.compensate_bs_shift());
  const double tau_bar = pi_half_time(pv, cycle);
  return BeamParams(u, z0, z_sw, tau_bar, quad_order, v_cutoff);
}

double velocity_pdf(const BeamParams& b, double v) {
  if (v < 0.0) throw DomainError("velocity_pdf: v must be >= 0");
  const double x = v / b.u();
  return 2.0 * x * x * x * std::exp(-x * x) / b.u();
}

double spatial_profile(const BeamParams& b, const FieldParams& p, double z) {
  if (z < b.z0()) return 0.0;
  return p.g0M() * (-std::expm1(-(z - b.z0()) / b.z_sw()));
}

BeamSignalComponents beam_signal_components(const BeamParams& b,
                                            const FieldParams& p) {
  return components_on(b, p, 1.0 / b.v_cutoff(), kWTail, false);
}

BeamSignalComponents beam_signal_components(const BeamParams& b,
                                            const FieldParams& p, double v_lo,
                                            double v_hi) {
  if (!(v_lo >= 0.0) || !(v_hi > v_lo))
    throw DomainError("beam_signal_components: need 0 <= v_lo < v_hi");
  const double w_lo = b.u() / v_hi;
  const double w_hi = v_lo > b.u() / kWTail ? b.u() / v_lo : kWTail;
  if (!(w_hi > w_lo))
    throw DomainError("beam_signal_components: velocity window too narrow");
  return components_on(b, p, w_lo, w_hi, true);
}

double beam_signal(const BeamParams& b, const FieldParams& p, double t) {
  const BeamSignalComponents c = beam_signal_components(b, p);
  return c.dc + c.amplitude * std::sin(2.0 * (p.omega() * t + p.phi()));
}

double beam_signal_mono(const BeamParams& b, const FieldParams& p, double t) {
  const double area = pulse_area(p.g0M(), b.z_sw() / b.u(), b.tau_bar());
  const double s_half = std::sin(0.5 * area);
  return s_half * s_half +
         p.eta0() * std::sin(area) * std::sin(2.0 * (p.omega() * t + p.phi()));
}

double lock_in_dc(const BeamParams& b, const FieldParams& p, double theta,
                  double window_periods, double f0) {
  const double rounded = std::round(window_periods);
  if (!(window_periods > 0.0) ||
      std::abs(window_periods - rounded) > 1e-9 * std::max(1.0, rounded))
    throw WindowError(
        "lock_in_dc: window must be a positive integer number of pi/omega "
        "periods");
  const long periods = (long)rounded;

  const BeamSignalComponents c = beam_signal_components(b, p);
  const double period = kPi / p.omega();
  const long samples_per_period = 32;  // product has harmonics up to 4w only
  const long n = periods * samples_per_period;
  const double h = (periods * period) / (double)n;

  double acc = 0.0;
  for (long i = 0; i < n; ++i) {
    const double t = i * h;
    const double x = 2.0 * (p.omega() * t + p.phi());
    const double s = c.dc + c.amplitude * std::sin(x);
    const double f = f0 * std::cos(x - 0.5 * kPi - theta);
    acc += s * f;
  }
  return acc / (double)n;
}

}  // namespace bso
