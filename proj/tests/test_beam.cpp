#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bso/analytic.hpp"
#include "bso/beam.hpp"
#include "bso/quadrature.hpp"
#include "test_oracles.hpp"

using namespace bso;

namespace {

constexpr double kPi = 3.14159265358979323846;

const FieldParams kField(0.2, 1.0, 0.3, 100.0);  // eta0 = 0.05

BeamParams make_beam(double u = 1.0, double z_sw = 50.0) {
  return BeamParams::with_pi_half_readout(kField, u, 0.0, z_sw);
}

// mapped speed density q(w) = 2 w^-5 exp(-1/w^2) for w = u/v
double q_w(double w) {
  return 2.0 * std::exp(-1.0 / (w * w)) / std::pow(w, 5);
}

}  // namespace

TEST_CASE("Gauss-Legendre rule integrates polynomials and exp") {
  const GaussRule r = gauss_legendre(12);
  double p6 = 0.0, ex = 0.0, mass = 0.0;
  for (int i = 0; i < 12; ++i) {
    p6 += r.w[i] * std::pow(r.x[i], 6);
    ex += r.w[i] * std::exp(r.x[i]);
    mass += r.w[i];
  }
  CHECK(mass == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(p6 == doctest::Approx(2.0 / 7.0).epsilon(1e-14));
  CHECK(ex == doctest::Approx(std::exp(1.0) - std::exp(-1.0)).epsilon(1e-14));
}

TEST_CASE("speed density") {
  const BeamParams b = make_beam();
  CHECK(velocity_pdf(b, 0.0) == 0.0);
  CHECK_THROWS_AS(velocity_pdf(b, -0.1), DomainError);

  // normalized on the half line
  const double mass = oracle::integrate(
      [&](double v) { return velocity_pdf(b, v); }, 0.0, 8.0, 1e-13);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));

  // mode at u sqrt(3/2): golden-section maximum against the closed form
  double lo = 0.8, hi = 1.8;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  while (hi - lo > 1e-9) {
    const double x1 = hi - gr * (hi - lo);
    const double x2 = lo + gr * (hi - lo);
    if (velocity_pdf(b, x1) < velocity_pdf(b, x2))
      lo = x1;
    else
      hi = x2;
  }
  CHECK(0.5 * (lo + hi) == doctest::Approx(std::sqrt(1.5)).epsilon(1e-6));
}

TEST_CASE("spatial profile and the time-envelope change of variables") {
  const BeamParams b(1.0, 2.0, 50.0, 30.0);
  CHECK(spatial_profile(b, kField, 1.9) == 0.0);
  CHECK(spatial_profile(b, kField, 2.0) == 0.0);
  CHECK(spatial_profile(b, kField, 1e7) == doctest::Approx(0.2).epsilon(1e-12));

  // an atom moving at v sees g0(t) with tau_sw = z_sw / v
  for (double v : {0.5, 1.0, 2.3}) {
    FieldParams moved(kField.g0M(), 1.0, kField.phi(), b.z_sw() / v);
    for (double t : {1.0, 13.0, 77.0}) {
      CHECK(spatial_profile(b, kField, b.z0() + v * t) ==
            doctest::Approx(switching_profile(moved, t)).epsilon(1e-14));
    }
  }
}

TEST_CASE("parameter validation and the truncated-mass invariant") {
  CHECK_THROWS_AS(BeamParams(-1.0, 0.0, 50.0, 30.0), DomainError);
  CHECK_THROWS_AS(BeamParams(1.0, 0.0, 0.0, 30.0), DomainError);
  CHECK_THROWS_AS(BeamParams(1.0, 0.0, 50.0, -2.0), DomainError);
  CHECK_THROWS_AS(BeamParams(1.0, 0.0, 50.0, 30.0, 2), DomainError);
  // cutoff 4.0 leaves 1.9e-6 of tail mass: violates the 1e-6 invariant
  CHECK_THROWS_AS(BeamParams(1.0, 0.0, 50.0, 30.0, 16, 4.0), DomainError);
  CHECK_NOTHROW(BeamParams(1.0, 0.0, 50.0, 30.0, 16, 4.5));
}

TEST_CASE("readout factory enforces the pi/2 condition at v = u") {
  const BeamParams b = make_beam();
  FieldParams at_u(kField.g0M(), 1.0, kField.phi(), b.z_sw() / b.u());
  CHECK(std::abs(pulse_area(at_u, b.tau_bar()) - 0.5 * kPi) <= 1e-9);

  // later crossing on request
  const BeamParams b2 =
      BeamParams::with_pi_half_readout(kField, 1.0, 0.0, 50.0, 16, 4.5, 2);
  CHECK(std::abs(pulse_area(at_u, b2.tau_bar()) - (0.5 * kPi + 4.0 * kPi)) <=
        1e-9);
}

TEST_CASE("monovelocity signal is 1/2 + eta0 sin(2wt + 2phi)") {
  const BeamParams b = make_beam();
  for (double t : {0.0, 0.4, 1.9, 3.3}) {
    const double expected =
        0.5 + kField.eta0() * std::sin(2.0 * (t + kField.phi()));
    CHECK(beam_signal_mono(b, kField, t) ==
          doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("beam components against an independent adaptive oracle") {
  const BeamParams b = make_beam();
  const BeamSignalComponents c = beam_signal_components(b, kField);

  FieldParams at_u(kField.g0M(), 1.0, kField.phi(), b.z_sw() / b.u());
  const double area_u = pulse_area(at_u, b.tau_bar());
  const double w_lo = 1.0 / b.v_cutoff();
  auto dc_term = [&](double w) {
    const double s = std::sin(0.5 * area_u * w);
    return q_w(w) * s * s;
  };
  auto osc_term = [&](double w) { return q_w(w) * std::sin(area_u * w); };
  const double dc_ref = oracle::integrate(dc_term, w_lo, 360.0, 1e-12, 48);
  const double osc_ref = oracle::integrate(osc_term, w_lo, 360.0, 1e-12, 48);

  CHECK(c.dc == doctest::Approx(dc_ref).epsilon(1e-9));
  CHECK(c.amplitude ==
        doctest::Approx(kField.eta0() * osc_ref).epsilon(1e-9));
}

TEST_CASE("time dependence factorizes and phi + pi/2 flips the oscillation") {
  const BeamParams b = make_beam();
  const BeamSignalComponents c = beam_signal_components(b, kField);
  for (double t : {0.0, 0.7, 2.9}) {
    CHECK(beam_signal(b, kField, t) ==
          doctest::Approx(c.dc + c.amplitude * std::sin(2.0 * (t + kField.phi())))
              .epsilon(1e-14));
  }
  FieldParams shifted(kField.g0M(), 1.0, kField.phi() + 0.5 * kPi, 100.0);
  const BeamSignalComponents cs = beam_signal_components(b, shifted);
  CHECK(cs.dc == doctest::Approx(c.dc).epsilon(1e-13));
  CHECK(cs.amplitude == doctest::Approx(c.amplitude).epsilon(1e-13));
  for (double t : {0.3, 1.6}) {
    const double osc = beam_signal(b, kField, t) - c.dc;
    const double osc_shift = beam_signal(b, shifted, t) - cs.dc;
    CHECK(osc_shift == doctest::Approx(-osc).epsilon(1e-10));
  }
}

TEST_CASE("velocity spread attenuates but never exceeds the mono amplitude") {
  const BeamParams b = make_beam();
  const double mono_amp = kField.eta0();  // sin(area) = 1 at v = u
  double prev = mono_amp;
  for (double width : {0.05, 0.2, 0.5}) {
    const BeamSignalComponents c = beam_signal_components(
        b, kField, b.u() * (1.0 - width), b.u() * (1.0 + width));
    CHECK(c.amplitude <= prev + 1e-12);
    prev = c.amplitude;
  }
  const BeamSignalComponents full = beam_signal_components(b, kField);
  CHECK(full.amplitude <= prev + 1e-12);
  CHECK(full.amplitude < mono_amp);
  CHECK(full.amplitude > 0.0);
}

TEST_CASE("lock-in dc component") {
  const BeamParams b = make_beam();
  const BeamSignalComponents c = beam_signal_components(b, kField);

  const double dc0 = lock_in_dc(b, kField, 0.0);
  CHECK(dc0 == doctest::Approx(0.5 * c.amplitude).epsilon(1e-10));
  CHECK(std::abs(lock_in_dc(b, kField, 0.5 * kPi)) <= 1e-12);

  for (double theta : {0.0, 0.5, 1.1, 2.0, 2.8}) {
    CHECK(lock_in_dc(b, kField, theta) / dc0 ==
          doctest::Approx(std::cos(theta)).epsilon(1e-6));
    CHECK(std::abs(lock_in_dc(b, kField, theta) +
                   lock_in_dc(b, kField, theta + kPi)) <= 1e-13);
  }

  // reference amplitude scales linearly
  CHECK(lock_in_dc(b, kField, 0.4, 64.0, 2.5) ==
        doctest::Approx(2.5 * lock_in_dc(b, kField, 0.4)).epsilon(1e-12));

  CHECK_THROWS_AS(lock_in_dc(b, kField, 0.0, 10.5), WindowError);
  CHECK_THROWS_AS(lock_in_dc(b, kField, 0.0, 0.0), WindowError);
  CHECK_THROWS_AS(lock_in_dc(b, kField, 0.0, -3.0), WindowError);
}

TEST_CASE("windowed components validate their window") {
  const BeamParams b = make_beam();
  CHECK_THROWS_AS(beam_signal_components(b, kField, 1.5, 1.5), DomainError);
  CHECK_THROWS_AS(beam_signal_components(b, kField, -1.0, 2.0), DomainError);
}
