#include "bso/field.hpp"

#include <cmath>
#include <limits>

namespace bso {

namespace {

// x - 1 + exp(-x), evaluated without cancellation for small x.
double area_kernel(double x) {
  if (x < 0.5) {
    // sum_{k>=2} (-1)^k x^k / k!, truncated at k = 13 (rel. error < 1e-14)
    double term = x * x / 2.0;
    double sum = term;
    for (int k = 3; k <= 13; ++k) {
      term *= -x / k;
      sum += term;
    }
    return sum;
  }
  return x - 1.0 + std::exp(-x);
}

}  // namespace

FieldParams::FieldParams(double g0M, double omega, double phi, double tau_sw,
                         bool compensate_bs_shift)
    : phi_(phi), omega_scale_(omega), compensate_bs_(compensate_bs_shift) {
  if (!(omega > 0.0) || !std::isfinite(omega))
    throw DomainError("FieldParams: omega must be > 0");
  if (!(g0M >= 0.0) || !std::isfinite(g0M))
    throw DomainError("FieldParams: g0M must be >= 0");
  if (!(tau_sw >= 0.0) || !std::isfinite(tau_sw))
    throw DomainError("FieldParams: tau_sw must be >= 0");
  if (!std::isfinite(phi)) throw DomainError("FieldParams: phi must be finite");

  g0m_ = g0M / omega;
  tau_sw_ = tau_sw * omega;

  if (!(g0m_ / 4.0 < 0.25))
    throw DomainError("FieldParams: eta0 = g0M/(4 omega) must be < 0.25");

  if (tau_sw_ < 50.0)
    warnings_.push_back("adiabaticity: tau_sw*omega = " +
                        std::to_string(tau_sw_) + " is below 50");
  if (g0m_ > 0.0 && tau_sw_ * g0m_ < 10.0)
    warnings_.push_back("adiabaticity: tau_sw*g0M = " +
                        std::to_string(tau_sw_ * g0m_) + " is below 10");
}

double switching_profile(const FieldParams& p, double t) {
  if (t < 0.0) throw DomainError("switching_profile: t must be >= 0");
  if (p.tau_sw() == 0.0) return p.g0M();
  return p.g0M() * (-std::expm1(-t / p.tau_sw()));
}

double pulse_area(double g0m, double tau_sw, double t) {
  if (t < 0.0) throw DomainError("pulse_area: t must be >= 0");
  if (tau_sw == 0.0) return g0m * t;
  return g0m * tau_sw * area_kernel(t / tau_sw);
}

double pulse_area(const FieldParams& p, double t) {
  return pulse_area(p.g0M(), p.tau_sw(), t);
}

double effective_rabi(const FieldParams& p, double t) {
  if (!(t > 0.0)) throw DomainError("effective_rabi: t must be > 0");
  return pulse_area(p, t) / t;
}

double eta(const FieldParams& p, double t) {
  return switching_profile(p, t) / 4.0;
}

double bloch_siegert_shift(const FieldParams& p, double t) {
  const double g = switching_profile(p, t);
  return g * g / 4.0;
}

}  // namespace bso
