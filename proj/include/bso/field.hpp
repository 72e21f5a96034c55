#pragma once

#include <string>
#include <vector>

#include "bso/errors.hpp"

namespace bso {

// Parameters of the resonant drive B = B0 cos(w t + phi) acting on the
// two-level transition, with the exponential turn-on
//   g0(t) = g0M [1 - exp(-t/tau_sw)].
//
// All values are normalized on construction so that the transition/drive
// angular frequency is 1: frequencies are stored in units of omega, times in
// units of 1/omega. omega_scale() keeps the original frequency for I/O.
class FieldParams {
 public:
  // tau_sw == 0 selects the instantaneous turn-on limit g0(t) = g0M.
  FieldParams(double g0M, double omega, double phi, double tau_sw,
              bool compensate_bs_shift = true);

  double g0M() const { return g0m_; }        // peak Rabi frequency / omega
  double omega() const { return 1.0; }       // by construction
  double phi() const { return phi_; }        // initial field phase [rad]
  double tau_sw() const { return tau_sw_; }  // switching constant * omega
  double eta0() const { return g0m_ / 4.0; }
  bool compensate_bs_shift() const { return compensate_bs_; }
  double omega_scale() const { return omega_scale_; }

  // Soft adiabaticity diagnostics (tau_sw*omega < 50 or tau_sw*g0M < 10).
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  double g0m_;
  double phi_;
  double tau_sw_;
  double omega_scale_;
  bool compensate_bs_;
  std::vector<std::string> warnings_;
};

// Envelope g0(t); monotone nondecreasing, -> g0M as t -> inf.
double switching_profile(const FieldParams& p, double t);

// Accumulated pulse area  integral_0^t g0(s) ds, evaluated in closed form.
double pulse_area(const FieldParams& p, double t);
double pulse_area(double g0m, double tau_sw, double t);

// Time-averaged Rabi frequency g0'(t) = (1/t) integral_0^t g0(s) ds.
// Defined by the integral; t must be > 0 (the t->0+ limit is 0).
double effective_rabi(const FieldParams& p, double t);

// Perturbation parameter eta(t) = g0(t) / (4 omega).
double eta(const FieldParams& p, double t);

// Bloch-Siegert shift Delta(t) = g0(t)^2 / (4 omega).
double bloch_siegert_shift(const FieldParams& p, double t);

}  // namespace bso
