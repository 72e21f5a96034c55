#pragma once

#include "bso/field.hpp"
#include "bso/state.hpp"

namespace bso {

struct IntegrateOptions {
  int sample_stride = 10;  // store every n-th step (plus the endpoint)
  // Compensate with the saturated shift Delta(inf) instead of tracking
  // Delta(t). Only relevant when the field has compensate_bs_shift set.
  bool static_bs_compensation = false;
};

// Default fixed step min(1/omega, 1/g0M) / 500 in normalized units.
double default_step(const FieldParams& p);

// Rotating-frame integration of the full (counter-rotating term kept)
// Schroedinger equations from (C0~, C1~) = (1, 0):
//   dC0~/dt = +i (g0(t)/2) [1 + e^{-i(2wt+2phi)}] C1~
//   dC1~/dt = +i (g0(t)/2) [1 + e^{+i(2wt+2phi)}] C0~
// with an optional diagonal counter-term (+D/2, -D/2) cancelling the
// Bloch-Siegert shift when p.compensate_bs_shift() is set.
Trajectory integrate_full(const FieldParams& p, double t_end, double dt,
                          const IntegrateOptions& opts = {});
Trajectory integrate_full(const FieldParams& p, double t_end);

// Same initial condition with the counter-rotating term dropped:
//   dC0~/dt = +i (g0(t)/2) C1~,  dC1~/dt = +i (g0(t)/2) C0~.
Trajectory integrate_rwa(const FieldParams& p, double t_end, double dt,
                         const IntegrateOptions& opts = {});
Trajectory integrate_rwa(const FieldParams& p, double t_end);

// Inverse rotating-wave transformation: C0 = C0~, C1 = e^{-i(wt+phi)} C1~.
StateAmplitudes to_lab_frame(const StateAmplitudes& s, double t,
                             const FieldParams& p);

}  // namespace bso
