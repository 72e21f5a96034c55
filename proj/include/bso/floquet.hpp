#pragma once

#include <array>
#include <complex>
#include <vector>

#include "bso/dynamics.hpp"
#include "bso/field.hpp"
#include "bso/state.hpp"

namespace bso {

// Six retained Fourier modes of the rotating-frame amplitudes,
//   C0~ = sum_n a_n e^{n(-i2wt - i2phi)},   C1~ = sum_n b_n e^{n(-i2wt - i2phi)},
// truncated to n in {-1, 0, +1}.
struct FloquetState {
  std::array<std::complex<double>, 3> a{};  // a_{-1}, a_0, a_{+1}
  std::array<std::complex<double>, 3> b{};

  std::complex<double> a_mode(int n) const { return a[(std::size_t)(n + 1)]; }
  std::complex<double> b_mode(int n) const { return b[(std::size_t)(n + 1)]; }
};

struct FloquetTrajectory {
  std::vector<double> times;
  std::vector<FloquetState> states;
  FieldParams params;

  std::size_t size() const { return times.size(); }
};

// Numerical solution of the truncated six-mode system from a_0 = 1:
//   da_0/dt    =            i g (b_0 + b_{-1}) / 2
//   db_0/dt    =            i g (a_0 + a_{+1}) / 2
//   da_{+1}/dt = +i2w a_{+1} + i g (b_{+1} + b_0) / 2
//   db_{+1}/dt = +i2w b_{+1} + i g a_{+1} / 2
//   da_{-1}/dt = -i2w a_{-1} + i g b_{-1} / 2
//   db_{-1}/dt = -i2w b_{-1} + i g (a_{-1} + a_0) / 2
// The Bloch-Siegert counter-term, when enabled, is applied uniformly to all
// a_n (-iD/2) and b_n (+iD/2), which is exactly the diagonal counter-term on
// the resummed amplitudes.
FloquetTrajectory integrate_floquet(const FieldParams& p, double t_end,
                                    double dt, const IntegrateOptions& opts = {});
FloquetTrajectory integrate_floquet(const FieldParams& p, double t_end);

// Mode resummation at time t (rotating frame).
StateAmplitudes resum_modes(const FloquetState& f, double t,
                            const FieldParams& p);

// Closed-form adiabatic-elimination solution: with T = g0'(t) t / 2,
//   a_0 = cos T,  b_0 = i sin T,  a_{+1} = -i eta(t) sin T,
//   b_{-1} = eta(t) cos T,  a_{-1} = b_{+1} = 0.
FloquetState adiabatic_modes(const FieldParams& p, double t);

}  // namespace bso
