#include "bso/floquet.hpp"

#include <algorithm>
#include <cmath>

#include "bso/detail/rk4.hpp"

namespace bso {

namespace {

using Cd = std::complex<double>;
using Vec6 = std::array<Cd, 6>;  // a_{-1}, a_0, a_{+1}, b_{-1}, b_0, b_{+1}

constexpr Cd kI{0.0, 1.0};

}  // namespace

FloquetTrajectory integrate_floquet(const FieldParams& p, double t_end,
                                    double dt, const IntegrateOptions& opts) {
  if (!(t_end > 0.0)) throw DomainError("integrate_floquet: t_end must be > 0");
  if (!(dt > 0.0)) throw StepSizeError("integrate_floquet: dt must be > 0");
  if (dt > (1.0 / p.omega()) / 200.0)
    throw StepSizeError("integrate_floquet: dt exceeds (1/omega)/200");

  const long n = std::max(1L, (long)std::ceil(t_end / dt - 1e-12));
  const double h = t_end / n;
  const int stride = std::max(1, opts.sample_stride);

  const bool comp = p.compensate_bs_shift();
  const bool stat = opts.static_bs_compensation;
  const double delta_inf = p.g0M() * p.g0M() / 4.0;
  const double two_w = 2.0 * p.omega();

  auto rhs = [&](double t, const Vec6& y, Vec6& dy) {
    const double g = switching_profile(p, t);
    const Cd cpl = kI * (0.5 * g);
    const Cd& am1 = y[0];
    const Cd& a0 = y[1];
    const Cd& ap1 = y[2];
    const Cd& bm1 = y[3];
    const Cd& b0 = y[4];
    const Cd& bp1 = y[5];

    dy[0] = -kI * two_w * am1 + cpl * bm1;
    dy[1] = cpl * (b0 + bm1);
    dy[2] = kI * two_w * ap1 + cpl * (bp1 + b0);
    dy[3] = -kI * two_w * bm1 + cpl * (am1 + a0);
    dy[4] = cpl * (a0 + ap1);
    dy[5] = kI * two_w * bp1 + cpl * ap1;

    if (comp) {
      const Cd d = kI * (0.5 * (stat ? delta_inf : g * g / 4.0));
      for (int k = 0; k < 3; ++k) dy[k] -= d * y[k];
      for (int k = 3; k < 6; ++k) dy[k] += d * y[k];
    }
  };

  FloquetTrajectory traj{{}, {}, p};
  traj.times.reserve((std::size_t)(n / stride) + 2);
  traj.states.reserve((std::size_t)(n / stride) + 2);

  Vec6 y{};
  y[1] = Cd{1.0, 0.0};

  auto sample = [&](long i, const Vec6& v) {
    FloquetState f;
    f.a = {v[0], v[1], v[2]};
    f.b = {v[3], v[4], v[5]};
    traj.times.push_back(i * h);
    traj.states.push_back(f);
  };

  sample(0, y);
  for (long i = 0; i < n; ++i) {
    detail::rk4_step<6>(rhs, i * h, h, y);
    if ((i + 1) % stride == 0 || i + 1 == n) sample(i + 1, y);
  }
  traj.times.back() = t_end;
  return traj;
}

FloquetTrajectory integrate_floquet(const FieldParams& p, double t_end) {
  return integrate_floquet(p, t_end, default_step(p));
}

StateAmplitudes resum_modes(const FloquetState& f, double t,
                            const FieldParams& p) {
  const double chi = 2.0 * (p.omega() * t + p.phi());
  const Cd w{std::cos(chi), -std::sin(chi)};  // e^{-i(2wt+2phi)}
  const Cd wc = std::conj(w);
  StateAmplitudes s;
  s.c0 = f.a[1] + f.a[2] * w + f.a[0] * wc;
  s.c1 = f.b[1] + f.b[2] * w + f.b[0] * wc;
  s.frame = Frame::Rotating;
  return s;
}

FloquetState adiabatic_modes(const FieldParams& p, double t) {
  if (!(t > 0.0)) throw DomainError("adiabatic_modes: t must be > 0");
  const double theta = 0.5 * pulse_area(p, t);
  const double et = eta(p, t);
  const double c = std::cos(theta);
  const double s = std::sin(theta);

  FloquetState f;
  f.a[1] = Cd{c, 0.0};
  f.b[1] = Cd{0.0, s};
  f.a[2] = Cd{0.0, -et * s};  // -i eta sin
  f.b[0] = Cd{et * c, 0.0};   // b_{-1} = eta cos
  return f;
}

}  // namespace bso
