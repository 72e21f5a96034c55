#include "bso/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "bso/detail/rk4.hpp"

namespace bso {

namespace {

using Cd = std::complex<double>;
using Vec2 = std::array<Cd, 2>;

constexpr Cd kI{0.0, 1.0};

struct StepPlan {
  long n;
  double dt;
};

StepPlan plan_steps(const FieldParams& p, double t_end, double dt) {
  if (!(t_end > 0.0)) throw DomainError("integrate: t_end must be > 0");
  if (!(dt > 0.0)) throw StepSizeError("integrate: dt must be > 0");
  const double dt_max = (1.0 / p.omega()) / 200.0;
  if (dt > dt_max)
    throw StepSizeError("integrate: dt exceeds (1/omega)/200; the 2w term "
                        "would be unresolved");
  const long n = std::max(1L, (long)std::ceil(t_end / dt - 1e-12));
  return {n, t_end / n};
}

template <class Rhs>
Trajectory integrate_two_level(const FieldParams& p, double t_end, double dt,
                               const IntegrateOptions& opts, Rhs&& rhs) {
  const auto [n, h] = plan_steps(p, t_end, dt);
  const int stride = std::max(1, opts.sample_stride);

  Trajectory traj{{}, {}, p, 0.0};
  traj.times.reserve((std::size_t)(n / stride) + 2);
  traj.states.reserve((std::size_t)(n / stride) + 2);

  Vec2 y{Cd{1.0, 0.0}, Cd{0.0, 0.0}};
  auto sample = [&](long i, const Vec2& v) {
    StateAmplitudes s{v[0], v[1], Frame::Rotating};
    traj.max_norm_drift =
        std::max(traj.max_norm_drift, std::abs(s.norm2() - 1.0));
    traj.times.push_back(i * h);
    traj.states.push_back(s);
  };

  sample(0, y);
  for (long i = 0; i < n; ++i) {
    detail::rk4_step<2>(rhs, i * h, h, y);
    if ((i + 1) % stride == 0 || i + 1 == n) sample(i + 1, y);
  }
  traj.times.back() = t_end;  // guard against i*h rounding at the endpoint
  return traj;
}

}  // namespace

double default_step(const FieldParams& p) {
  const double t_fast =
      p.g0M() > 0.0 ? std::min(1.0 / p.omega(), 1.0 / p.g0M()) : 1.0 / p.omega();
  return t_fast / 500.0;
}

Trajectory integrate_full(const FieldParams& p, double t_end, double dt,
                          const IntegrateOptions& opts) {
  const bool comp = p.compensate_bs_shift();
  const bool stat = opts.static_bs_compensation;
  const double delta_inf = p.g0M() * p.g0M() / 4.0;

  auto rhs = [&](double t, const Vec2& y, Vec2& dy) {
    const double g = switching_profile(p, t);
    const double chi = 2.0 * (t + p.phi());  // omega = 1
    const Cd e{std::cos(chi), -std::sin(chi)};
    dy[0] = kI * (0.5 * g) * (1.0 + e) * y[1];
    dy[1] = kI * (0.5 * g) * (1.0 + std::conj(e)) * y[0];
    if (comp) {
      const double d = stat ? delta_inf : g * g / 4.0;
      dy[0] += -kI * (0.5 * d) * y[0];
      dy[1] += +kI * (0.5 * d) * y[1];
    }
  };
  return integrate_two_level(p, t_end, dt, opts, rhs);
}

Trajectory integrate_full(const FieldParams& p, double t_end) {
  return integrate_full(p, t_end, default_step(p));
}

Trajectory integrate_rwa(const FieldParams& p, double t_end, double dt,
                         const IntegrateOptions& opts) {
  auto rhs = [&](double t, const Vec2& y, Vec2& dy) {
    const double g = switching_profile(p, t);
    dy[0] = kI * (0.5 * g) * y[1];
    dy[1] = kI * (0.5 * g) * y[0];
  };
  return integrate_two_level(p, t_end, dt, opts, rhs);
}

Trajectory integrate_rwa(const FieldParams& p, double t_end) {
  return integrate_rwa(p, t_end, default_step(p));
}

StateAmplitudes to_lab_frame(const StateAmplitudes& s, double t,
                             const FieldParams& p) {
  if (s.frame != Frame::Rotating)
    throw FrameError("to_lab_frame: input must be in the rotating frame");
  const double th = t + p.phi();  // omega = 1
  const Cd phase{std::cos(th), -std::sin(th)};
  return {s.c0, phase * s.c1, Frame::Lab};
}

}  // namespace bso
