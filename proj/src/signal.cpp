#include "bso/signal.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace bso {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

void require_uniform(const TimeSeries& s, const char* who) {
  if (s.size() < 8) throw DomainError(std::string(who) + ": series too short");
  if (s.t.size() != s.y.size())
    throw DomainError(std::string(who) + ": t/y length mismatch");
  const double dt = (s.t.back() - s.t.front()) / (double)(s.size() - 1);
  if (!(dt > 0.0)) throw DomainError(std::string(who) + ": times not increasing");
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (std::abs(s.t[i] - s.t[i - 1] - dt) > 1e-6 * dt)
      throw DomainError(std::string(who) + ": series must be uniformly sampled");
  }
  for (double v : s.y)
    if (!std::isfinite(v))
      throw DomainError(std::string(who) + ": non-finite sample");
}

// Solve the 3x3 system M x = r by Gaussian elimination with partial pivoting.
// Returns false when M is numerically singular.
bool solve3(double m[3][3], double r[3], double x[3]) {
  int idx[3] = {0, 1, 2};
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int row = col + 1; row < 3; ++row)
      if (std::abs(m[idx[row]][col]) > std::abs(m[idx[piv]][col])) piv = row;
    std::swap(idx[col], idx[piv]);
    const double d = m[idx[col]][col];
    if (std::abs(d) < 1e-300) return false;
    for (int row = col + 1; row < 3; ++row) {
      const double f = m[idx[row]][col] / d;
      for (int k = col; k < 3; ++k) m[idx[row]][k] -= f * m[idx[col]][k];
      r[idx[row]] -= f * r[idx[col]];
    }
  }
  for (int col = 2; col >= 0; --col) {
    double acc = r[idx[col]];
    for (int k = col + 1; k < 3; ++k) acc -= m[idx[col]][k] * x[k];
    x[col] = acc / m[idx[col]][col];
  }
  return true;
}

// Linear LSQ of y on {1, e(t) sin(W t), e(t) cos(W t)}; returns SSR.
// env == nullptr means a unit envelope.
struct LinFit {
  double a, p, q, ssr;
  bool ok;
};

LinFit linear_phase_fit(const TimeSeries& s, const std::vector<double>* env,
                        double omega) {
  const std::size_t n = s.size();
  double m[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
  double r[3] = {0, 0, 0};
  for (std::size_t i = 0; i < n; ++i) {
    const double e = env ? (*env)[i] : 1.0;
    const double u1 = e * std::sin(omega * s.t[i]);
    const double u2 = e * std::cos(omega * s.t[i]);
    const double b[3] = {1.0, u1, u2};
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) m[j][k] += b[j] * b[k];
      r[j] += b[j] * s.y[i];
    }
  }
  double x[3];
  if (!solve3(m, r, x)) return {0, 0, 0, 0, false};
  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = env ? (*env)[i] : 1.0;
    const double model =
        x[0] + e * (x[1] * std::sin(omega * s.t[i]) + x[2] * std::cos(omega * s.t[i]));
    const double d = s.y[i] - model;
    ssr += d * d;
  }
  return {x[0], x[1], x[2], ssr, true};
}

SinusoidFit varpro_fit(const TimeSeries& s, const std::vector<double>* env,
                       double freq_hint, const char* who) {
  require_uniform(s, who);
  if (!(freq_hint > 0.0))
    throw DomainError(std::string(who) + ": freq_hint must be > 0");
  const double span = s.t.back() - s.t.front();
  if (span * freq_hint < 4.0 * kTwoPi)
    throw DomainError(std::string(who) +
                      ": series must span at least 4 periods of freq_hint");

  double omega = freq_hint;
  LinFit fit = linear_phase_fit(s, env, omega);
  if (!fit.ok) throw FitError(std::string(who) + ": degenerate design matrix");

  bool converged = false;
  for (int it = 0; it < 60 && !converged; ++it) {
    // Variable-projection Gauss-Newton step on the frequency: the gradient of
    // the model w.r.t. omega is orthogonalized against the linear basis so
    // the implicit re-solve of (A, P, Q) is accounted for. Without the
    // projection the iteration is only linearly convergent.
    double num = 0.0, den = 0.0;
    double gram[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
    double cross[3] = {0, 0, 0};
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double e = env ? (*env)[i] : 1.0;
      const double sn = std::sin(omega * s.t[i]);
      const double cs = std::cos(omega * s.t[i]);
      const double b[3] = {1.0, e * sn, e * cs};
      const double model = fit.a + fit.p * b[1] + fit.q * b[2];
      const double grad = e * s.t[i] * (fit.p * cs - fit.q * sn);
      num += (s.y[i] - model) * grad;
      den += grad * grad;
      for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) gram[j][k] += b[j] * b[k];
        cross[j] += b[j] * grad;
      }
    }
    if (den < 1e-300) {
      converged = true;  // no oscillatory content; keep the hint
      break;
    }
    double proj[3];
    double cross_rhs[3] = {cross[0], cross[1], cross[2]};  // solve3 mutates
    if (solve3(gram, cross_rhs, proj)) {
      const double reduction =
          proj[0] * cross[0] + proj[1] * cross[1] + proj[2] * cross[2];
      if (den - reduction > 1e-12 * den) den -= reduction;
    }
    double step = num / den;
    if (!std::isfinite(step))
      throw FitError(std::string(who) + ": frequency refinement diverged");

    // backtrack when the step overshoots
    bool accepted = false;
    for (int bt = 0; bt < 30; ++bt) {
      const double trial = omega + step;
      if (trial > 0.0) {
        const LinFit f2 = linear_phase_fit(s, env, trial);
        if (f2.ok && f2.ssr <= fit.ssr * (1.0 + 1e-14)) {
          converged = std::abs(step) <= 1e-12 * omega ||
                      fit.ssr - f2.ssr <= 1e-13 * fit.ssr;
          omega = trial;
          fit = f2;
          accepted = true;
          break;
        }
      }
      step *= 0.5;
      if (std::abs(step) <= 1e-15 * omega) {
        converged = true;
        accepted = true;
        break;
      }
    }
    if (!accepted)
      throw FitError(std::string(who) + ": frequency refinement stalled");
  }
  if (!converged)
    throw FitError(std::string(who) + ": no convergence within 60 iterations");

  SinusoidFit out;
  out.offset = fit.a;
  out.amplitude = std::hypot(fit.p, fit.q);
  out.frequency = omega;
  out.residual_rms = std::sqrt(fit.ssr / (double)s.size());
  double yscale = 0.0;
  for (double v : s.y) yscale = std::max(yscale, std::abs(v));
  if (out.amplitude < 1e-9 * std::max(1.0, yscale)) {
    out.phase = 0.0;
    out.phase_constrained = false;
  } else {
    out.phase = wrap_2pi(std::atan2(fit.q, fit.p));
  }
  return out;
}

void fft_radix2(std::vector<std::complex<double>>& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = -kTwoPi / (double)len;
    const std::complex<double> wl{std::cos(ang), std::sin(ang)};
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w{1.0, 0.0};
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

std::size_t pow2_below(std::size_t n) {
  std::size_t m = 1;
  while (m * 2 <= n) m *= 2;
  return m;
}

}  // namespace

double wrap_2pi(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

double wrap_pi(double x) {
  double r = std::fmod(x, kPi);
  if (r < 0.0) r += kPi;
  return r;
}

double circular_distance(double a, double b, double period) {
  double d = std::fmod(a - b, period);
  if (d < 0.0) d += period;
  return std::min(d, period - d);
}

TimeSeries bso_residual(const Trajectory& traj, const FieldParams& p) {
  TimeSeries out;
  out.t = traj.times;
  out.y.reserve(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double s = std::sin(0.5 * pulse_area(p, traj.times[i]));
    out.y.push_back(traj.population1(i) - s * s);
  }
  return out;
}

TimeSeries slice(const TimeSeries& s, std::size_t first, std::size_t last) {
  if (first >= last || last > s.size())
    throw DomainError("slice: invalid index range");
  TimeSeries out;
  out.t.assign(s.t.begin() + (long)first, s.t.begin() + (long)last);
  out.y.assign(s.y.begin() + (long)first, s.y.begin() + (long)last);
  return out;
}

std::pair<std::size_t, std::size_t> saturated_envelope_window(
    const TimeSeries& s, const FieldParams& p, double max_variation) {
  if (s.size() < 2) throw DomainError("saturated_envelope_window: empty series");
  if (!(max_variation > 0.0 && max_variation < 1.0))
    throw DomainError("saturated_envelope_window: max_variation in (0,1)");

  std::vector<double> env(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    env[i] = eta(p, s.t[i]) * std::sin(pulse_area(p, s.t[i]));

  const std::size_t peak =
      (std::size_t)(std::max_element(env.begin(), env.end()) - env.begin());
  const double floor = env[peak] * (1.0 - max_variation);
  if (!(env[peak] > 0.0))
    throw DomainError("saturated_envelope_window: envelope has no positive peak");

  std::size_t first = peak;
  while (first > 0 && env[first - 1] >= floor) --first;
  std::size_t last = peak + 1;
  while (last < s.size() && env[last] >= floor) ++last;
  return {first, last};
}

SinusoidFit fit_sinusoid(const TimeSeries& s, double freq_hint) {
  return varpro_fit(s, nullptr, freq_hint, "fit_sinusoid");
}

SinusoidFit fit_bso_product(const TimeSeries& s, const FieldParams& p,
                            double freq_hint) {
  std::vector<double> env(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    env[i] = eta(p, s.t[i]) * std::sin(pulse_area(p, s.t[i]));
  return varpro_fit(s, &env, freq_hint, "fit_bso_product");
}

double spectral_bin_width(const TimeSeries& s) {
  require_uniform(s, "spectral_peak");
  const double dt = (s.t.back() - s.t.front()) / (double)(s.size() - 1);
  const std::size_t m = pow2_below(s.size());
  return kTwoPi / ((double)m * dt);
}

double spectral_peak(const TimeSeries& s) {
  require_uniform(s, "spectral_peak");
  if (s.size() < 32) throw DomainError("spectral_peak: series too short");
  const double dt = (s.t.back() - s.t.front()) / (double)(s.size() - 1);
  const std::size_t m = pow2_below(s.size());

  double mean = 0.0;
  for (std::size_t i = 0; i < m; ++i) mean += s.y[i];
  mean /= (double)m;

  std::vector<std::complex<double>> buf(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double hann =
        0.5 * (1.0 - std::cos(kTwoPi * (double)i / (double)(m - 1)));
    buf[i] = {(s.y[i] - mean) * hann, 0.0};
  }
  fft_radix2(buf);

  std::size_t peak = 2;
  double best = 0.0;
  for (std::size_t k = 2; k < m / 2 - 1; ++k) {
    const double mag = std::abs(buf[k]);
    if (mag > best) {
      best = mag;
      peak = k;
    }
  }
  if (best <= 0.0) throw FitError("spectral_peak: empty spectrum");

  // parabolic interpolation on the log magnitude
  const double la = std::log(std::max(std::abs(buf[peak - 1]), 1e-300));
  const double lb = std::log(best);
  const double lc = std::log(std::max(std::abs(buf[peak + 1]), 1e-300));
  double shift = 0.0;
  const double denom = la - 2.0 * lb + lc;
  if (std::abs(denom) > 1e-30) shift = 0.5 * (la - lc) / denom;
  shift = std::clamp(shift, -0.5, 0.5);

  return kTwoPi * ((double)peak + shift) / ((double)m * dt);
}

double estimate_absolute_phase(
    const std::vector<std::pair<double, double>>& pop_vs_phi,
    const FieldParams& p, double tau) {
  if (!(tau > 0.0)) throw DomainError("estimate_absolute_phase: tau must be > 0");
  if (pop_vs_phi.size() < 8)
    throw DomainError("estimate_absolute_phase: need at least 8 phi samples");
  double lo = pop_vs_phi.front().first, hi = lo;
  for (const auto& [phi, pop] : pop_vs_phi) {
    if (!std::isfinite(phi) || !std::isfinite(pop))
      throw DomainError("estimate_absolute_phase: non-finite sample");
    lo = std::min(lo, phi);
    hi = std::max(hi, phi);
  }
  if (hi - lo < kPi / 3.0)
    throw FitError("estimate_absolute_phase: phi samples span too little of [0, pi)");

  // pop = A + P sin(2 phi) + Q cos(2 phi)
  double m[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
  double r[3] = {0, 0, 0};
  for (const auto& [phi, pop] : pop_vs_phi) {
    const double b[3] = {1.0, std::sin(2.0 * phi), std::cos(2.0 * phi)};
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) m[j][k] += b[j] * b[k];
      r[j] += b[j] * pop;
    }
  }
  double x[3];
  if (!solve3(m, r, x))
    throw FitError("estimate_absolute_phase: degenerate phi sampling");

  const double amp = std::hypot(x[1], x[2]);
  if (amp < 1e-14)
    throw FitError("estimate_absolute_phase: no phase-dependent signal");
  if (p.eta0() > 0.0 && amp > 4.0 * p.eta0() + 1e-9)
    throw FitError("estimate_absolute_phase: amplitude inconsistent with eta0");

  // pop = A + amp sin(2 phi + psi), psi = 2 w tau (mod 2pi)
  const double psi = std::atan2(x[2], x[1]);
  return wrap_pi(0.5 * psi);
}

}  // namespace bso
