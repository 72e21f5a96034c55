#pragma once

#include <array>
#include <complex>
#include <cstddef>

namespace bso::detail {

// One classical fourth-order Runge-Kutta step for a complex N-vector.
// Rhs signature: void(double t, const std::array<...>& y, std::array<...>& dy).
template <std::size_t N, class Rhs>
void rk4_step(Rhs&& rhs, double t, double dt, std::array<std::complex<double>, N>& y) {
  using Vec = std::array<std::complex<double>, N>;
  Vec k1, k2, k3, k4, tmp;

  rhs(t, y, k1);
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
  rhs(t + 0.5 * dt, tmp, k2);
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
  rhs(t + 0.5 * dt, tmp, k3);
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + dt * k3[i];
  rhs(t + dt, tmp, k4);

  const double w = dt / 6.0;
  for (std::size_t i = 0; i < N; ++i)
    y[i] += w * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

}  // namespace bso::detail
