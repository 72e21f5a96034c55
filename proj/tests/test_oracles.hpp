#pragma once

// Test-only reference integrator, independent of the library's quadrature
// path (adaptive Simpson with interval-based error control).

#include <cmath>
#include <functional>

namespace oracle {

inline double simpson(const std::function<double(double)>& f, double a,
                      double b) {
  const double m = 0.5 * (a + b);
  return (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b));
}

inline double adaptive_step(const std::function<double(double)>& f, double a,
                            double b, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double left = simpson(f, a, m);
  const double right = simpson(f, m, b);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_step(f, a, m, left, 0.5 * tol, depth - 1) +
         adaptive_step(f, m, b, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-12, int max_depth = 40) {
  return adaptive_step(f, a, b, simpson(f, a, b), tol, max_depth);
}

}  // namespace oracle
