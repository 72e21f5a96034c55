#include "bso/quadrature.hpp"

#include <cmath>

#include "bso/errors.hpp"

namespace bso {

// Newton iteration on the Legendre polynomial recurrence.
GaussRule gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: n must be >= 1");
  GaussRule rule;
  rule.x.resize((std::size_t)n);
  rule.w.resize((std::size_t)n);

  const double eps = 1e-15;
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= eps) break;
    }
    rule.x[(std::size_t)i] = -z;
    rule.x[(std::size_t)(n - 1 - i)] = z;
    rule.w[(std::size_t)i] = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.w[(std::size_t)(n - 1 - i)] = rule.w[(std::size_t)i];
  }
  return rule;
}

}  // namespace bso
