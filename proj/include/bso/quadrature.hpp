#pragma once

#include <vector>

namespace bso {

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};

GaussRule gauss_legendre(int n);

}  // namespace bso
