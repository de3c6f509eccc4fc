#pragma once

#include <functional>
#include <vector>

namespace t4 {

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1].
GaussRule gauss_legendre(int n);

/// Composite Simpson on an even number of uniform intervals of width h.
double simpson(const std::vector<double>& samples, double h);

}  // namespace t4
