#pragma once

#include <cstddef>
#include <vector>

namespace slqft {

/// Gauss-Legendre rule on [-1, 1]. Nodes ascending, weights positive.
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};

/// Returns the n-point rule from a process-wide cache. Thread safe.
const GaussRule& gauss_legendre(std::size_t n);

/// Nodes/weights mapped to [a, b].
GaussRule gauss_legendre_on(std::size_t n, double a, double b);

}  // namespace slqft
