#pragma once

#include <cstddef>
#include <vector>

namespace vinemeta {

/// Gauss-Legendre rule mapped to an interval. Nodes are ascending.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }
};

/// n-point Gauss-Legendre rule on [a, b]; n >= 1.
QuadratureRule gauss_legendre(std::size_t n, double a = -1.0, double b = 1.0);

/// n-point rule on the unit interval, the form used by the likelihood cubature.
inline QuadratureRule gauss_legendre_unit(std::size_t n) { return gauss_legendre(n, 0.0, 1.0); }

}  // namespace vinemeta
