#pragma once

// Quadrature on the reference simplex and on intervals. Triangle rules of
// degree >= 3 are generated from tensor Gauss-Legendre through the collapsed
// square (Duffy) map, which keeps every weight positive at any degree.

#include <array>
#include <vector>

namespace pflow {

struct GaussLegendre {
  std::vector<double> nodes;    // on [0, 1]
  std::vector<double> weights;  // sum to 1

  /// n-point rule, exact for polynomials of degree 2n-1.
  static GaussLegendre rule(int points);
};

struct QuadratureRule {
  int degree = 0;                               // declared polynomial exactness
  std::vector<std::array<double, 3>> points;    // barycentric coordinates
  std::vector<double> weights;                  // sum to 1/2 (reference area)

  /// Cached rule for the reference triangle, exact at least to `degree`.
  static const QuadratureRule& triangle(int degree);
};

}  // namespace pflow
