#include "pflow/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace pflow {

GaussLegendre GaussLegendre::rule(int points) {
  if (points < 1) throw std::invalid_argument("Gauss rule needs at least one point");
  GaussLegendre g;
  g.nodes.resize(points);
  g.weights.resize(points);
  // Newton iteration on P_n over [-1,1], then map to [0,1].
  for (int i = 0; i < points; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (points + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      if (points == 1) p1 = x;
      for (int k = 2; k <= points; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = points * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    g.nodes[i] = 0.5 * (x + 1.0);
    g.weights[i] = 0.5 * w;
  }
  return g;
}

namespace {

QuadratureRule make_triangle_rule(int degree) {
  QuadratureRule r;
  r.degree = degree;
  if (degree <= 1) {
    r.points = {{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}};
    r.weights = {0.5};
    return r;
  }
  if (degree == 2) {
    r.points = {{2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0},
                {1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0},
                {1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0}};
    r.weights = {1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0};
    return r;
  }
  // Duffy map x = u, y = v(1-u): a monomial x^a y^b pulls back to degree
  // a+b+1 in u, so k points need 2k-1 >= degree+1.
  const int k = (degree + 3) / 2;
  const GaussLegendre g = GaussLegendre::rule(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      const double u = g.nodes[i];
      const double v = g.nodes[j];
      const double x = u;
      const double y = v * (1.0 - u);
      r.points.push_back({1.0 - x - y, x, y});
      r.weights.push_back(g.weights[i] * g.weights[j] * (1.0 - u));
    }
  return r;
}

}  // namespace

const QuadratureRule& QuadratureRule::triangle(int degree) {
  static std::map<int, QuadratureRule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(degree);
  if (it == cache.end()) it = cache.emplace(degree, make_triangle_rule(degree)).first;
  return it->second;
}

}  // namespace pflow
