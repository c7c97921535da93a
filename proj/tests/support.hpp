#pragma once

// Test-only oracles. These stay independent of the library code paths they
// are used to check: integration is done by adaptive Simpson, maximisation
// by golden section, derivatives by central differences.

#include <cmath>
#include <functional>
#include <random>

#include "pflow/structure.hpp"
#include "pflow/tensor.hpp"

namespace pflow::testing {

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                                   double fa, double fm, double fb, double whole, double tol,
                                   int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-12) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 40);
}

/// Numeric Legendre conjugate sup_{s>=0} (t*s - phi_a(s)) by bracketing the
/// maximiser and golden-section refinement.
inline double numeric_conjugate(const pflow::StructureParams& sp, double a, double t,
                                int iters = 200) {
  auto g = [&](double s) { return t * s - pflow::shifted_phi_value(sp, a, s); };
  double hi = 1.0;
  while (pflow::shifted_phi_prime(sp, a, hi) < t && hi < 1e300) hi *= 2.0;
  double lo = 0.0;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double g1 = g(x1), g2 = g(x2);
  for (int i = 0; i < iters; ++i) {
    if (g1 < g2) {
      lo = x1;
      x1 = x2;
      g1 = g2;
      x2 = lo + gr * (hi - lo);
      g2 = g(x2);
    } else {
      hi = x2;
      x2 = x1;
      g2 = g1;
      x1 = hi - gr * (hi - lo);
      g1 = g(x1);
    }
  }
  return std::max(0.0, std::max(g1, g2));
}

/// Central finite difference of an arbitrary stress callback in direction Q.
inline pflow::SymTensor fd_stress_derivative(const std::function<pflow::SymTensor(const pflow::Tensor&)>& s,
                                             const pflow::Tensor& P, const pflow::Tensor& Q,
                                             double h) {
  const pflow::Tensor dP = Q * h;
  pflow::SymTensor diff = s(P + dP) - s(P - dP);
  return diff * (1.0 / (2.0 * h));
}

/// The three quantities of the pointwise field equivalence: the second-form
/// contraction along direction i, phi''(|Q|)|d_i Q|^2, and |d_i F(Q)|^2,
/// with the spatial derivatives taken by central differences.
struct FieldTriple {
  double second_form;
  double phi_weighted;
  double f_gradient;
};

inline FieldTriple field_equivalence_triple(const pflow::StructureParams& sp,
                                            const std::function<pflow::SymTensor(const pflow::Vec&)>& field,
                                            const pflow::Vec& x, int i, double h = 1e-5) {
  pflow::Vec e = pflow::Vec::Zero();
  e(i) = h;
  const pflow::SymTensor qp = field(x + e), qm = field(x - e);
  const pflow::SymTensor q0 = field(x);
  pflow::SymTensor dq = (qp - qm) * (1.0 / (2.0 * h));
  const pflow::SymTensor ds = pflow::stress_derivative(sp, q0.m, dq.m);
  pflow::SymTensor df = (pflow::f_map(sp, qp.m) - pflow::f_map(sp, qm.m)) * (1.0 / (2.0 * h));
  return {ds.dot(dq), pflow::phi_second(sp, q0.norm()) * dq.dot(dq), df.dot(df)};
}

/// Deterministic log-uniform scalar in [lo, hi].
inline double log_uniform(std::mt19937_64& eng, double lo, double hi) {
  const double u = static_cast<double>(eng() >> 11) * 0x1.0p-53;
  return std::exp(std::log(lo) + u * (std::log(hi) - std::log(lo)));
}

}  // namespace pflow::testing
