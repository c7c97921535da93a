#pragma once

#include <Eigen/Dense>

namespace pflow {

// Spatial dimension. The data model is written for general d; 2 is the
// default build.
inline constexpr int kDim = 2;

using Vec = Eigen::Matrix<double, kDim, 1>;
using Tensor = Eigen::Matrix<double, kDim, kDim>;

/// Symmetric d x d tensor. Built through sym() so that m(i,j) == m(j,i)
/// holds exactly, not just up to rounding.
struct SymTensor {
  Tensor m = Tensor::Zero();

  double norm() const { return m.norm(); }  // Frobenius
  double dot(const SymTensor& other) const { return (m.array() * other.m.array()).sum(); }
  double dot(const Tensor& other) const { return (m.array() * other.array()).sum(); }

  SymTensor operator+(const SymTensor& o) const { return {m + o.m}; }
  SymTensor operator-(const SymTensor& o) const { return {m - o.m}; }
  SymTensor operator*(double s) const { return {m * s}; }
  SymTensor& operator+=(const SymTensor& o) {
    m += o.m;
    return *this;
  }
};

inline SymTensor operator*(double s, const SymTensor& t) { return {t.m * s}; }

// 0.5*(p_ij + p_ji) is invariant under swapping i and j, so the result is
// exactly symmetric entry by entry.
inline SymTensor sym(const Tensor& p) { return SymTensor{0.5 * (p + p.transpose())}; }
inline const SymTensor& sym(const SymTensor& p) { return p; }

inline double tensor_dot(const Tensor& a, const Tensor& b) {
  return (a.array() * b.array()).sum();
}

}  // namespace pflow
