#pragma once

// Constitutive algebra for stresses with (p,delta)-structure: the scalar
// N-function phi and its shifted family, the canonical stress S and its
// directional derivative, the quasi-norm map F, and empirical checkers for
// the coercivity/growth conditions and the nonlinear equivalences.

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pflow/tensor.hpp"

namespace pflow {

/// Raised where a formula is evaluated at a genuinely singular point
/// (delta = 0, p < 2, vanishing symmetric part) and clamping is disabled.
class SingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Magnitudes below this are clamped wherever a formula divides by the
/// strain-rate magnitude. S itself extends continuously by S(0) = 0; its
/// derivative does not when delta = 0 and p < 2.
inline constexpr double kStrainClamp = 1e-12;

struct StructureParams {
  double p = 2.0;        // growth exponent, > 1
  double delta = 0.0;    // degeneracy shift, >= 0
  double epsilon = 0.0;  // weight of the linear perturbation eps*Q + S(Q)

  double p_conjugate() const { return p / (p - 1.0); }
  bool degenerate() const { return delta == 0.0 && p < 2.0; }
  void validate() const;  // throws std::invalid_argument
};

// ---------------------------------------------------------------------------
// Scalar N-function family: phi'(t) = (delta + t)^(p-2) * t.
// phi is evaluated in closed form (antiderivative), not by quadrature.
// ---------------------------------------------------------------------------

struct PhiValues {
  double value;
  double first;
  double second;
};

/// phi, phi', phi'' at t >= 0. Throws std::domain_error for t < 0 and
/// SingularityError for the phi'' request at (delta = 0, p < 2, t = 0).
PhiValues phi_family(const StructureParams& sp, double t);

double phi(const StructureParams& sp, double t);
double phi_prime(const StructureParams& sp, double t);
double phi_second(const StructureParams& sp, double t);

struct ShiftedPhiValues {
  double value;
  double first;
};

/// Shifted N-function phi_a: phi_a'(t) = phi'(a+t) * t/(a+t). For the
/// canonical phi this collapses to phi with delta replaced by delta + a,
/// which is what is evaluated here.
ShiftedPhiValues shifted_phi(const StructureParams& sp, double a, double t);
double shifted_phi_value(const StructureParams& sp, double a, double t);
double shifted_phi_prime(const StructureParams& sp, double a, double t);

/// Closed-form equivalent ((delta+a)^(p-1) + t)^(p'-2) * t^2 of the Legendre
/// conjugate of phi_a; agrees with the true conjugate up to fixed constants.
double shifted_conjugate(const StructureParams& sp, double a, double t);

// ---------------------------------------------------------------------------
// Tensor-valued maps.
// ---------------------------------------------------------------------------

/// Canonical stress S(P) = (delta + |P^sym|)^(p-2) P^sym + epsilon P^sym.
SymTensor stress(const StructureParams& sp, const Tensor& P);

/// Coefficients of the directional derivative
///   DS(P)[B] = tangential * B + radial_excess * (direction . B) * direction,
/// with direction = P^sym / |P^sym| (zero at the origin). tangential
/// includes the epsilon perturbation.
struct TangentCoefficients {
  double tangential;
  double radial_excess;
  SymTensor direction;
};
TangentCoefficients stress_tangent(const StructureParams& sp, const Tensor& P,
                                   bool clamp = true);

/// DS(P)[Q], symmetric and linear in Q. Throws SingularityError when
/// clamp = false at a degenerate point.
SymTensor stress_derivative(const StructureParams& sp, const Tensor& P, const Tensor& Q,
                            bool clamp = true);

/// F(P) = (delta + |P^sym|)^((p-2)/2) P^sym.
SymTensor f_map(const StructureParams& sp, const Tensor& P);

// ---------------------------------------------------------------------------
// Empirical structure checks.
// ---------------------------------------------------------------------------

using StressFn = std::function<SymTensor(const Tensor&)>;
using TensorPair = std::pair<Tensor, Tensor>;

struct StructureViolation {
  Tensor P;
  Tensor Q;
  double coercivity_ratio;
  double growth_ratio;
};

/// Finite-difference estimates of the structure constants: the coercivity
/// ratio is [sum d_kl S_ij (P) Q_ij Q_kl] / [(delta+|P^sym|)^(p-2) |Q^sym|^2],
/// the growth ratio max_ijkl |d_kl S_ij(P)| / (delta+|P^sym|)^(p-2).
/// For a stress that really has the declared (p,delta)-structure both
/// brackets stay within scale-independent constants.
struct StructureReport {
  double min_coercivity_ratio = 0.0;
  double max_coercivity_ratio = 0.0;
  double min_growth_ratio = 0.0;
  double max_growth_ratio = 0.0;
  long sample_count = 0;
  std::vector<StructureViolation> violations;

  /// Empirical C0 > 0 and both ratio brackets within the given spread.
  bool passed(double max_bracket_spread = 1e4) const;
};

StructureReport check_structure(const StressFn& stress_fn, const StructureParams& sp,
                                std::span<const TensorPair> samples,
                                double fd_step = 1e-6);

/// Min/max over samples of the three equivalence ratios of the monotonicity
/// product against |F(P)-F(Q)|^2, phi_{|P^sym|}(|P^sym-Q^sym|) and the
/// phi'-based distance. Samples with P^sym = Q^sym are skipped.
struct RatioStats {
  double r1_min = 0.0, r1_max = 0.0;
  double r2_min = 0.0, r2_max = 0.0;
  double r3_min = 0.0, r3_max = 0.0;
  long used = 0;
  long skipped = 0;
};

RatioStats equivalence_probe(const StructureParams& sp, std::span<const TensorPair> samples);

// ---------------------------------------------------------------------------
// Deterministic sampling and computed inequality constants.
// ---------------------------------------------------------------------------

/// Seeded tensor pairs with entries uniform on [-1,1], rescaled through the
/// magnitude cycle {1e-4, 1, 1e4}. Deterministic for a fixed seed.
std::vector<TensorPair> sample_tensor_pairs(std::uint64_t seed, int count);
std::vector<Tensor> sample_tensors(std::uint64_t seed, int count);

/// Computed constant c_eps for the Young inequality
///   t*s <= eps*phi_a(t) + c_eps*(phi_a)^*(s)
/// obtained by a deterministic sweep over a log grid in (a, s) with the
/// maximisation over t solved exactly, plus grid-resolution headroom.
double young_constant(const StructureParams& sp, double eps, int grid = 120);

/// Computed constant c_eps for the shift-change inequality
///   phi_{b}(t) <= c_eps*phi_{a}(t) + eps*|F(B)-F(A)|^2, |A|=a, |B|=b,
/// from a sweep over (a, b, t); the worst tensor orientation for fixed
/// magnitudes is colinear, so scalar magnitudes suffice.
double shift_change_constant(const StructureParams& sp, double eps, int grid = 80);

}  // namespace pflow
