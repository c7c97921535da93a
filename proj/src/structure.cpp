#include "pflow/structure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace pflow {

namespace {

void require_nonnegative(double x, const char* what) {
  if (!(x >= 0.0)) throw std::domain_error(std::string(what) + " must be >= 0");
}

// Uniform double in [0,1) from the top 53 bits; keeps the stream independent
// of the standard library's distribution implementation.
double uniform01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

Tensor random_tensor(std::mt19937_64& eng, double scale) {
  Tensor t;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) t(i, j) = (2.0 * uniform01(eng) - 1.0) * scale;
  return t;
}

// Radial magnitude of F: |F(A)| = f(|A|) with f(t) = (delta+t)^((p-2)/2) t.
double f_radial(const StructureParams& sp, double t) {
  if (t == 0.0) return 0.0;
  return std::pow(sp.delta + t, 0.5 * (sp.p - 2.0)) * t;
}

}  // namespace

void StructureParams::validate() const {
  if (!(p > 1.0)) throw std::invalid_argument("p must exceed 1");
  if (!(delta >= 0.0)) throw std::invalid_argument("delta must be >= 0");
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be >= 0");
}

// ---------------------------------------------------------------------------
// Scalar phi family.
// ---------------------------------------------------------------------------

double phi_prime(const StructureParams& sp, double t) {
  require_nonnegative(t, "t");
  if (t == 0.0) return 0.0;  // t^(p-1) -> 0 for every p > 1
  return std::pow(sp.delta + t, sp.p - 2.0) * t;
}

double phi(const StructureParams& sp, double t) {
  require_nonnegative(t, "t");
  if (t == 0.0) return 0.0;
  const double p = sp.p;
  const double d = sp.delta;
  if (d == 0.0) return std::pow(t, p) / p;
  // Exact antiderivative; for t << delta it cancels, so switch to the series
  // of (delta+s)^(p-2) s around s = 0.
  if (t <= 1e-4 * d) {
    const double r = t / d;
    return std::pow(d, p - 2.0) * t * t * (0.5 + (p - 2.0) * r / 3.0);
  }
  return (std::pow(d + t, p - 1.0) * ((p - 1.0) * t - d) + std::pow(d, p)) / (p * (p - 1.0));
}

double phi_second(const StructureParams& sp, double t) {
  require_nonnegative(t, "t");
  const double p = sp.p;
  const double d = sp.delta;
  if (d == 0.0 && t == 0.0) {
    if (p < 2.0) throw SingularityError("phi'' is singular at t = 0 for delta = 0, p < 2");
    return p == 2.0 ? 1.0 : 0.0;
  }
  return std::pow(d + t, p - 3.0) * (d + (p - 1.0) * t);
}

PhiValues phi_family(const StructureParams& sp, double t) {
  return {phi(sp, t), phi_prime(sp, t), phi_second(sp, t)};
}

ShiftedPhiValues shifted_phi(const StructureParams& sp, double a, double t) {
  require_nonnegative(a, "a");
  // phi_a'(t) = phi'(a+t) t/(a+t) = (delta+a+t)^(p-2) t for the canonical
  // phi': the shift acts as delta -> delta + a.
  StructureParams shifted{sp.p, sp.delta + a, 0.0};
  return {phi(shifted, t), phi_prime(shifted, t)};
}

double shifted_phi_value(const StructureParams& sp, double a, double t) {
  return shifted_phi(sp, a, t).value;
}

double shifted_phi_prime(const StructureParams& sp, double a, double t) {
  return shifted_phi(sp, a, t).first;
}

double shifted_conjugate(const StructureParams& sp, double a, double t) {
  require_nonnegative(a, "a");
  require_nonnegative(t, "t");
  if (t == 0.0) return 0.0;
  const double base = std::pow(sp.delta + a, sp.p - 1.0);
  return std::pow(base + t, sp.p_conjugate() - 2.0) * t * t;
}

// ---------------------------------------------------------------------------
// Tensor maps.
// ---------------------------------------------------------------------------

SymTensor stress(const StructureParams& sp, const Tensor& P) {
  SymTensor A = sym(P);
  const double t = A.norm();
  double base = sp.delta + t;
  if (base < kStrainClamp) base = kStrainClamp;
  const double coef = std::pow(base, sp.p - 2.0) + sp.epsilon;
  return A * coef;
}

TangentCoefficients stress_tangent(const StructureParams& sp, const Tensor& P, bool clamp) {
  SymTensor A = sym(P);
  const double t = A.norm();
  if (!clamp && sp.degenerate() && t < kStrainClamp)
    throw SingularityError("stress derivative is singular at P^sym = 0 for delta = 0, p < 2");
  const double tc = std::max(t, kStrainClamp);
  const double base = sp.delta + tc;
  const double tangential = std::pow(base, sp.p - 2.0);               // phi'(t)/t
  const double radial = std::pow(base, sp.p - 3.0) * (sp.delta + (sp.p - 1.0) * tc);
  SymTensor direction = A * (t > 0.0 ? 1.0 / tc : 0.0);
  return {tangential + sp.epsilon, radial - tangential, direction};
}

SymTensor stress_derivative(const StructureParams& sp, const Tensor& P, const Tensor& Q,
                            bool clamp) {
  TangentCoefficients c = stress_tangent(sp, P, clamp);
  SymTensor B = sym(Q);
  SymTensor out = B * c.tangential;
  out += c.direction * (c.radial_excess * c.direction.dot(B));
  return out;
}

SymTensor f_map(const StructureParams& sp, const Tensor& P) {
  SymTensor A = sym(P);
  const double t = A.norm();
  double base = sp.delta + t;
  if (base < kStrainClamp) base = kStrainClamp;
  return A * std::pow(base, 0.5 * (sp.p - 2.0));
}

// ---------------------------------------------------------------------------
// Checkers.
// ---------------------------------------------------------------------------

bool StructureReport::passed(double max_bracket_spread) const {
  if (!(min_coercivity_ratio > 0.0)) return false;
  if (!std::isfinite(max_coercivity_ratio) || !std::isfinite(max_growth_ratio)) return false;
  if (max_coercivity_ratio > max_bracket_spread * min_coercivity_ratio) return false;
  if (min_growth_ratio > 0.0 && max_growth_ratio > max_bracket_spread * min_growth_ratio)
    return false;
  return violations.empty();
}

StructureReport check_structure(const StressFn& stress_fn, const StructureParams& sp,
                                std::span<const TensorPair> samples, double fd_step) {
  StructureReport rep;
  rep.min_coercivity_ratio = std::numeric_limits<double>::infinity();
  rep.max_coercivity_ratio = -std::numeric_limits<double>::infinity();
  rep.min_growth_ratio = std::numeric_limits<double>::infinity();
  rep.max_growth_ratio = -std::numeric_limits<double>::infinity();

  for (const auto& [P, Q] : samples) {
    const SymTensor A = sym(P);
    const SymTensor B = sym(Q);
    const double denom = std::pow(sp.delta + A.norm(), sp.p - 2.0);
    const double bn2 = B.norm() * B.norm();
    if (bn2 == 0.0 || denom == 0.0) continue;

    const double h = fd_step * std::max(1e-3, A.norm());
    // Directional second form sum d_kl S_ij Q_ij Q_kl by central differences.
    const double qn = std::max(Q.norm(), 1e-30);
    const Tensor dQ = Q * (h / qn);
    SymTensor diff = stress_fn(P + dQ) - stress_fn(P - dQ);
    const double second_form = diff.dot(Q) / (2.0 * h / qn);
    const double coercivity = second_form / (denom * bn2);

    // Entrywise derivative bound max |d_kl S_ij|.
    double max_entry = 0.0;
    for (int k = 0; k < kDim; ++k)
      for (int l = 0; l < kDim; ++l) {
        Tensor E = Tensor::Zero();
        E(k, l) = h;
        SymTensor col = stress_fn(P + E) - stress_fn(P - E);
        max_entry = std::max(max_entry, col.m.cwiseAbs().maxCoeff() / (2.0 * h));
      }
    const double growth = max_entry / denom;

    ++rep.sample_count;
    rep.min_coercivity_ratio = std::min(rep.min_coercivity_ratio, coercivity);
    rep.max_coercivity_ratio = std::max(rep.max_coercivity_ratio, coercivity);
    rep.min_growth_ratio = std::min(rep.min_growth_ratio, growth);
    rep.max_growth_ratio = std::max(rep.max_growth_ratio, growth);
    if (!(coercivity > 0.0) || !std::isfinite(coercivity) || !std::isfinite(growth))
      rep.violations.push_back({P, Q, coercivity, growth});
  }
  return rep;
}

RatioStats equivalence_probe(const StructureParams& sp, std::span<const TensorPair> samples) {
  RatioStats st;
  st.r1_min = st.r2_min = st.r3_min = std::numeric_limits<double>::infinity();
  st.r1_max = st.r2_max = st.r3_max = -std::numeric_limits<double>::infinity();

  for (const auto& [P, Q] : samples) {
    const SymTensor AP = sym(P);
    const SymTensor AQ = sym(Q);
    const SymTensor dA = AP - AQ;
    const double dist = dA.norm();
    if (dist == 0.0) {
      ++st.skipped;
      continue;
    }
    const SymTensor dS = stress(sp, P) - stress(sp, Q);
    const double product = dS.dot(Tensor(P - Q));
    const SymTensor dF = f_map(sp, P) - f_map(sp, Q);
    const double df2 = dF.norm() * dF.norm();
    const double shift = AP.norm();
    const double quasi = shifted_phi_value(sp, shift, dist);
    const double quasi_prime = shifted_phi_prime(sp, shift, dist);
    if (df2 == 0.0 || quasi == 0.0 || quasi_prime == 0.0) {
      ++st.skipped;
      continue;
    }
    const double r1 = product / df2;
    const double r2 = product / quasi;
    const double r3 = dS.norm() / quasi_prime;
    ++st.used;
    st.r1_min = std::min(st.r1_min, r1);
    st.r1_max = std::max(st.r1_max, r1);
    st.r2_min = std::min(st.r2_min, r2);
    st.r2_max = std::max(st.r2_max, r2);
    st.r3_min = std::min(st.r3_min, r3);
    st.r3_max = std::max(st.r3_max, r3);
  }
  return st;
}

// ---------------------------------------------------------------------------
// Sampling and computed constants.
// ---------------------------------------------------------------------------

std::vector<TensorPair> sample_tensor_pairs(std::uint64_t seed, int count) {
  static constexpr double kScales[] = {1e-4, 1.0, 1e4};
  std::mt19937_64 eng(seed);
  std::vector<TensorPair> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double s = kScales[i % 3];
    Tensor P = random_tensor(eng, s);
    Tensor Q = random_tensor(eng, s);
    out.emplace_back(P, Q);
  }
  return out;
}

std::vector<Tensor> sample_tensors(std::uint64_t seed, int count) {
  static constexpr double kScales[] = {1e-4, 1.0, 1e4};
  std::mt19937_64 eng(seed);
  std::vector<Tensor> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out.push_back(random_tensor(eng, kScales[i % 3]));
  return out;
}

namespace {

// Solves phi_a'(t) = target for t by bisection; phi_a' is strictly
// increasing with range [0, inf).
double invert_shifted_phi_prime(const StructureParams& sp, double a, double target) {
  if (target <= 0.0) return 0.0;
  double hi = 1.0;
  while (shifted_phi_prime(sp, a, hi) < target) {
    hi *= 2.0;
    if (hi > 1e300) return hi;
  }
  double lo = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (shifted_phi_prime(sp, a, mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> log_grid(double lo, double hi, int n, bool include_zero) {
  std::vector<double> g;
  if (include_zero) g.push_back(0.0);
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < n; ++i)
    g.push_back(std::exp(llo + (lhi - llo) * static_cast<double>(i) / (n - 1)));
  return g;
}

}  // namespace

double young_constant(const StructureParams& sp, double eps, int grid) {
  const auto as = log_grid(1e-6, 1e6, grid, true);
  const auto ss = log_grid(1e-6, 1e6, grid, false);
  double worst = 0.0;
  for (double a : as)
    for (double s : ss) {
      // For fixed (a, s) the ratio (t s - eps phi_a(t)) / (phi_a)^*(s) is
      // maximal where eps phi_a'(t) = s.
      const double t = invert_shifted_phi_prime(sp, a, s / eps);
      const double numer = t * s - eps * shifted_phi_value(sp, a, t);
      const double denom = shifted_conjugate(sp, a, s);
      if (denom > 0.0 && numer > 0.0) worst = std::max(worst, numer / denom);
    }
  // Headroom for the grid resolution in (a, s); the t-maximisation is exact.
  return 1.05 * worst;
}

double shift_change_constant(const StructureParams& sp, double eps, int grid) {
  const auto mags = log_grid(1e-6, 1e6, grid, true);
  const auto ts = log_grid(1e-6, 1e6, grid, false);
  double worst = 0.0;
  for (double a : mags)
    for (double b : mags) {
      const double df = f_radial(sp, b) - f_radial(sp, a);
      const double penalty = eps * df * df;
      for (double t : ts) {
        const double numer = shifted_phi_value(sp, b, t) - penalty;
        if (numer <= 0.0) continue;
        const double denom = shifted_phi_value(sp, a, t);
        if (denom > 0.0) worst = std::max(worst, numer / denom);
      }
    }
  // Larger headroom: the sweep is a plain grid in (a, b, t).
  return 1.3 * std::max(worst, 1.0);
}

}  // namespace pflow
