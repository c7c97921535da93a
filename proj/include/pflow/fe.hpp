#pragma once

// Vector-valued conforming P1 spaces with homogeneous Dirichlet masks,
// mass/load assembly, L2 projection, the nodal Lagrange and Clement-type
// quasi-interpolants, and the error-norm evaluators used by the studies.

#include <Eigen/Sparse>
#include <functional>
#include <memory>

#include "pflow/mesh.hpp"
#include "pflow/structure.hpp"
#include "pflow/tensor.hpp"

namespace pflow {

using SpatialFn = std::function<Vec(const Vec&)>;      // x -> vector value
using SpatialGrad = std::function<Tensor(const Vec&)>; // x -> (i,j) = d_j u_i
using SparseMatrix = Eigen::SparseMatrix<double>;

struct FeSpace {
  std::shared_ptr<const Mesh> mesh;
  int vdim = kDim;
  bool constrained = true;              // member functions live in V_h
  std::vector<char> dirichlet_mask;     // true exactly on boundary-vertex dofs
  std::vector<int> free_dofs;           // all dofs when not constrained
  std::vector<int> dof_to_free;         // -1 for eliminated dofs

  int dof_count() const { return vdim * mesh->vertex_count(); }
  int dof(int vertex, int comp) const { return vertex * vdim + comp; }
  int free_count() const { return static_cast<int>(free_dofs.size()); }
};

/// P1 space over the mesh; constrained spaces eliminate boundary dofs.
std::shared_ptr<const FeSpace> make_space(std::shared_ptr<const Mesh> mesh,
                                          bool constrained = true);

struct FeFunction {
  std::shared_ptr<const FeSpace> space;
  Eigen::VectorXd coeffs;

  Vec value(int cell, const std::array<double, 3>& bary) const;
  /// Gradient on a cell, constant for P1; (i,j) = d_j u_i.
  Tensor gradient(int cell) const;
};

FeFunction zero_function(std::shared_ptr<const FeSpace> space);

/// Consistent mass matrix over all dofs (block-diagonal per component).
SparseMatrix assemble_mass(const FeSpace& space);

/// Load vector (g, phi_i) by quadrature of the given degree.
Eigen::VectorXd assemble_load(const FeSpace& space, const SpatialFn& g, int quad_degree = 5);

/// Restriction of a symmetric matrix to the free dofs.
SparseMatrix restrict_to_free(const FeSpace& space, const SparseMatrix& full);

/// L2 projection onto the space; constrained spaces pin boundary dofs to 0.
FeFunction l2_project(std::shared_ptr<const FeSpace> space, const SpatialFn& g,
                      int quad_degree = 5);

/// Nodal interpolant (requires g continuous). On constrained spaces the
/// boundary dofs are zeroed, so zero-boundary data lands in V_h.
FeFunction interpolate_lagrange(std::shared_ptr<const FeSpace> space, const SpatialFn& g);

/// Clement-type quasi-interpolant: the vertex value is the patchwise L2
/// projection of g onto affines, evaluated at the vertex. Needs only local
/// integrability; boundary vertices are zeroed on constrained spaces.
FeFunction interpolate_clement(std::shared_ptr<const FeSpace> space, const SpatialFn& g,
                               int quad_degree = 4);

/// || u_h - exact ||_{L2}
double error_l2(const FeFunction& u, const SpatialFn& exact, int quad_degree = 5);

/// || F(D u_h) - F(D exact) ||_{L2} with D the symmetric gradient.
double error_f(const StructureParams& sp, const FeFunction& u, const SpatialGrad& exact_grad,
               int quad_degree = 5);

/// || g ||_{L2} over the mesh by quadrature.
double norm_l2(const Mesh& mesh, const SpatialFn& g, int quad_degree = 5);

/// Integrates fn(cell, x, bary) over the mesh; `subdivisions` uniformly
/// refines every cell for the quadrature only (used near point
/// singularities of the integrand).
double integrate(const Mesh& mesh,
                 const std::function<double(int, const Vec&, const std::array<double, 3>&)>& fn,
                 int quad_degree = 5, int subdivisions = 0);

}  // namespace pflow
