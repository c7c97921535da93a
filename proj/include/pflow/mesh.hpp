#pragma once

// Simplicial triangulations of polygonal domains with shape-regularity
// bookkeeping: per-cell diameter h_K, inscribed-ball diameter rho_K, P1
// basis gradients, vertex-cell adjacency and patches S_K.

#include <array>
#include <string>
#include <vector>

#include "pflow/tensor.hpp"

namespace pflow {

struct Mesh {
  std::vector<Vec> vertices;
  std::vector<std::array<int, 3>> cells;   // positively oriented
  std::vector<char> boundary_vertex;

  // derived geometry, filled by finalize()
  std::vector<double> cell_area;
  std::vector<double> cell_h;               // diameter (longest edge)
  std::vector<double> cell_rho;             // inscribed-ball diameter
  std::vector<std::array<Vec, 3>> cell_grad; // gradients of barycentric basis
  std::vector<std::vector<int>> vertex_cells;
  double h = 0.0;                            // max_K h_K
  double gamma0 = 0.0;                       // max_K h_K / rho_K
  double total_area = 0.0;

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int cell_count() const { return static_cast<int>(cells.size()); }

  Vec point(int cell, const std::array<double, 3>& bary) const {
    const auto& c = cells[cell];
    return bary[0] * vertices[c[0]] + bary[1] * vertices[c[1]] + bary[2] * vertices[c[2]];
  }

  /// Recomputes geometry and adjacency; throws on degenerate cells.
  void finalize();

  /// Statistics as a JSON string: vertex/cell counts, h, gamma0.
  std::string stats_json() const;
};

/// Structured triangulation of [0,1]^2 with (n+1)^2 vertices and 2n^2 right
/// triangles, h = sqrt(2)/n.
Mesh unit_square_mesh(int n);

/// Red refinement: every triangle split into 4 congruent children; h halves
/// exactly and gamma0 is unchanged. Boundary flags propagate to edge
/// midpoints of boundary edges.
Mesh refine_uniform(const Mesh& m);

/// All cells sharing at least a vertex with cell k, k included, sorted.
std::vector<int> patch(const Mesh& m, int k);

}  // namespace pflow
