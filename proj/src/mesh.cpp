#include "pflow/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace pflow {

void Mesh::finalize() {
  const int nc = cell_count();
  cell_area.assign(nc, 0.0);
  cell_h.assign(nc, 0.0);
  cell_rho.assign(nc, 0.0);
  cell_grad.assign(nc, {});
  vertex_cells.assign(vertices.size(), {});
  h = 0.0;
  gamma0 = 0.0;
  total_area = 0.0;

  for (int k = 0; k < nc; ++k) {
    const auto& c = cells[k];
    const Vec& p0 = vertices[c[0]];
    const Vec& p1 = vertices[c[1]];
    const Vec& p2 = vertices[c[2]];
    const Vec e01 = p1 - p0, e02 = p2 - p0, e12 = p2 - p1;
    const double twice_area = e01(0) * e02(1) - e01(1) * e02(0);
    if (!(twice_area > 0.0)) throw std::invalid_argument("cell with non-positive volume");
    const double area = 0.5 * twice_area;
    const double l01 = e01.norm(), l02 = e02.norm(), l12 = e12.norm();
    const double perimeter = l01 + l02 + l12;

    cell_area[k] = area;
    cell_h[k] = std::max({l01, l02, l12});
    cell_rho[k] = 4.0 * area / perimeter;  // 2 * inradius

    // P1 basis gradients through the inverse Jacobian of the reference map.
    Tensor J;
    J.col(0) = e01;
    J.col(1) = e02;
    const Tensor Jit = J.inverse().transpose();
    cell_grad[k][0] = Jit * Vec(-1.0, -1.0);
    cell_grad[k][1] = Jit * Vec(1.0, 0.0);
    cell_grad[k][2] = Jit * Vec(0.0, 1.0);

    total_area += area;
    h = std::max(h, cell_h[k]);
    gamma0 = std::max(gamma0, cell_h[k] / cell_rho[k]);
    for (int v : c) vertex_cells[v].push_back(k);
  }
}

std::string Mesh::stats_json() const {
  nlohmann::json j;
  j["vertices"] = vertex_count();
  j["cells"] = cell_count();
  j["h"] = h;
  j["gamma0"] = gamma0;
  return j.dump();
}

Mesh unit_square_mesh(int n) {
  if (n < 1) throw std::invalid_argument("unit_square_mesh needs n >= 1");
  Mesh m;
  const int nv = n + 1;
  m.vertices.reserve(static_cast<std::size_t>(nv) * nv);
  m.boundary_vertex.reserve(static_cast<std::size_t>(nv) * nv);
  for (int j = 0; j < nv; ++j)
    for (int i = 0; i < nv; ++i) {
      m.vertices.emplace_back(static_cast<double>(i) / n, static_cast<double>(j) / n);
      m.boundary_vertex.push_back(i == 0 || i == n || j == 0 || j == n);
    }
  auto vid = [nv](int i, int j) { return j * nv + i; };
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const int a = vid(i, j), b = vid(i + 1, j), c = vid(i + 1, j + 1), d = vid(i, j + 1);
      m.cells.push_back({a, b, c});
      m.cells.push_back({a, c, d});
    }
  m.finalize();
  return m;
}

Mesh refine_uniform(const Mesh& parent) {
  Mesh m;
  m.vertices = parent.vertices;
  m.boundary_vertex = parent.boundary_vertex;

  // Count cells per edge; an edge with exactly one cell lies on the boundary.
  std::map<std::pair<int, int>, int> edge_count;
  auto edge_key = [](int a, int b) { return std::pair(std::min(a, b), std::max(a, b)); };
  for (const auto& c : parent.cells)
    for (int e = 0; e < 3; ++e) ++edge_count[edge_key(c[e], c[(e + 1) % 3])];

  std::map<std::pair<int, int>, int> midpoint;
  for (const auto& [key, count] : edge_count) {
    midpoint[key] = static_cast<int>(m.vertices.size());
    m.vertices.push_back(0.5 * (parent.vertices[key.first] + parent.vertices[key.second]));
    m.boundary_vertex.push_back(count == 1);
  }

  m.cells.reserve(parent.cells.size() * 4);
  for (const auto& c : parent.cells) {
    const int m01 = midpoint[edge_key(c[0], c[1])];
    const int m12 = midpoint[edge_key(c[1], c[2])];
    const int m02 = midpoint[edge_key(c[0], c[2])];
    m.cells.push_back({c[0], m01, m02});
    m.cells.push_back({m01, c[1], m12});
    m.cells.push_back({m02, m12, c[2]});
    m.cells.push_back({m01, m12, m02});
  }
  m.finalize();
  return m;
}

std::vector<int> patch(const Mesh& m, int k) {
  if (k < 0 || k >= m.cell_count()) throw std::out_of_range("cell index out of range");
  std::set<int> out;
  for (int v : m.cells[k])
    for (int c : m.vertex_cells[v]) out.insert(c);
  return {out.begin(), out.end()};
}

}  // namespace pflow
