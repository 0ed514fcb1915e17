// Polygonal tessellation with edge incidence, shape audits and serialization.

#ifndef VEMCURVE_MESH_HPP
#define VEMCURVE_MESH_HPP

#include <string>
#include <vector>

#include "vemcurve/geometry.hpp"

namespace vemcurve {

struct MeshEdge {
  int v0 = -1;          // canonical orientation: v0 < v1
  int v1 = -1;
  int left = -1;        // cell traversing v0 -> v1
  int right = -1;       // cell traversing v1 -> v0, or -1 on the boundary
  bool boundary() const { return left < 0 || right < 0; }
  int owner() const { return left >= 0 ? left : right; }
};

struct PolyMesh {
  std::vector<Point> vertices;
  std::vector<std::vector<int>> cells;       // CCW vertex loops
  std::vector<MeshEdge> edges;
  std::vector<std::vector<int>> cell_edges;  // edge index of side (v_i, v_{i+1})
  std::vector<int> boundary_edges;
  std::vector<double> cell_diameter;         // h_K
  double h = 0.0;                            // N_V^{-1/2}

  int n_vertices() const { return (int)vertices.size(); }
  int n_cells() const { return (int)cells.size(); }
  int n_edges() const { return (int)edges.size(); }

  std::vector<Point> cell_polygon(int cell) const;
  /// Unit outward normal of a boundary edge (w.r.t. its owning cell).
  Vec2 boundary_normal(int edge) const;
};

/// Builds edge incidence and derived data from vertices + cells and runs the
/// incidence audit. Throws MeshInvalid / InvariantViolation on failure.
void finalize_mesh(PolyMesh& mesh);

struct ShapeReport {
  std::vector<double> cell_h;            // h_K
  std::vector<double> cell_inradius;     // centroid-based Chebyshev lower bound
  std::vector<double> cell_min_vertex_distance;
  double min_inradius_ratio = 0.0;       // alpha_0 proxy
  double min_vertex_distance_ratio = 0.0;  // alpha_1 proxy
  double max_h_over_min_h = 0.0;         // quasi-uniformity diagnostic
};

ShapeReport audit_shape(const PolyMesh& mesh);

/// Largest distance of a boundary vertex from the true boundary.
double boundary_vertex_deviation(const PolyMesh& mesh, const DomainSpec& domain);

/// Area of the polygon bounded by the boundary loop (for the cell-area audit).
double boundary_loop_area(const PolyMesh& mesh);

/// Number of closed loops formed by the boundary edges.
int boundary_loop_count(const PolyMesh& mesh);

/// Per-edge quadrature samples with outward normals, for delta diagnostics.
std::vector<BoundarySample> boundary_quadrature_samples(const PolyMesh& mesh,
                                                        int points_per_edge);

void save_mesh(const PolyMesh& mesh, const std::string& path);
PolyMesh load_mesh(const std::string& path);

}  // namespace vemcurve

#endif
