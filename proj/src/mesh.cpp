#include "vemcurve/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "vemcurve/exceptions.hpp"
#include "vemcurve/quadrature.hpp"

namespace vemcurve {

std::vector<Point> PolyMesh::cell_polygon(int cell) const {
  std::vector<Point> poly;
  poly.reserve(cells[cell].size());
  for (int v : cells[cell]) poly.push_back(vertices[v]);
  return poly;
}

Vec2 PolyMesh::boundary_normal(int edge) const {
  const MeshEdge& e = edges[edge];
  Vec2 d = vertices[e.v1] - vertices[e.v0];
  // the owning cell traverses the edge with the interior on its left
  Vec2 n = (e.left >= 0) ? Vec2{d.y, -d.x} : Vec2{-d.y, d.x};
  return n.normalized();
}

namespace {

bool segments_cross(Point a, Point b, Point c, Point d) {
  auto orient = [](Point p, Point q, Point r) {
    double v = (q - p).cross(r - p);
    return (v > 0.0) - (v < 0.0);
  };
  int o1 = orient(a, b, c), o2 = orient(a, b, d);
  int o3 = orient(c, d, a), o4 = orient(c, d, b);
  return o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0;
}

}  // namespace

void finalize_mesh(PolyMesh& mesh) {
  int nv = mesh.n_vertices();
  mesh.edges.clear();
  mesh.cell_edges.assign(mesh.cells.size(), {});
  mesh.boundary_edges.clear();
  mesh.cell_diameter.assign(mesh.cells.size(), 0.0);

  std::map<std::pair<int, int>, int> edge_index;
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const auto& loop = mesh.cells[c];
    if (loop.size() < 3) throw MeshInvalid("cell " + std::to_string(c) + " has fewer than 3 vertices");
    mesh.cell_edges[c].resize(loop.size());
    for (size_t i = 0; i < loop.size(); ++i) {
      int a = loop[i];
      int b = loop[(i + 1) % loop.size()];
      if (a < 0 || b < 0 || a >= nv || b >= nv)
        throw ParseError("cell " + std::to_string(c) + " references missing vertex");
      if (a == b) throw MeshInvalid("cell " + std::to_string(c) + " repeats vertex " + std::to_string(a));
      auto key = std::minmax(a, b);
      auto [it, inserted] = edge_index.try_emplace(key, (int)mesh.edges.size());
      if (inserted) mesh.edges.push_back({key.first, key.second, -1, -1});
      MeshEdge& e = mesh.edges[it->second];
      if (a == key.first) {
        if (e.left >= 0)
          throw MeshInvalid("edge (" + std::to_string(a) + "," + std::to_string(b) +
                            ") traversed twice in the same direction");
        e.left = c;
      } else {
        if (e.right >= 0)
          throw MeshInvalid("edge (" + std::to_string(b) + "," + std::to_string(a) +
                            ") traversed twice in the same direction");
        e.right = c;
      }
      mesh.cell_edges[c][i] = it->second;
    }
  }

  for (int i = 0; i < mesh.n_edges(); ++i)
    if (mesh.edges[i].boundary()) mesh.boundary_edges.push_back(i);

  // orientation, simplicity and diameter per cell
  for (int c = 0; c < mesh.n_cells(); ++c) {
    auto poly = mesh.cell_polygon(c);
    if (polygon_area(poly) <= 0.0)
      throw InvariantViolation("cell " + std::to_string(c) + " is not counter-clockwise");
    size_t n = poly.size();
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) {
        if (i == j || (i + 1) % n == j || (j + 1) % n == i) continue;
        if (segments_cross(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n])) {
          std::string where;
          for (const Point& p : poly)
            where += " (" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
          throw InvariantViolation("cell " + std::to_string(c) + " is not simple:" + where);
        }
      }
    mesh.cell_diameter[c] = polygon_diameter(poly);
  }

  // every boundary vertex must see exactly two boundary edges
  std::vector<int> bdeg(nv, 0);
  for (int be : mesh.boundary_edges) {
    bdeg[mesh.edges[be].v0]++;
    bdeg[mesh.edges[be].v1]++;
  }
  for (int v = 0; v < nv; ++v)
    if (bdeg[v] != 0 && bdeg[v] != 2)
      throw MeshInvalid("boundary vertex " + std::to_string(v) + " has degree " +
                        std::to_string(bdeg[v]));

  mesh.h = 1.0 / std::sqrt((double)nv);
}

ShapeReport audit_shape(const PolyMesh& mesh) {
  ShapeReport rep;
  int nc = mesh.n_cells();
  rep.cell_h.resize(nc);
  rep.cell_inradius.resize(nc);
  rep.cell_min_vertex_distance.resize(nc);
  double min_r0 = 1e300, min_r1 = 1e300;
  double hmin = 1e300, hmax = 0.0;
  for (int c = 0; c < nc; ++c) {
    auto poly = mesh.cell_polygon(c);
    size_t n = poly.size();
    double hK = polygon_diameter(poly);
    double dmin = 1e300;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j)
        dmin = std::min(dmin, (poly[i] - poly[j]).norm());
    Point cen = polygon_centroid(poly);
    double rho = 1e300;
    for (size_t i = 0; i < n; ++i) {
      Point a = poly[i], b = poly[(i + 1) % n];
      Vec2 d = b - a;
      double len = d.norm();
      double dist = d.cross(cen - a) / len;  // positive when cen is left of a->b
      rho = std::min(rho, dist);
    }
    rho = std::max(rho, 0.0);
    rep.cell_h[c] = hK;
    rep.cell_inradius[c] = rho;
    rep.cell_min_vertex_distance[c] = dmin;
    if (hK > 0.0) {
      min_r0 = std::min(min_r0, rho / hK);
      min_r1 = std::min(min_r1, dmin / hK);
    }
    hmin = std::min(hmin, hK);
    hmax = std::max(hmax, hK);
  }
  rep.min_inradius_ratio = (nc > 0) ? min_r0 : 0.0;
  rep.min_vertex_distance_ratio = (nc > 0) ? min_r1 : 0.0;
  rep.max_h_over_min_h = (hmin > 0.0) ? hmax / hmin : 0.0;
  return rep;
}

double boundary_vertex_deviation(const PolyMesh& mesh, const DomainSpec& domain) {
  std::set<int> bverts;
  for (int be : mesh.boundary_edges) {
    bverts.insert(mesh.edges[be].v0);
    bverts.insert(mesh.edges[be].v1);
  }
  double dev = 0.0;
  for (int v : bverts)
    dev = std::max(dev, (closest_boundary_point(domain, mesh.vertices[v]) - mesh.vertices[v]).norm());
  return dev;
}

double boundary_loop_area(const PolyMesh& mesh) {
  // boundary edges oriented with the domain on their left form the outer loop
  double a = 0.0;
  for (int be : mesh.boundary_edges) {
    const MeshEdge& e = mesh.edges[be];
    Point p = mesh.vertices[e.v0], q = mesh.vertices[e.v1];
    if (e.left < 0) std::swap(p, q);  // owning cell traverses v1 -> v0
    a += p.cross(q);
  }
  return 0.5 * a;
}

int boundary_loop_count(const PolyMesh& mesh) {
  std::map<int, std::vector<int>> next;  // vertex -> incident boundary edges
  for (int be : mesh.boundary_edges) {
    next[mesh.edges[be].v0].push_back(be);
    next[mesh.edges[be].v1].push_back(be);
  }
  std::set<int> unvisited(mesh.boundary_edges.begin(), mesh.boundary_edges.end());
  int loops = 0;
  while (!unvisited.empty()) {
    int start = *unvisited.begin();
    int edge = start;
    int vert = mesh.edges[edge].v0;
    do {
      unvisited.erase(edge);
      vert = (mesh.edges[edge].v0 == vert) ? mesh.edges[edge].v1 : mesh.edges[edge].v0;
      int nxt = -1;
      for (int cand : next[vert])
        if (cand != edge && unvisited.count(cand)) { nxt = cand; break; }
      if (nxt < 0) break;
      edge = nxt;
    } while (edge != start);
    ++loops;
  }
  return loops;
}

std::vector<BoundarySample> boundary_quadrature_samples(const PolyMesh& mesh,
                                                        int points_per_edge) {
  QuadratureRule1D rule = gauss_legendre(points_per_edge);
  std::vector<BoundarySample> samples;
  samples.reserve(mesh.boundary_edges.size() * points_per_edge);
  for (int be : mesh.boundary_edges) {
    const MeshEdge& e = mesh.edges[be];
    Point a = mesh.vertices[e.v0], b = mesh.vertices[e.v1];
    Vec2 n = mesh.boundary_normal(be);
    for (int q = 0; q < points_per_edge; ++q) {
      double s = 0.5 * (rule.nodes[q] + 1.0);
      samples.push_back({a + (b - a) * s, n});
    }
  }
  return samples;
}

void save_mesh(const PolyMesh& mesh, const std::string& path) {
  nlohmann::json j;
  j["version"] = 1;
  auto& verts = j["vertices"] = nlohmann::json::array();
  for (const Point& p : mesh.vertices) verts.push_back({p.x, p.y});
  j["cells"] = mesh.cells;
  auto& edges = j["edges"] = nlohmann::json::array();
  for (const MeshEdge& e : mesh.edges)
    edges.push_back({e.v0, e.v1, e.boundary() ? 1 : 0});
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  out << j.dump(1) << "\n";
}

PolyMesh load_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& err) {
    throw ParseError("mesh file '" + path + "': " + err.what());
  }
  PolyMesh mesh;
  try {
    if (j.at("version").get<int>() != 1)
      throw ParseError("mesh file '" + path + "': unsupported version");
    for (const auto& v : j.at("vertices"))
      mesh.vertices.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
    mesh.cells = j.at("cells").get<std::vector<std::vector<int>>>();
  } catch (const nlohmann::json::exception& err) {
    throw ParseError("mesh file '" + path + "': " + err.what());
  }
  finalize_mesh(mesh);
  if (j.contains("edges")) {
    // cross-check the stored boundary markers against the rebuilt incidence
    const auto& stored = j["edges"];
    if (stored.size() != mesh.edges.size())
      throw ParseError("mesh file '" + path + "': edge count mismatch");
    std::map<std::pair<int, int>, bool> rebuilt;
    for (const MeshEdge& e : mesh.edges) rebuilt[{e.v0, e.v1}] = e.boundary();
    for (const auto& se : stored) {
      int v0 = se.at(0).get<int>(), v1 = se.at(1).get<int>();
      bool marker = se.at(2).get<int>() != 0;
      auto it = rebuilt.find(std::minmax(v0, v1));
      if (it == rebuilt.end())
        throw ParseError("mesh file '" + path + "': unknown edge (" + std::to_string(v0) +
                         "," + std::to_string(v1) + ")");
      if (it->second != marker)
        throw ParseError("mesh file '" + path + "': boundary marker mismatch on edge (" +
                         std::to_string(v0) + "," + std::to_string(v1) + ")");
    }
  }
  return mesh;
}

}  // namespace vemcurve
