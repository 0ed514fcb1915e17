#include "vemcurve/voronoi.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "vemcurve/exceptions.hpp"
#include "vemcurve/quadrature.hpp"

namespace vemcurve {

namespace {

enum class VTag : std::uint8_t { inner, curve, cut };
enum class ETag : std::uint8_t { clip, boundary };

struct TaggedPolygon {
  std::vector<Point> pts;
  std::vector<VTag> vtags;
  std::vector<ETag> etags;  // etags[i]: edge pts[i] -> pts[i+1]
  size_t size() const { return pts.size(); }
};

Point line_intersection(Point a, Point b, Point m, Vec2 n) {
  // point of segment a-b on the line n . (p - m) = 0
  double da = n.dot(a - m);
  double db = n.dot(b - m);
  double t = da / (da - db);
  return a + (b - a) * t;
}

// plain convex clip for the seed-bisector stage (no tags)
void clip_convex(std::vector<Point>& poly, Point m, Vec2 n) {
  std::vector<Point> out;
  size_t cnt = poly.size();
  out.reserve(cnt + 2);
  for (size_t i = 0; i < cnt; ++i) {
    Point cur = poly[i];
    Point nxt = poly[(i + 1) % cnt];
    bool cur_in = n.dot(cur - m) <= 0.0;
    bool nxt_in = n.dot(nxt - m) <= 0.0;
    if (cur_in) out.push_back(cur);
    if (cur_in != nxt_in) out.push_back(line_intersection(cur, nxt, m, n));
  }
  poly = std::move(out);
}

struct SeedGrid {
  Point origin;
  double cell = 1.0;
  int nx = 1, ny = 1;
  std::vector<std::vector<int>> buckets;

  SeedGrid(const std::vector<Point>& seeds, Point lo, Point hi) {
    double extent = std::max(hi.x - lo.x, hi.y - lo.y);
    cell = std::max(extent / std::max(1.0, std::sqrt((double)seeds.size())), 1e-12);
    origin = lo;
    nx = std::max(1, (int)std::ceil((hi.x - lo.x) / cell));
    ny = std::max(1, (int)std::ceil((hi.y - lo.y) / cell));
    buckets.assign((size_t)nx * ny, {});
    for (int i = 0; i < (int)seeds.size(); ++i) {
      auto [bx, by] = bucket_of(seeds[i]);
      buckets[(size_t)by * nx + bx].push_back(i);
    }
  }

  std::pair<int, int> bucket_of(Point p) const {
    int bx = std::clamp((int)((p.x - origin.x) / cell), 0, nx - 1);
    int by = std::clamp((int)((p.y - origin.y) / cell), 0, ny - 1);
    return {bx, by};
  }

  // seeds in the square ring at Chebyshev bucket distance r
  void ring(int bx, int by, int r, std::vector<int>& out) const {
    auto take = [&](int x, int y) {
      if (x < 0 || y < 0 || x >= nx || y >= ny) return;
      const auto& b = buckets[(size_t)y * nx + x];
      out.insert(out.end(), b.begin(), b.end());
    };
    if (r == 0) { take(bx, by); return; }
    for (int x = bx - r; x <= bx + r; ++x) { take(x, by - r); take(x, by + r); }
    for (int y = by - r + 1; y <= by + r - 1; ++y) { take(bx - r, y); take(bx + r, y); }
  }
};

struct SegmentGrid {
  Point origin;
  double cell = 1.0;
  int nx = 1, ny = 1;
  std::vector<std::vector<int>> buckets;
  const std::vector<Point>* poly = nullptr;

  SegmentGrid(const std::vector<Point>& polyline, Point lo, Point hi, double target_cell)
      : poly(&polyline) {
    cell = std::max(target_cell, 1e-12);
    origin = lo;
    nx = std::max(1, (int)std::ceil((hi.x - lo.x) / cell));
    ny = std::max(1, (int)std::ceil((hi.y - lo.y) / cell));
    buckets.assign((size_t)nx * ny, {});
    for (int s = 0; s < (int)polyline.size(); ++s) {
      Point a = polyline[s];
      Point b = polyline[(s + 1) % polyline.size()];
      int x0 = std::clamp((int)((std::min(a.x, b.x) - lo.x) / cell), 0, nx - 1);
      int x1 = std::clamp((int)((std::max(a.x, b.x) - lo.x) / cell), 0, nx - 1);
      int y0 = std::clamp((int)((std::min(a.y, b.y) - lo.y) / cell), 0, ny - 1);
      int y1 = std::clamp((int)((std::max(a.y, b.y) - lo.y) / cell), 0, ny - 1);
      for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x) buckets[(size_t)y * nx + x].push_back(s);
    }
  }

  static double point_segment_distance(Point p, Point a, Point b) {
    Vec2 d = b - a;
    double len2 = d.squared_norm();
    double t = (len2 > 0.0) ? std::clamp((p - a).dot(d) / len2, 0.0, 1.0) : 0.0;
    return (p - (a + d * t)).norm();
  }

  double distance_to_nearest(Point p, double cutoff) const {
    int rmax = (int)std::ceil(cutoff / cell) + 1;
    auto [bx, by] = bucket_of(p);
    double best = 1e300;
    for (int r = 0; r <= rmax; ++r) {
      if ((r - 1) * cell > std::min(best, cutoff)) break;
      for (int y = by - r; y <= by + r; ++y)
        for (int x = bx - r; x <= bx + r; ++x) {
          if (std::max(std::abs(x - bx), std::abs(y - by)) != r) continue;
          if (x < 0 || y < 0 || x >= nx || y >= ny) continue;
          for (int s : buckets[(size_t)y * nx + x]) {
            Point a = (*poly)[s];
            Point b = (*poly)[(s + 1) % poly->size()];
            best = std::min(best, point_segment_distance(p, a, b));
          }
        }
    }
    return best;
  }

  std::pair<int, int> bucket_of(Point p) const {
    int bx = std::clamp((int)((p.x - origin.x) / cell), 0, nx - 1);
    int by = std::clamp((int)((p.y - origin.y) / cell), 0, ny - 1);
    return {bx, by};
  }
};

double max_radius(const std::vector<Point>& poly, Point seed) {
  double r2 = 0.0;
  for (const Point& p : poly) r2 = std::max(r2, (p - seed).squared_norm());
  return std::sqrt(r2);
}

// convex Voronoi cell of seed i inside the padded bounding box
std::vector<Point> bisector_cell(const std::vector<Point>& seeds, int i,
                                 const std::vector<Point>& box, const SeedGrid& grid,
                                 double tiny) {
  std::vector<Point> poly = box;
  Point s = seeds[i];
  auto [bx, by] = grid.bucket_of(s);
  int rings = std::max(grid.nx, grid.ny);
  double rmax = max_radius(poly, s);
  std::vector<int> candidates;
  for (int r = 0; r <= rings; ++r) {
    if ((r - 1) * grid.cell > 2.0 * rmax) break;
    candidates.clear();
    grid.ring(bx, by, r, candidates);
    std::sort(candidates.begin(), candidates.end(), [&](int a, int b) {
      double da = (seeds[a] - s).squared_norm(), db = (seeds[b] - s).squared_norm();
      return da < db || (da == db && a < b);
    });
    for (int j : candidates) {
      if (j == i) continue;
      Vec2 dir = seeds[j] - s;
      double dist = dir.norm();
      if (dist < tiny) continue;  // coincident seeds
      if (dist > 2.0 * rmax) continue;
      Point mid = (s + seeds[j]) * 0.5;
      clip_convex(poly, mid, dir);
      if (poly.size() < 3) return {};
      rmax = max_radius(poly, s);
    }
  }
  return poly;
}

// merges consecutive near-coincident points; on-curve tags win over inner ones
void dedupe_tagged(TaggedPolygon& poly, double tol) {
  TaggedPolygon out;
  auto rank = [](VTag t) { return t == VTag::curve ? 2 : (t == VTag::cut ? 1 : 0); };
  for (size_t i = 0; i < poly.size(); ++i) {
    if (!out.pts.empty() && (poly.pts[i] - out.pts.back()).norm() <= tol) {
      if (rank(poly.vtags[i]) > rank(out.vtags.back())) out.vtags.back() = poly.vtags[i];
      out.etags.back() = poly.etags[i];
      continue;
    }
    out.pts.push_back(poly.pts[i]);
    out.vtags.push_back(poly.vtags[i]);
    out.etags.push_back(poly.etags[i]);
  }
  while (out.size() > 1 && (out.pts.front() - out.pts.back()).norm() <= tol) {
    if (rank(out.vtags.back()) > rank(out.vtags.front()))
      out.vtags.front() = out.vtags.back();
    out.pts.pop_back();
    out.vtags.pop_back();
    out.etags.pop_back();
  }
  poly = std::move(out);
}

// Intersection of the convex cell with the simple domain polygon by boundary
// traversal: maximal runs of the domain boundary inside the cell (chains) are
// stitched together by walking between their endpoints along the cell
// perimeter. Robust against domains whose boundary crosses the supporting
// line of a cell edge many times (the spiral windings defeat a plain
// Sutherland-Hodgman pass there).
TaggedPolygon clip_to_domain(const std::vector<Point>& cell,
                             const std::vector<Point>& domain_poly, Point seed,
                             double tol) {
  size_t nc = cell.size();
  size_t ns = domain_poly.size();

  std::vector<Vec2> normals(nc);  // outward unit normals of the cell edges
  std::vector<double> edge_len(nc);
  for (size_t i = 0; i < nc; ++i) {
    Vec2 d = cell[(i + 1) % nc] - cell[i];
    edge_len[i] = d.norm();
    normals[i] = Vec2{d.y, -d.x} / edge_len[i];
  }
  auto signed_distance = [&](Point p) {
    double dmax = -1e300;
    for (size_t i = 0; i < nc; ++i)
      dmax = std::max(dmax, normals[i].dot(p - cell[i]));
    return dmax;  // <= 0 inside the cell
  };
  // perimeter coordinate of a boundary point: edge index plus edge fraction
  auto perimeter_key = [&](Point p) {
    double best = 1e300, key = 0.0;
    for (size_t i = 0; i < nc; ++i) {
      Vec2 d = cell[(i + 1) % nc] - cell[i];
      double s = std::clamp((p - cell[i]).dot(d) / d.squared_norm(), 0.0, 1.0);
      double dist = (p - (cell[i] + d * s)).norm();
      if (dist < best) { best = dist; key = (double)i + s; }
    }
    return key;
  };

  std::vector<bool> inside(ns);
  bool all_inside = true;
  size_t start = 0;
  for (size_t i = 0; i < ns; ++i) {
    inside[i] = signed_distance(domain_poly[i]) <= tol;
    if (!inside[i]) { all_inside = false; start = i; }
  }
  if (all_inside) {
    // the domain sits inside this cell
    TaggedPolygon out;
    out.pts = domain_poly;
    out.vtags.assign(ns, VTag::curve);
    out.etags.assign(ns, ETag::boundary);
    return out;
  }

  struct Chain {
    TaggedPolygon piece;  // entry point, interior vertices, exit point
    double entry_key = 0.0;
    double exit_key = 0.0;
    bool used = false;
  };
  std::vector<Chain> chains;
  TaggedPolygon current;
  bool open = false;

  // Liang-Barsky interval of one subject edge against the cell half-planes
  auto clip_segment = [&](Point a, Point b, double& t0, double& t1) {
    t0 = 0.0;
    t1 = 1.0;
    for (size_t i = 0; i < nc; ++i) {
      double da = normals[i].dot(a - cell[i]);
      double db = normals[i].dot(b - cell[i]);
      if (da > tol && db > tol) return false;
      if (da > 0.0 && da - db != 0.0) t0 = std::max(t0, da / (da - db));
      if (db > 0.0 && da - db != 0.0) t1 = std::min(t1, da / (da - db));
    }
    return t0 <= t1;
  };

  for (size_t step = 0; step < ns; ++step) {
    size_t i = (start + step) % ns;
    Point a = domain_poly[i];
    Point b = domain_poly[(i + 1) % ns];
    bool a_in = inside[i];
    bool b_in = inside[(i + 1) % ns];
    if (a_in && open) {
      current.pts.push_back(a);
      current.vtags.push_back(VTag::curve);
      current.etags.push_back(ETag::boundary);
    }
    if (a_in && b_in) continue;
    double t0, t1;
    if (!clip_segment(a, b, t0, t1)) {
      if (open) {  // numeric corner graze: close the chain at the last point
        chains.push_back({std::move(current), 0.0, 0.0, false});
        current = {};
        open = false;
      }
      continue;
    }
    if (!a_in && t0 > 0.0) {  // entering
      Point entry = a + (b - a) * t0;
      current = {};
      current.pts.push_back(entry);
      current.vtags.push_back(VTag::cut);
      current.etags.push_back(ETag::boundary);
      open = true;
    } else if (!a_in) {
      // starts on the boundary within tolerance: treat as an entry at a
      current = {};
      current.pts.push_back(a);
      current.vtags.push_back(VTag::cut);
      current.etags.push_back(ETag::boundary);
      open = true;
    }
    if (!b_in) {  // leaving
      if (open) {
        Point exit = a + (b - a) * t1;
        current.pts.push_back(exit);
        current.vtags.push_back(VTag::cut);
        current.etags.push_back(ETag::clip);
        chains.push_back({std::move(current), 0.0, 0.0, false});
        current = {};
        open = false;
      }
    }
  }
  if (open) chains.push_back({std::move(current), 0.0, 0.0, false});

  if (chains.empty()) {
    // no boundary crossing: the whole cell lies inside the domain
    TaggedPolygon out;
    out.pts = cell;
    out.vtags.assign(nc, VTag::inner);
    out.etags.assign(nc, ETag::clip);
    return out;
  }

  for (auto& chain : chains) {
    dedupe_tagged(chain.piece, tol);  // open polyline: wrap merge is harmless
    chain.entry_key = perimeter_key(chain.piece.pts.front());
    chain.exit_key = perimeter_key(chain.piece.pts.back());
  }
  std::erase_if(chains, [](const Chain& c) { return c.piece.size() < 2; });
  if (chains.empty()) {
    TaggedPolygon out;
    out.pts = cell;
    out.vtags.assign(nc, VTag::inner);
    out.etags.assign(nc, ETag::clip);
    return out;
  }

  // stitch chains into components, walking the cell perimeter between them
  auto next_entry = [&](double from_key) {
    int best = -1;
    double best_gap = 1e300;
    for (size_t c = 0; c < chains.size(); ++c) {
      if (chains[c].used) continue;
      double gap = chains[c].entry_key - from_key;
      if (gap <= 1e-12) gap += (double)nc;  // wrap, avoid re-hitting ourselves
      if (gap < best_gap) { best_gap = gap; best = (int)c; }
    }
    return best;
  };

  std::vector<TaggedPolygon> components;
  for (size_t c0 = 0; c0 < chains.size(); ++c0) {
    if (chains[c0].used) continue;
    TaggedPolygon comp;
    size_t c = c0;
    for (size_t guard = 0; guard <= chains.size(); ++guard) {
      Chain& chain = chains[c];
      chain.used = true;
      comp.pts.insert(comp.pts.end(), chain.piece.pts.begin(), chain.piece.pts.end());
      comp.vtags.insert(comp.vtags.end(), chain.piece.vtags.begin(),
                        chain.piece.vtags.end());
      comp.etags.insert(comp.etags.end(), chain.piece.etags.begin(),
                        chain.piece.etags.end());
      comp.etags.back() = ETag::clip;  // from the exit onward we ride the cell
      int nxt = next_entry(chain.exit_key);
      double target = (nxt >= 0) ? chains[nxt].entry_key : chains[c0].entry_key;
      // emit the cell corners passed while walking exit -> next entry
      double walk = chain.exit_key;
      double span = target - walk;
      if (span <= 1e-12) span += (double)nc;
      for (int corner = (int)std::floor(walk) + 1;
           corner <= (int)std::floor(walk + span); ++corner) {
        double off = (double)corner - walk;
        if (off >= span - 1e-12) continue;  // lands on or after the entry
        comp.pts.push_back(cell[(size_t)(corner % (int)nc)]);
        comp.vtags.push_back(VTag::inner);
        comp.etags.push_back(ETag::clip);
      }
      if (nxt < 0 || (size_t)nxt == c0) break;
      c = (size_t)nxt;
    }
    components.push_back(std::move(comp));
  }

  // even-odd pick of the component holding the seed
  for (auto& comp : components) {
    size_t n = comp.size();
    if (n < 3) continue;
    bool in = false;
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
      const Point& pa = comp.pts[j];
      const Point& pb = comp.pts[i];
      if ((pb.y > seed.y) != (pa.y > seed.y)) {
        double xint = pb.x + (seed.y - pb.y) * (pa.x - pb.x) / (pa.y - pb.y);
        if (seed.x < xint) in = !in;
      }
    }
    if (in) return comp;
  }
  // fall back to the component whose boundary passes closest to the seed
  double best = 1e300;
  const TaggedPolygon* pick = nullptr;
  for (auto& comp : components) {
    for (const Point& p : comp.pts) {
      double d = (p - seed).squared_norm();
      if (d < best) { best = d; pick = &comp; }
    }
  }
  return pick ? *pick : TaggedPolygon{};
}

// Sutherland-Hodgman on a non-convex subject can emit zero-area needle
// spikes along clip lines (out-and-back bridges); drop tips where the
// traversal reverses direction within a hair's angle.
void remove_spikes(TaggedPolygon& poly) {
  bool changed = true;
  while (changed && poly.size() >= 3) {
    changed = false;
    for (size_t i = 0; i < poly.size(); ++i) {
      size_t prev = (i + poly.size() - 1) % poly.size();
      size_t next = (i + 1) % poly.size();
      Vec2 u = poly.pts[i] - poly.pts[prev];
      Vec2 v = poly.pts[next] - poly.pts[i];
      if (u.dot(v) < 0.0 && std::abs(u.cross(v)) <= 0.05 * u.norm() * v.norm()) {
        ETag merged = (poly.etags[prev] == ETag::boundary &&
                       poly.etags[i] == ETag::boundary)
                          ? ETag::boundary
                          : ETag::clip;
        poly.pts.erase(poly.pts.begin() + i);
        poly.vtags.erase(poly.vtags.begin() + i);
        poly.etags.erase(poly.etags.begin() + i);
        poly.etags[prev > i ? prev - 1 : prev] = merged;
        changed = true;
        break;
      }
    }
  }
}

void sanitize_polygon(TaggedPolygon& poly, double tol) {
  for (int pass = 0; pass < 8; ++pass) {
    size_t before = poly.size();
    dedupe_tagged(poly, tol);
    remove_spikes(poly);
    if (poly.size() == before) break;
  }
}

bool polygon_is_simple(const std::vector<Point>& poly) {
  auto cross_test = [](Point a, Point b, Point c, Point d) {
    auto orient = [](Point p, Point q, Point r) {
      double v = (q - p).cross(r - p);
      return (v > 0.0) - (v < 0.0);
    };
    int o1 = orient(a, b, c), o2 = orient(a, b, d);
    int o3 = orient(c, d, a), o4 = orient(c, d, b);
    return o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0;
  };
  size_t n = poly.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      if ((i + 1) % n == j || (j + 1) % n == i) continue;
      if (cross_test(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n])) return false;
    }
  return true;
}

// Douglas-Peucker on a boundary chain; keeps indices into pts
void chain_keep_indices(const std::vector<Point>& pts, size_t a, size_t b, double tol,
                        std::vector<size_t>& keep) {
  if (b <= a + 1) return;
  Vec2 d = pts[b] - pts[a];
  double len = d.norm();
  double dmax = -1.0;
  size_t imax = a;
  for (size_t i = a + 1; i < b; ++i) {
    double dist = (len > 0.0) ? std::abs((pts[i] - pts[a]).cross(d)) / len
                              : (pts[i] - pts[a]).norm();
    if (dist > dmax) { dmax = dist; imax = i; }
  }
  if (dmax > tol) {
    chain_keep_indices(pts, a, imax, tol, keep);
    keep.push_back(imax);
    chain_keep_indices(pts, imax, b, tol, keep);
  }
}

// collapses runs of on-curve chain vertices to chords between their anchors
TaggedPolygon simplify_boundary_chains(const TaggedPolygon& poly, double keep_ratio) {
  size_t n = poly.size();
  bool has_clip = false;
  for (ETag t : poly.etags) has_clip |= (t == ETag::clip);
  if (!has_clip) return poly;  // cell swallowed the whole domain: keep polyline

  // rotate so position 0 starts right after a clip edge
  size_t start = 0;
  for (size_t i = 0; i < n; ++i)
    if (poly.etags[i] == ETag::clip) { start = (i + 1) % n; break; }

  TaggedPolygon out;
  size_t i = 0;
  while (i < n) {
    size_t idx = (start + i) % n;
    if (poly.etags[idx] != ETag::boundary) {
      out.pts.push_back(poly.pts[idx]);
      out.vtags.push_back(poly.vtags[idx]);
      out.etags.push_back(poly.etags[idx]);
      ++i;
      continue;
    }
    // maximal run of boundary edges: vertices idx .. idx+len
    size_t len = 0;
    while (i + len < n && poly.etags[(start + i + len) % n] == ETag::boundary) ++len;
    std::vector<Point> chain(len + 1);
    std::vector<VTag> ctags(len + 1);
    for (size_t k = 0; k <= len; ++k) {
      chain[k] = poly.pts[(start + i + k) % n];
      ctags[k] = poly.vtags[(start + i + k) % n];
    }
    double tol = keep_ratio * (chain.back() - chain.front()).norm();
    std::vector<size_t> keep;
    keep.push_back(0);
    chain_keep_indices(chain, 0, len, tol, keep);
    std::sort(keep.begin(), keep.end());
    for (size_t k : keep) {
      out.pts.push_back(chain[k]);
      out.vtags.push_back(ctags[k]);
      out.etags.push_back(ETag::boundary);
    }
    i += len;  // the run's final vertex belongs to the following clip edge
  }
  return out;
}

struct WeldIndex {
  double tol;
  std::map<std::pair<long long, long long>, std::vector<int>> buckets;
  std::vector<Point> points;

  explicit WeldIndex(double tolerance) : tol(tolerance) {}

  int insert(Point p) {
    long long bx = (long long)std::floor(p.x / tol);
    long long by = (long long)std::floor(p.y / tol);
    for (long long dx = -1; dx <= 1; ++dx)
      for (long long dy = -1; dy <= 1; ++dy) {
        auto it = buckets.find({bx + dx, by + dy});
        if (it == buckets.end()) continue;
        for (int idx : it->second)
          if ((points[idx] - p).norm() <= tol) return idx;
      }
    int idx = (int)points.size();
    points.push_back(p);
    buckets[{bx, by}].push_back(idx);
    return idx;
  }
};

}  // namespace

PolyMesh voronoi_mesh_from_seeds(const DomainSpec& domain, std::vector<Point> seeds,
                                 const VoronoiOptions& options) {
  if (seeds.size() < 4) throw InvariantViolation("need at least 4 seeds");
  int n_poly = options.polyline_segments > 0
                   ? options.polyline_segments
                   : std::max(256, (int)std::ceil(32.0 * std::sqrt((double)seeds.size())));
  std::vector<Point> domain_poly = boundary_polyline(domain, n_poly);
  double domain_area = std::abs(polygon_area(domain_poly));
  double diam = domain.diameter;
  double weld_tol = options.weld_tolerance > 0.0 ? options.weld_tolerance : 1e-9 * diam;
  double margin = 0.1 * diam;

  Point lo = domain.bbox_min - Vec2{margin, margin};
  Point hi = domain.bbox_max + Vec2{margin, margin};
  std::vector<Point> box = {lo, {hi.x, lo.y}, hi, {lo.x, hi.y}};

  double target_cell = std::sqrt(domain_area / (double)seeds.size());
  SegmentGrid seg_grid(domain_poly, lo, hi, target_cell);

  auto build_cells = [&](const std::vector<Point>& pts) {
    std::vector<TaggedPolygon> cells(pts.size());
    SeedGrid grid(pts, lo, hi);
    for (int i = 0; i < (int)pts.size(); ++i) {
      std::vector<Point> convex = bisector_cell(pts, i, box, grid, 1e-14 * diam);
      if (convex.size() < 3)
        throw DegenerateCell("seed " + std::to_string(i) + " produced an empty cell");
      double rmax = max_radius(convex, pts[i]);
      if (seg_grid.distance_to_nearest(pts[i], rmax) <= rmax) {
        TaggedPolygon clipped =
            clip_to_domain(convex, domain_poly, pts[i], 1e-12 * diam);
        sanitize_polygon(clipped, 0.5 * weld_tol);
        if (clipped.size() < 3)
          throw DegenerateCell("seed " + std::to_string(i) +
                               " lost its cell while clipping to the boundary");
        cells[i] = std::move(clipped);
      } else {
        cells[i].pts = std::move(convex);
        cells[i].vtags.assign(cells[i].pts.size(), VTag::inner);
        cells[i].etags.assign(cells[i].pts.size(), ETag::clip);
      }
    }
    return cells;
  };

  for (int iter = 0; iter < options.lloyd_iterations; ++iter) {
    std::vector<TaggedPolygon> cells = build_cells(seeds);
    for (size_t i = 0; i < seeds.size(); ++i) {
      Point c = polygon_centroid(cells[i].pts);
      if (domain_contains(domain, c)) seeds[i] = c;
    }
  }

  std::vector<TaggedPolygon> cells = build_cells(seeds);

  PolyMesh mesh;
  WeldIndex weld(weld_tol);
  for (size_t i = 0; i < cells.size(); ++i) {
    TaggedPolygon cell = simplify_boundary_chains(cells[i], options.chain_keep_ratio);
    for (size_t k = 0; k < cell.size(); ++k)
      if (cell.vtags[k] == VTag::cut)
        cell.pts[k] = closest_boundary_point(domain, cell.pts[k]);
    sanitize_polygon(cell, 0.5 * weld_tol);
    if (cell.size() < 3 || std::abs(polygon_area(cell.pts)) < 1e-12 * domain_area)
      throw DegenerateCell("cell of seed " + std::to_string(i) + " has negligible area");
    if (!polygon_is_simple(cell.pts))
      throw DegenerateCell("cell of seed " + std::to_string(i) +
                           " is not simple after boundary projection");
    std::vector<int> loop;
    for (size_t k = 0; k < cell.size(); ++k) loop.push_back(weld.insert(cell.pts[k]));
    // drop consecutive duplicates produced by welding
    std::vector<int> clean;
    for (size_t k = 0; k < loop.size(); ++k)
      if (clean.empty() || clean.back() != loop[k]) clean.push_back(loop[k]);
    while (clean.size() > 1 && clean.front() == clean.back()) clean.pop_back();
    if (clean.size() < 3)
      throw DegenerateCell("cell of seed " + std::to_string(i) + " collapsed while welding");
    mesh.cells.push_back(std::move(clean));
  }
  mesh.vertices = std::move(weld.points);

  finalize_mesh(mesh);

  double deviation = boundary_vertex_deviation(mesh, domain);
  if (deviation > 1e-10 * diam)
    throw MeshInvalid("boundary vertices deviate from the boundary by " +
                      std::to_string(deviation));
  return mesh;
}

PolyMesh generate_voronoi_mesh(const DomainSpec& domain, int n_seeds, int lloyd_iters,
                               std::uint64_t rng_seed) {
  if (n_seeds < 4) throw InvariantViolation("need at least 4 seeds");
  std::mt19937_64 rng(rng_seed);
  auto uniform = [&rng](double a, double b) {
    return a + (b - a) * ((rng() >> 11) * 0x1.0p-53);
  };
  std::vector<Point> seeds;
  seeds.reserve(n_seeds);
  long long max_tries = 10000LL * n_seeds;
  while ((int)seeds.size() < n_seeds && max_tries-- > 0) {
    Point p{uniform(domain.bbox_min.x, domain.bbox_max.x),
            uniform(domain.bbox_min.y, domain.bbox_max.y)};
    if (domain_contains(domain, p)) seeds.push_back(p);
  }
  if ((int)seeds.size() < n_seeds)
    throw MeshInvalid("seed sampling failed; is the domain degenerate?");
  VoronoiOptions options;
  options.lloyd_iterations = lloyd_iters;
  return voronoi_mesh_from_seeds(domain, seeds, options);
}

}  // namespace vemcurve
