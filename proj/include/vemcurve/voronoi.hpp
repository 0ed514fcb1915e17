// Quasi-uniform polygonal meshes: Lloyd-relaxed Voronoi cells clipped against
// a fine on-curve polyline of the domain boundary.

#ifndef VEMCURVE_VORONOI_HPP
#define VEMCURVE_VORONOI_HPP

#include <cstdint>
#include <vector>

#include "vemcurve/geometry.hpp"
#include "vemcurve/mesh.hpp"

namespace vemcurve {

struct VoronoiOptions {
  int lloyd_iterations = 20;
  int polyline_segments = 0;   // 0: max(256, 32*sqrt(n_seeds))
  double weld_tolerance = 0.0; // 0: 1e-9 * domain diameter
  double chain_keep_ratio = 0.25;  // boundary-chain vertex kept when it deviates
                                   // from the chord by more than this fraction
};

/// Voronoi tessellation of the given seeds, Lloyd-relaxed and clipped to the
/// domain. Boundary vertices end up on the true boundary.
PolyMesh voronoi_mesh_from_seeds(const DomainSpec& domain, std::vector<Point> seeds,
                                 const VoronoiOptions& options = {});

/// Seeds sampled uniformly in the domain (deterministic in rng_seed).
PolyMesh generate_voronoi_mesh(const DomainSpec& domain, int n_seeds, int lloyd_iters,
                               std::uint64_t rng_seed);

}  // namespace vemcurve

#endif
