// Built-in domains (disk, flower, spiral, unit square) with their
// manufactured solutions, plus custom domains from config files.

#ifndef VEMCURVE_TESTCASES_HPP
#define VEMCURVE_TESTCASES_HPP

#include <cstdint>
#include <nlohmann/json_fwd.hpp>
#include <string>

#include "vemcurve/geometry.hpp"

namespace vemcurve {

/// How the angular coordinate of the spiral solution is evaluated. Both give
/// identical values here (the angular frequencies are even integers, so every
/// branch of tan^-1 produces the same sin/cos), but both are exposed so the
/// choice is explicit.
enum class AngleMode { unwrapped, principal };

/// Catalog: "disk", "flower", "spiral", "square" (alias "unit-square").
DomainSpec make_test_case(const std::string& name,
                          AngleMode angle_mode = AngleMode::unwrapped);

/// Unit-square domain with a random polynomial solution of the given degree
/// (exact right-hand side; used by patch tests).
DomainSpec make_polynomial_square_case(int degree, std::uint64_t seed);

/// Custom domain from a config entry: named curve families (circle, polar
/// series, segment) plus one of the built-in solutions.
DomainSpec domain_from_json(const nlohmann::json& config,
                            AngleMode angle_mode = AngleMode::unwrapped);

}  // namespace vemcurve

#endif
