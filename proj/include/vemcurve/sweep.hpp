// Mesh-refinement sweeps over orders m, CSV/table emission and the k-ablation.

#ifndef VEMCURVE_SWEEP_HPP
#define VEMCURVE_SWEEP_HPP

#include <cstdint>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "vemcurve/errors.hpp"
#include "vemcurve/testcases.hpp"

namespace vemcurve {

struct ExperimentConfig {
  std::string test = "disk";
  std::vector<int> seed_counts;
  std::vector<int> orders = {1};
  double gamma = -1.0;          // < 0: 10 m^2
  int correction_depth = -1;    // < 0: floor(m/2)
  std::uint64_t rng_seed = 1;
  int lloyd_iterations = 20;
  std::string output_dir;
  int edge_quad_points = -1;
  int volume_quad_degree = -1;
  AngleMode angle_mode = AngleMode::unwrapped;
  std::optional<nlohmann::json> custom_domain;

  static ExperimentConfig from_json(const nlohmann::json& j);
};

struct SweepRow {
  std::string mesh_name;
  int m = 0;
  double h = 0.0;
  int n_vertices = 0;
  int n_dofs = 0;
  double energy_rel = 0.0;
  double l2_rel = 0.0;
  double energy_superclose_rel = 0.0;
  int delta_fallbacks = 0;
  double max_delta = 0.0;
};

struct SweepResult {
  std::string test;
  std::vector<SweepRow> rows;
  std::map<int, std::vector<ErrorReport>> reports;  // per order
  std::map<int, SlopeSummary> slopes;               // per order with >= 3 meshes
  std::vector<std::string> failures;
  bool all_succeeded() const { return failures.empty(); }
};

SweepResult run_sweep(const ExperimentConfig& config);

struct AblationResult {
  int m = 0;
  int k_corrected = 0;
  SweepResult plain;      // k = 0 (pure Nitsche with g*)
  SweepResult corrected;  // k = floor(m/2) or the override
  double plain_final_slope = 0.0;
  double corrected_final_slope = 0.0;
};

/// Same sweep with k = 0 and with the correction; orders must hold a single m.
AblationResult run_ablation_k(const ExperimentConfig& config);

std::string sweep_csv(const SweepResult& result);
std::string sweep_summary_table(const SweepResult& result);

/// Writes CSV + summary into config.output_dir (when set). Returns CSV path.
std::string write_sweep_outputs(const ExperimentConfig& config, const SweepResult& result,
                                const std::string& suffix = "");

}  // namespace vemcurve

#endif
