#include "vemcurve/sweep.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "vemcurve/exceptions.hpp"
#include "vemcurve/voronoi.hpp"

namespace vemcurve {

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  try {
    c.test = j.value("test", c.test);
    if (j.contains("seeds")) c.seed_counts = j["seeds"].get<std::vector<int>>();
    if (j.contains("orders")) c.orders = j["orders"].get<std::vector<int>>();
    c.gamma = j.value("gamma", c.gamma);
    c.correction_depth = j.value("k", c.correction_depth);
    c.rng_seed = j.value("rng_seed", c.rng_seed);
    c.lloyd_iterations = j.value("lloyd", c.lloyd_iterations);
    c.output_dir = j.value("out", c.output_dir);
    c.edge_quad_points = j.value("edge_quad_points", c.edge_quad_points);
    c.volume_quad_degree = j.value("quad_degree", c.volume_quad_degree);
    if (j.value("angle", "unwrapped") == std::string("principal"))
      c.angle_mode = AngleMode::principal;
    if (j.contains("domain")) c.custom_domain = j["domain"];
  } catch (const nlohmann::json::exception& err) {
    throw ParseError(std::string("experiment config: ") + err.what());
  }
  return c;
}

namespace {

void validate_config(const ExperimentConfig& config) {
  if (config.seed_counts.empty())
    throw InvariantViolation("experiment config lists no seed counts");
  for (size_t i = 1; i < config.seed_counts.size(); ++i)
    if (config.seed_counts[i] <= config.seed_counts[i - 1])
      throw InvariantViolation("seed counts must be increasing");
  for (int m : config.orders)
    if (m < 1 || m > 8) throw InvariantViolation("orders must lie in 1..8");
}

DomainSpec config_domain(const ExperimentConfig& config) {
  if (config.custom_domain) return domain_from_json(*config.custom_domain, config.angle_mode);
  return make_test_case(config.test, config.angle_mode);
}

}  // namespace

SweepResult run_sweep(const ExperimentConfig& config) {
  validate_config(config);
  DomainSpec domain = config_domain(config);
  SweepResult result;
  result.test = config.test;

  std::vector<PolyMesh> meshes;
  for (size_t i = 0; i < config.seed_counts.size(); ++i) {
    try {
      meshes.push_back(generate_voronoi_mesh(domain, config.seed_counts[i],
                                             config.lloyd_iterations,
                                             config.rng_seed + i));
    } catch (const std::exception& err) {
      result.failures.push_back("mesh " + std::to_string(i + 1) + ": " + err.what());
    }
  }
  if (!result.failures.empty()) return result;

  for (int m : config.orders) {
    std::vector<ErrorReport> reports;
    for (size_t i = 0; i < meshes.size(); ++i) {
      std::string name = config.test + "_" + std::to_string(i + 1) + "_m" + std::to_string(m);
      try {
        AssemblyOptions opts;
        opts.gamma = config.gamma;
        opts.correction_depth = config.correction_depth;
        opts.edge_quad_points = config.edge_quad_points;
        opts.volume_quad_degree = config.volume_quad_degree;
        AssembledProblem problem = assemble(meshes[i], domain, m, opts);
        SolutionField field = solve(problem, meshes[i]);
        ErrorQuadrature equad;
        equad.volume_degree = config.volume_quad_degree;
        ErrorReport report = compute_errors(meshes[i], problem, field, domain, equad);
        reports.push_back(report);
        result.rows.push_back({name, m, report.h, report.n_vertices, report.n_dofs,
                               report.energy_rel, report.l2_rel,
                               report.energy_superclose_rel,
                               problem.diagnostics.delta_fallbacks,
                               problem.diagnostics.max_delta});
      } catch (const std::exception& err) {
        result.failures.push_back(name + std::string(": ") + err.what());
      }
    }
    result.reports[m] = reports;
    if (reports.size() >= 3) result.slopes[m] = convergence_slopes(reports);
  }
  return result;
}

AblationResult run_ablation_k(const ExperimentConfig& config) {
  if (config.orders.size() != 1)
    throw InvariantViolation("the k-ablation expects a single order m");
  AblationResult result;
  result.m = config.orders[0];
  result.k_corrected = config.correction_depth >= 0 ? config.correction_depth
                                                    : result.m / 2;

  ExperimentConfig plain = config;
  plain.correction_depth = 0;
  result.plain = run_sweep(plain);

  if (result.k_corrected == 0) {
    result.corrected = result.plain;  // degenerate ablation: same configuration
  } else {
    ExperimentConfig corrected = config;
    corrected.correction_depth = result.k_corrected;
    result.corrected = run_sweep(corrected);
  }

  auto final_slope = [&](const SweepResult& sweep) {
    auto it = sweep.slopes.find(result.m);
    if (it == sweep.slopes.end() || it->second.pairwise_energy_vs_h.empty()) return 0.0;
    return it->second.pairwise_energy_vs_h.back();
  };
  result.plain_final_slope = final_slope(result.plain);
  result.corrected_final_slope = final_slope(result.corrected);
  return result;
}

std::string sweep_csv(const SweepResult& result) {
  std::ostringstream out;
  out << "mesh,h,N_V,N_DoFs,eS,eL2\n";
  char line[256];
  for (const auto& row : result.rows) {
    std::snprintf(line, sizeof(line), "%s,%.12e,%d,%d,%.12e,%.12e\n",
                  row.mesh_name.c_str(), row.h, row.n_vertices, row.n_dofs,
                  row.energy_rel, row.l2_rel);
    out << line;
  }
  return out.str();
}

std::string sweep_summary_table(const SweepResult& result) {
  std::ostringstream out;
  std::vector<int> orders;
  for (const auto& [m, reports] : result.reports)
    if (!reports.empty()) orders.push_back(m);

  out << "Relative energy-norm errors, test case '" << result.test << "'\n\n";
  char buf[64];
  out << "  mesh            h    ";
  for (int m : orders) {
    std::snprintf(buf, sizeof(buf), "      e%d^S    ", m);
    out << buf;
  }
  out << "\n";
  size_t n_meshes = result.reports.begin() == result.reports.end()
                        ? 0
                        : result.reports.begin()->second.size();
  for (size_t i = 0; i < n_meshes; ++i) {
    std::snprintf(buf, sizeof(buf), "  %s_%zu   ", result.test.c_str(), i + 1);
    out << buf;
    std::snprintf(buf, sizeof(buf), "%11.5e ", result.reports.at(orders[0])[i].h);
    out << buf;
    for (int m : orders) {
      std::snprintf(buf, sizeof(buf), "%13.6e ", result.reports.at(m)[i].energy_rel);
      out << buf;
    }
    out << "\n";
  }
  out << "\n";
  for (int m : orders) {
    auto it = result.slopes.find(m);
    if (it == result.slopes.end()) continue;
    std::snprintf(buf, sizeof(buf), "%.2f", it->second.energy_vs_h);
    out << "  m=" << m << ": energy slope vs h " << buf;
    std::snprintf(buf, sizeof(buf), "%.2f", it->second.l2_vs_dofs);
    out << ", L2 decay vs N_DoFs " << buf << "\n";
  }
  for (const auto& f : result.failures) out << "  FAILED " << f << "\n";
  return out.str();
}

std::string write_sweep_outputs(const ExperimentConfig& config, const SweepResult& result,
                                const std::string& suffix) {
  if (config.output_dir.empty()) return "";
  std::filesystem::create_directories(config.output_dir);
  std::string base = config.output_dir + "/sweep_" + config.test + suffix;
  std::string csv_path = base + ".csv";
  {
    std::ofstream out(csv_path);
    out << sweep_csv(result);
  }
  {
    std::ofstream out(config.output_dir + "/summary_" + config.test + suffix + ".txt");
    out << sweep_summary_table(result);
  }
  return csv_path;
}

}  // namespace vemcurve
