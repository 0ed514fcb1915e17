// Command-line driver: mesh generation, single solves, refinement sweeps and
// the correction-depth ablation.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "vemcurve/errors.hpp"
#include "vemcurve/exceptions.hpp"
#include "vemcurve/sweep.hpp"
#include "vemcurve/system.hpp"
#include "vemcurve/testcases.hpp"
#include "vemcurve/voronoi.hpp"

using namespace vemcurve;

namespace {

struct CommonArgs {
  std::string test = "disk";
  std::string config_path;
  std::string angle = "unwrapped";
  std::uint64_t rng_seed = 1;
  double gamma = -1.0;
  int k = -1;
  int quad_degree = -1;
  int lloyd = 20;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--test", args.test, "domain/test case: disk|flower|spiral|square");
  cmd->add_option("--config", args.config_path, "JSON experiment config file");
  cmd->add_option("--gamma", args.gamma, "Nitsche penalty (default 10 m^2)");
  cmd->add_option("--k", args.k, "correction depth (default floor(m/2))");
  cmd->add_option("--rng-seed", args.rng_seed, "mesh generator seed");
  cmd->add_option("--quad-degree", args.quad_degree, "volume quadrature degree override");
  cmd->add_option("--lloyd", args.lloyd, "Lloyd relaxation iterations");
  cmd->add_option("--angle", args.angle, "spiral angle evaluation: unwrapped|principal")
      ->check(CLI::IsMember({"unwrapped", "principal"}));
}

ExperimentConfig build_config(const CommonArgs& args) {
  ExperimentConfig config;
  if (!args.config_path.empty()) {
    std::ifstream in(args.config_path);
    if (!in) throw ParseError("cannot open config '" + args.config_path + "'");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::parse_error& err) {
      throw ParseError("config '" + args.config_path + "': " + err.what());
    }
    config = ExperimentConfig::from_json(j);
  }
  config.test = args.test;
  config.gamma = args.gamma;
  config.correction_depth = args.k;
  config.rng_seed = args.rng_seed;
  config.volume_quad_degree = args.quad_degree;
  config.lloyd_iterations = args.lloyd;
  config.angle_mode = args.angle == "principal" ? AngleMode::principal : AngleMode::unwrapped;
  return config;
}

DomainSpec config_domain(const ExperimentConfig& config) {
  if (config.custom_domain) return domain_from_json(*config.custom_domain, config.angle_mode);
  return make_test_case(config.test, config.angle_mode);
}

int run_solve(const ExperimentConfig& config, const std::string& mesh_file, int seeds,
              int m) {
  DomainSpec domain = config_domain(config);
  PolyMesh mesh = mesh_file.empty()
                      ? generate_voronoi_mesh(domain, seeds, config.lloyd_iterations,
                                              config.rng_seed)
                      : load_mesh(mesh_file);
  AssemblyOptions opts;
  opts.gamma = config.gamma;
  opts.correction_depth = config.correction_depth;
  opts.volume_quad_degree = config.volume_quad_degree;
  AssembledProblem problem = assemble(mesh, domain, m, opts);
  SolutionField field = solve(problem, mesh);
  ErrorQuadrature equad;
  equad.volume_degree = config.volume_quad_degree;
  ErrorReport report = compute_errors(mesh, problem.system.dof_map, field, domain, equad);
  std::printf("test=%s m=%d h=%.5e N_V=%d N_DoFs=%d\n", config.test.c_str(), m, report.h,
              report.n_vertices, report.n_dofs);
  std::printf("energy error (rel) = %.6e\n", report.energy_rel);
  std::printf("L2 error     (rel) = %.6e\n", report.l2_rel);
  std::printf("solver residual    = %.2e\n", field.residual);
  if (problem.diagnostics.delta_fallbacks > 0)
    std::printf("delta fallbacks    = %d (no normal crossing; delta set to 0)\n",
                problem.diagnostics.delta_fallbacks);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polygonal VEM solver for the Poisson problem on curved domains"};
  app.require_subcommand(1);

  CommonArgs margs;
  int mesh_seeds = 64;
  std::string mesh_out = "mesh.json";
  CLI::App* mesh_cmd = app.add_subcommand("mesh", "generate a Voronoi mesh and save it");
  add_common(mesh_cmd, margs);
  mesh_cmd->add_option("--seeds", mesh_seeds, "number of Voronoi seeds");
  mesh_cmd->add_option("--out", mesh_out, "output mesh file");

  CommonArgs sargs;
  int solve_seeds = 64;
  int solve_m = 1;
  std::string solve_mesh_file;
  CLI::App* solve_cmd = app.add_subcommand("solve", "single assemble+solve run");
  add_common(solve_cmd, sargs);
  solve_cmd->add_option("--seeds", solve_seeds, "number of Voronoi seeds");
  solve_cmd->add_option("--m", solve_m, "polynomial order");
  solve_cmd->add_option("--mesh-file", solve_mesh_file, "use a saved mesh instead");

  CommonArgs wargs;
  std::vector<int> sweep_seeds;
  std::vector<int> sweep_orders = {1};
  int refinements = 0;
  std::string sweep_out;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "mesh-refinement sweep over orders");
  add_common(sweep_cmd, wargs);
  sweep_cmd->add_option("--seeds", sweep_seeds, "seed counts, e.g. --seeds 125 250 500");
  sweep_cmd->add_option("--m", sweep_orders, "orders, e.g. --m 1 2 3");
  sweep_cmd->add_option("--refinements", refinements,
                        "extend the seed list by doubling this many times");
  sweep_cmd->add_option("--out", sweep_out, "output directory for CSV/summary");

  CommonArgs aargs;
  std::vector<int> ablate_seeds;
  int ablate_m = 4;
  std::string ablate_out;
  CLI::App* ablate_cmd =
      app.add_subcommand("ablate-k", "compare k=0 against the corrected scheme");
  add_common(ablate_cmd, aargs);
  ablate_cmd->add_option("--seeds", ablate_seeds, "seed counts");
  ablate_cmd->add_option("--m", ablate_m, "polynomial order (m >= 1)");
  ablate_cmd->add_option("--refinements", refinements, "double the seed list");
  ablate_cmd->add_option("--out", ablate_out, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (mesh_cmd->parsed()) {
      ExperimentConfig config = build_config(margs);
      DomainSpec domain = config_domain(config);
      PolyMesh mesh = generate_voronoi_mesh(domain, mesh_seeds, config.lloyd_iterations,
                                            config.rng_seed);
      save_mesh(mesh, mesh_out);
      ShapeReport shape = audit_shape(mesh);
      std::printf("mesh: N_V=%d N_E=%d N_C=%d h=%.5e\n", mesh.n_vertices(), mesh.n_edges(),
                  mesh.n_cells(), mesh.h);
      std::printf("shape: min inradius/h_K=%.3f min vertex dist/h_K=%.3f max/min h_K=%.2f\n",
                  shape.min_inradius_ratio, shape.min_vertex_distance_ratio,
                  shape.max_h_over_min_h);
      std::printf("saved to %s\n", mesh_out.c_str());
      return 0;
    }
    if (solve_cmd->parsed()) {
      return run_solve(build_config(sargs), solve_mesh_file, solve_seeds, solve_m);
    }
    if (sweep_cmd->parsed()) {
      ExperimentConfig config = build_config(wargs);
      if (!sweep_seeds.empty()) config.seed_counts = sweep_seeds;
      for (int r = 0; r < refinements; ++r)
        config.seed_counts.push_back(config.seed_counts.back() * 2);
      config.orders = sweep_orders;
      if (!sweep_out.empty()) config.output_dir = sweep_out;
      SweepResult result = run_sweep(config);
      std::string csv = write_sweep_outputs(config, result);
      std::cout << sweep_summary_table(result);
      if (!csv.empty()) std::cout << "CSV written to " << csv << "\n";
      return result.all_succeeded() ? 0 : 1;
    }
    if (ablate_cmd->parsed()) {
      ExperimentConfig config = build_config(aargs);
      if (!ablate_seeds.empty()) config.seed_counts = ablate_seeds;
      for (int r = 0; r < refinements; ++r)
        config.seed_counts.push_back(config.seed_counts.back() * 2);
      config.orders = {ablate_m};
      if (!ablate_out.empty()) config.output_dir = ablate_out;
      AblationResult result = run_ablation_k(config);
      ExperimentConfig out_config = config;
      write_sweep_outputs(out_config, result.plain, "_k0");
      write_sweep_outputs(out_config, result.corrected,
                          "_k" + std::to_string(result.k_corrected));
      std::cout << "k = 0 (pure Nitsche with g*):\n" << sweep_summary_table(result.plain);
      std::cout << "\nk = " << result.k_corrected << " (projection correction):\n"
                << sweep_summary_table(result.corrected);
      std::printf("\nfinal pairwise energy slope: k=0 %.2f vs k=%d %.2f\n",
                  result.plain_final_slope, result.k_corrected,
                  result.corrected_final_slope);
      bool ok = result.plain.all_succeeded() && result.corrected.all_succeeded();
      return ok ? 0 : 1;
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
