#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vemcurve/errors.hpp"
#include "vemcurve/sweep.hpp"
#include "vemcurve/system.hpp"
#include "vemcurve/testcases.hpp"
#include "vemcurve/voronoi.hpp"

namespace py = pybind11;
using namespace vemcurve;

namespace {

AngleMode angle_from_string(const std::string& s) {
  return s == "principal" ? AngleMode::principal : AngleMode::unwrapped;
}

py::dict report_to_dict(const ErrorReport& r) {
  py::dict d;
  d["h"] = r.h;
  d["n_vertices"] = r.n_vertices;
  d["n_dofs"] = r.n_dofs;
  d["energy_rel"] = r.energy_rel;
  d["energy_abs"] = r.energy_abs;
  d["l2_rel"] = r.l2_rel;
  d["l2_abs"] = r.l2_abs;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Polygonal VEM Poisson solver on curved 2D domains";

  py::class_<DomainSpec>(m, "Domain")
      .def_readonly("name", &DomainSpec::name)
      .def_readonly("diameter", &DomainSpec::diameter)
      .def("contains", [](const DomainSpec& d, double x, double y) {
        return domain_contains(d, {x, y});
      })
      .def("solution", [](const DomainSpec& d, double x, double y) {
        return d.solution({x, y});
      })
      .def("load", [](const DomainSpec& d, double x, double y) { return d.load({x, y}); });

  m.def("make_domain", [](const std::string& name, const std::string& angle) {
          return make_test_case(name, angle_from_string(angle));
        },
        py::arg("name"), py::arg("angle") = "unwrapped");

  py::class_<PolyMesh>(m, "Mesh")
      .def_property_readonly("n_vertices", &PolyMesh::n_vertices)
      .def_property_readonly("n_cells", &PolyMesh::n_cells)
      .def_property_readonly("n_edges", &PolyMesh::n_edges)
      .def_readonly("h", &PolyMesh::h)
      .def_property_readonly("vertices", [](const PolyMesh& mesh) {
        std::vector<std::pair<double, double>> out;
        out.reserve(mesh.vertices.size());
        for (const Point& p : mesh.vertices) out.emplace_back(p.x, p.y);
        return out;
      })
      .def_readonly("cells", &PolyMesh::cells)
      .def_property_readonly("boundary_edges", [](const PolyMesh& mesh) {
        std::vector<std::pair<int, int>> out;
        for (int be : mesh.boundary_edges)
          out.emplace_back(mesh.edges[be].v0, mesh.edges[be].v1);
        return out;
      });

  m.def("generate_mesh",
        [](const DomainSpec& domain, int n_seeds, int lloyd_iters, std::uint64_t seed) {
          return generate_voronoi_mesh(domain, n_seeds, lloyd_iters, seed);
        },
        py::arg("domain"), py::arg("n_seeds"), py::arg("lloyd_iters") = 20,
        py::arg("rng_seed") = 1);
  m.def("save_mesh", &save_mesh, py::arg("mesh"), py::arg("path"));
  m.def("load_mesh", &load_mesh, py::arg("path"));

  m.def("max_boundary_distance",
        [](const PolyMesh& mesh, const DomainSpec& domain, int points_per_edge) {
          auto samples = boundary_quadrature_samples(mesh, points_per_edge);
          return max_delta(samples, domain);
        },
        py::arg("mesh"), py::arg("domain"), py::arg("points_per_edge") = 3);

  m.def("solve_poisson",
        [](const DomainSpec& domain, const PolyMesh& mesh, int m, double gamma, int k) {
          AssemblyOptions opts;
          opts.gamma = gamma;
          opts.correction_depth = k;
          AssembledProblem problem = assemble(mesh, domain, m, opts);
          SolutionField field = solve(problem, mesh);
          ErrorReport report =
              compute_errors(mesh, problem.system.dof_map, field, domain);
          py::dict out = report_to_dict(report);
          out["residual"] = field.residual;
          out["delta_fallbacks"] = problem.diagnostics.delta_fallbacks;
          out["max_delta"] = problem.diagnostics.max_delta;
          return out;
        },
        py::arg("domain"), py::arg("mesh"), py::arg("m"), py::arg("gamma") = -1.0,
        py::arg("k") = -1);

  m.def("run_sweep",
        [](const std::string& test, std::vector<int> seeds, std::vector<int> orders,
           double gamma, int k, std::uint64_t rng_seed, const std::string& out_dir) {
          ExperimentConfig config;
          config.test = test;
          config.seed_counts = std::move(seeds);
          config.orders = std::move(orders);
          config.gamma = gamma;
          config.correction_depth = k;
          config.rng_seed = rng_seed;
          config.output_dir = out_dir;
          SweepResult result = run_sweep(config);
          if (!out_dir.empty()) write_sweep_outputs(config, result);
          py::list rows;
          for (const auto& row : result.rows) {
            py::dict d;
            d["mesh"] = row.mesh_name;
            d["m"] = row.m;
            d["h"] = row.h;
            d["N_V"] = row.n_vertices;
            d["N_DoFs"] = row.n_dofs;
            d["eS"] = row.energy_rel;
            d["eL2"] = row.l2_rel;
            rows.append(d);
          }
          return rows;
        },
        py::arg("test"), py::arg("seeds"), py::arg("orders"), py::arg("gamma") = -1.0,
        py::arg("k") = -1, py::arg("rng_seed") = 1, py::arg("out_dir") = "");
}
