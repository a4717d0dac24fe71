// Python surface of the library. The module mirrors the C++ API closely:
// generate a subgraph, take the component census, lift the giant into a
// compact Graph, then run the analyses (spectral summary, mixing time,
// diameter, long cycles, clique minors) or drive whole experiments and get
// the CSV back as a string.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qperc/analytic.hpp"
#include "qperc/components.hpp"
#include "qperc/errors.hpp"
#include "qperc/expansion.hpp"
#include "qperc/graph.hpp"
#include "qperc/harness.hpp"
#include "qperc/hypercube.hpp"
#include "qperc/long_structures.hpp"
#include "qperc/walks.hpp"

namespace py = pybind11;
using namespace qperc;

namespace {

GenerationParams make_params(uint32_t d, double p, uint64_t seed,
                             std::optional<double> q2) {
  GenerationParams params;
  params.d = d;
  params.p = p;
  params.seed = seed;
  params.q2 = q2.value_or(-1.0);
  return params;
}

DiameterMode mode_from_string(const std::string& mode) {
  if (mode == "all-pairs") return DiameterMode::kAllPairs;
  if (mode == "ifub") return DiameterMode::kIfub;
  if (mode == "double-sweep") return DiameterMode::kDoubleSweepLower;
  throw py::value_error("diameter mode must be 'all-pairs', 'ifub', or "
                        "'double-sweep', got '" + mode + "'");
}

}  // namespace

PYBIND11_MODULE(_qperc, m) {
  m.doc() = "Percolation laboratory for the d-dimensional hypercube";
  m.attr("__version__") = "0.1.0";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);

  py::class_<HypercubeSubgraph>(m, "HypercubeSubgraph")
      .def_property_readonly("d", &HypercubeSubgraph::dim)
      .def_property_readonly("num_vertices", &HypercubeSubgraph::num_vertices)
      .def("edge_count", &HypercubeSubgraph::edge_count)
      .def("has_edge", &HypercubeSubgraph::has_edge, py::arg("v"),
           py::arg("direction"))
      .def("degree", &HypercubeSubgraph::degree, py::arg("v"))
      .def("open_mask", &HypercubeSubgraph::open_mask, py::arg("v"))
      .def("subgraph_of", &HypercubeSubgraph::subgraph_of, py::arg("other"))
      .def("__repr__", [](const HypercubeSubgraph& g) {
        return "HypercubeSubgraph(d=" + std::to_string(g.dim()) +
               ", edges=" + std::to_string(g.edge_count()) + ")";
      });

  py::class_<Graph>(m, "Graph")
      .def_property_readonly("n", [](const Graph& g) { return g.n; })
      .def("num_edges", &Graph::num_edges)
      .def("degree", &Graph::deg, py::arg("v"))
      .def("neighbors",
           [](const Graph& g, uint32_t v) {
             const auto span = g.neighbors(v);
             return std::vector<uint32_t>(span.begin(), span.end());
           },
           py::arg("v"), "Neighbor local ids of a local vertex id.")
      .def_property_readonly(
          "vertex_ids", [](const Graph& g) { return g.orig; },
          "Original hypercube vertex id for each local id.")
      .def("local_of", &Graph::local_of, py::arg("original_id"))
      .def("connected", &Graph::connected)
      .def("__repr__", [](const Graph& g) {
        return "Graph(n=" + std::to_string(g.n) +
               ", m=" + std::to_string(g.num_edges()) + ")";
      });

  py::class_<ComponentCensus>(m, "ComponentCensus")
      .def_property_readonly(
          "sizes", [](const ComponentCensus& c) { return c.sizes; },
          "Component orders, non-increasing; index 0 is the giant.")
      .def_property_readonly(
          "labels", [](const ComponentCensus& c) { return c.label; },
          "Component index per hypercube vertex.")
      .def("component_vertices", &ComponentCensus::component_vertices,
           py::arg("index"))
      .def("__len__",
           [](const ComponentCensus& c) { return c.sizes.size(); });

  py::class_<SpectralSummary>(m, "SpectralSummary")
      .def_readonly("lambda2", &SpectralSummary::lambda2)
      .def_readonly("gap", &SpectralSummary::gap)
      .def_readonly("sweep_phi", &SpectralSummary::sweep_phi)
      .def_readonly("cheeger_lower", &SpectralSummary::cheeger_lower)
      .def_readonly("cheeger_upper", &SpectralSummary::cheeger_upper)
      .def_readonly("iterations", &SpectralSummary::iterations)
      .def_readonly("residual", &SpectralSummary::residual);

  py::class_<MixingReport>(m, "MixingReport")
      .def_readonly("t_mix", &MixingReport::t_mix)
      .def_readonly("tv_curve", &MixingReport::tv_curve)
      .def_readonly("method", &MixingReport::method)
      .def_readonly("lower_bound_only", &MixingReport::lower_bound_only)
      .def_readonly("mixed", &MixingReport::mixed)
      .def_readonly("margin", &MixingReport::margin)
      .def_readonly("walkers", &MixingReport::walkers);

  py::class_<DiameterResult>(m, "DiameterResult")
      .def_readonly("value", &DiameterResult::value)
      .def_readonly("exact", &DiameterResult::exact)
      .def_readonly("method", &DiameterResult::method)
      .def_readonly("endpoint_u", &DiameterResult::endpoint_u)
      .def_readonly("endpoint_v", &DiameterResult::endpoint_v)
      .def_readonly("bfs_count", &DiameterResult::bfs_count);

  py::class_<SprinkledPair>(m, "SprinkledPair")
      .def_readonly("q1", &SprinkledPair::q1)
      .def_readonly("sprinkle", &SprinkledPair::sprinkle)
      .def_readonly("q2", &SprinkledPair::q2)
      .def_readonly("q1_prob", &SprinkledPair::q1_prob);

  // --- generation and census ---------------------------------------------

  m.def(
      "generate",
      [](uint32_t d, double p, uint64_t seed, std::optional<double> q2) {
        return generate(make_params(d, p, seed, q2));
      },
      py::arg("d"), py::arg("p"), py::arg("seed") = 1,
      py::arg("q2") = std::nullopt,
      py::call_guard<py::gil_scoped_release>(),
      "Sample Q^d_p: each hypercube edge kept independently with "
      "probability p. Pure function of (d, p, seed).");

  m.def(
      "generate_sprinkled",
      [](uint32_t d, double p, double q2, uint64_t seed) {
        return generate_sprinkled(make_params(d, p, seed, q2));
      },
      py::arg("d"), py::arg("p"), py::arg("q2"), py::arg("seed") = 1,
      py::call_guard<py::gil_scoped_release>(),
      "Two-round exposure of Q^d_p: returns (Q1, sprinkle, Q2 = union).");

  m.def("sprinkle_split", &sprinkle_split, py::arg("p"), py::arg("q2"),
        "First-round probability q1 with (1-q1)(1-q2) = 1-p.");

  m.def("full_cube", &HypercubeSubgraph::full, py::arg("d"),
        "The complete hypercube Q^d.");

  m.def("census", &census, py::arg("g"),
        py::call_guard<py::gil_scoped_release>(),
        "Connected-component census, largest first.");

  m.def("giant_fraction", &giant_fraction, py::arg("census"), py::arg("d"));
  m.def("second_largest_order", &second_largest_order, py::arg("census"));

  m.def(
      "giant",
      [](const HypercubeSubgraph& g) {
        const ComponentCensus c = census(g);
        return induced_graph(g, c.component_vertices(0));
      },
      py::arg("g"), py::call_guard<py::gil_scoped_release>(),
      "The largest component as a compact graph (original ids retained).");

  m.def("induced_graph", &induced_graph, py::arg("g"), py::arg("vertices"),
        py::call_guard<py::gil_scoped_release>());
  m.def("graph_from_edges", &graph_from_edges, py::arg("n"), py::arg("edges"));

  // --- snapshots -----------------------------------------------------------

  m.def("save_snapshot", &save_snapshot, py::arg("path"), py::arg("g"),
        py::arg("seed") = 0);
  m.def(
      "load_snapshot",
      [](const std::string& path) {
        uint64_t seed = 0;
        HypercubeSubgraph g = load_snapshot(path, &seed);
        return py::make_tuple(std::move(g), seed);
      },
      py::arg("path"), "Returns (subgraph, stored_seed).");

  // --- analysis ------------------------------------------------------------

  m.def("survival_probability", &survival_probability, py::arg("delta"),
        py::arg("tol") = 1e-10,
        "Largest root of x = 1 - exp(-(1+delta) x); 0 for delta <= 0.");

  m.def("spectral_summary", &spectral_summary, py::arg("g"),
        py::arg("tol") = 1e-10, py::call_guard<py::gil_scoped_release>());

  m.def("mixing_time", &mixing_time_exact, py::arg("g"),
        py::arg("eps") = 0.25, py::arg("step_cap") = uint64_t{1} << 20,
        py::call_guard<py::gil_scoped_release>(),
        "Worst-start total-variation mixing time of the lazy walk.");

  m.def("mixing_bound_cheeger", &mixing_bound_cheeger, py::arg("phi"),
        py::arg("pi_min"));

  m.def(
      "diameter",
      [](const Graph& g, const std::string& mode, uint64_t cap) {
        return diameter(g, mode_from_string(mode), cap);
      },
      py::arg("g"), py::arg("mode") = "ifub",
      py::arg("cap") = uint64_t{1} << 16,
      py::call_guard<py::gil_scoped_release>());

  m.def(
      "longest_cycle",
      [](const Graph& g, uint64_t budget, uint64_t seed) {
        const CycleCertificate cert = longest_cycle_heuristic(g, budget, seed);
        if (!cert.empty()) validate_cycle(g, cert);
        return cert.vertices;
      },
      py::arg("g"), py::arg("budget") = 200000, py::arg("seed") = 1,
      py::call_guard<py::gil_scoped_release>(),
      "Longest cycle found by rotation search, as original ids in cycle "
      "order; empty when the graph is acyclic.");

  m.def(
      "clique_minor",
      [](const Graph& g, uint32_t target, uint64_t seed) {
        return greedy_minor(g, target, seed).branch_sets;
      },
      py::arg("g"), py::arg("target"), py::arg("seed") = 1,
      py::call_guard<py::gil_scoped_release>(),
      "Branch sets of a validated clique minor (order may fall short of "
      "target).");

  // --- experiment harness ---------------------------------------------------

  m.def(
      "run_csv",
      [](const std::string& kind, const std::vector<uint32_t>& dims,
         std::optional<double> p, std::optional<double> epsilon,
         std::optional<double> q2, uint32_t trials, uint64_t seed,
         uint32_t workers, uint64_t cap_exact, double tol) {
        ExperimentConfig cfg;
        cfg.kind = kind_from_name(kind);
        cfg.dims = dims;
        cfg.p = p;
        cfg.epsilon = epsilon;
        cfg.q2 = q2;
        cfg.trials = trials;
        cfg.seed = seed;
        cfg.workers = workers;
        cfg.cap_exact = cap_exact;
        cfg.tol = tol;
        return to_csv(cfg.kind, run(cfg));
      },
      py::arg("kind"), py::arg("dims"), py::arg("p") = std::nullopt,
      py::arg("epsilon") = std::nullopt, py::arg("q2") = std::nullopt,
      py::arg("trials") = 1, py::arg("seed") = 1, py::arg("workers") = 0,
      py::arg("cap_exact") = uint64_t{1} << 16, py::arg("tol") = 1e-10,
      py::call_guard<py::gil_scoped_release>(),
      "Run an experiment sweep and return the long-format CSV.");
}
