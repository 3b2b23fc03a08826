#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mobagent/generators.hpp"
#include "mobagent/oracles.hpp"
#include "mobagent/protocols.hpp"
#include "mobagent/report.hpp"

namespace py = pybind11;
using namespace mobagent;

namespace {

using EdgePair = std::pair<NodeIndex, NodeIndex>;

template <class Map>
std::map<EdgePair, std::uint64_t> edge_dict(const Map& per_edge) {
  std::map<EdgePair, std::uint64_t> out;
  for (const auto& [e, value] : per_edge) out[{e.u, e.v}] = value;
  return out;
}

// (numerator, denominator) pairs; the Python side turns them into Fractions.
std::vector<std::pair<std::int64_t, std::int64_t>> rational_list(const std::vector<Rational>& v) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (const auto& r : v) out.emplace_back(r.numerator(), r.denominator());
  return out;
}

template <class Enum>
Enum pick(const std::string& text, const std::map<std::string, Enum>& names, const char* what) {
  const auto it = names.find(text);
  if (it == names.end()) throw py::value_error(std::string("unknown ") + what + " '" + text + "'");
  return it->second;
}

IdMode id_mode(const std::string& s) {
  return pick<IdMode>(s, {{"sequential", IdMode::sequential}, {"random", IdMode::random}}, "id mode");
}
DiameterMode diameter_mode(const std::string& s) {
  return pick<DiameterMode>(s, {{"exact", DiameterMode::exact}, {"n", DiameterMode::node_count}},
                            "diameter mode");
}
LccFormula lcc_formula(const std::string& s) {
  return pick<LccFormula>(s, {{"paper", LccFormula::paper}, {"standard", LccFormula::standard}},
                          "lcc formula");
}

py::dict simulate(const PortGraph& graph, const std::string& protocol, const std::string& ids,
                  std::uint64_t id_seed, const std::string& diameter, const std::string& lcc,
                  std::optional<std::uint64_t> order_seed) {
  const ProtocolKind kind = parse_protocol(protocol);
  const auto agents = assign_ids(graph.node_count(), id_mode(ids), id_seed);
  ProtocolConfig config = make_config(graph, agents, diameter_mode(diameter));
  config.lcc = lcc_formula(lcc);
  EngineOptions options;
  options.order_seed = order_seed;

  ProtocolResult r;
  {
    py::gil_scoped_release release;
    r = run_protocol(graph, agents, kind, config, options);
  }

  py::dict out;
  std::vector<std::uint64_t> id_values;
  for (AgentId id : r.ids) id_values.push_back(id.value);
  out["ids"] = id_values;
  out["rounds"] = r.metrics.rounds_elapsed;
  out["schedule_length"] = config.schedule().length();
  out["d_param"] = config.d_param;
  py::dict phases;
  for (const auto& span : r.metrics.phases) phases[py::str(span.name)] = r.metrics.rounds_in(span.name);
  out["rounds_by_phase"] = phases;
  out["peak_memory_bits"] = r.metrics.peak_memory_bits;
  out["memory_constant"] = memory_constant(r);
  std::vector<std::vector<NodeIndex>> neighbors;
  for (NodeIndex v = 0; v < graph.node_count(); ++v) {
    std::vector<NodeIndex> row;
    for (const auto& [port, id] : r.tables[v].by_port()) {
      row.push_back(static_cast<NodeIndex>(
          std::find(r.ids.begin(), r.ids.end(), id) - r.ids.begin()));
    }
    neighbors.push_back(row);
  }
  out["neighbors_by_port"] = neighbors;
  switch (kind) {
    case ProtocolKind::neighbors:
      break;
    case ProtocolKind::triangles:
      out["per_node"] = r.tally.per_node;
      out["per_edge"] = edge_dict(r.tally.per_edge);
      out["total"] = r.tally.total;
      out["flood_entries"] = std::make_pair(r.flood_min_entries, r.flood_max_entries);
      break;
    case ProtocolKind::truss:
      out["trussness"] = edge_dict(r.truss.per_edge);
      out["t_max"] = r.truss.t_max;
      out["iterations"] = r.truss_iterations;
      out["h_monotone"] = r.h_monotone;
      break;
    case ProtocolKind::centrality:
      out["defined"] = r.centrality.defined;
      out["per_node"] = rational_list(r.centrality.per_node);
      out["total"] = r.tally.total;
      break;
    case ProtocolKind::lcc:
      out["per_node"] = rational_list(r.lcc.per_node);
      break;
  }
  return out;
}

std::string run_report(const std::string& gen, const std::string& protocol, const std::string& ids,
                       std::uint64_t id_seed, const std::string& diameter, const std::string& lcc) {
  RunConfig config;
  config.generator = gen;
  config.protocol = parse_protocol(protocol);
  config.ids = id_mode(ids);
  config.id_seed = id_seed;
  config.diameter = diameter_mode(diameter);
  config.lcc = lcc_formula(lcc);
  py::gil_scoped_release release;
  return render(build_run_report(config).document);
}

}  // namespace

PYBIND11_MODULE(_mobagent, m) {
  m.doc() = "Mobile-agent triangle counting and truss decomposition simulator";

  py::register_exception<GraphError>(m, "GraphError", PyExc_ValueError);
  py::register_exception<SimulationFault>(m, "SimulationFault", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<PortGraph>(m, "PortGraph")
      .def_static("from_edges",
                  [](std::size_t n, const std::vector<EdgePair>& edges) {
                    return PortGraph::from_edges(n, edges);
                  },
                  py::arg("n"), py::arg("edges"))
      .def_property_readonly("node_count", &PortGraph::node_count)
      .def_property_readonly("edge_count", &PortGraph::edge_count)
      .def_property_readonly("max_degree", &PortGraph::max_degree)
      .def("degree", &PortGraph::degree)
      .def("follow",
           [](const PortGraph& g, NodeIndex v, Port p) {
             const PortEnd& end = g.follow(v, p);
             return std::make_pair(end.node, end.port);
           })
      .def("edges",
           [](const PortGraph& g) {
             std::vector<EdgePair> out;
             for (const Edge& e : g.edges()) out.emplace_back(e.u, e.v);
             return out;
           })
      .def("diameter", [](const PortGraph& g) { return diameter(g); })
      .def("serialize", &serialize_graph, py::arg("with_ports") = true)
      .def("with_shuffled_ports", &PortGraph::with_shuffled_ports, py::arg("seed"))
      .def("__eq__", [](const PortGraph& a, const PortGraph& b) { return a == b; })
      .def("__repr__", [](const PortGraph& g) {
        return "<PortGraph n=" + std::to_string(g.node_count()) +
               " m=" + std::to_string(g.edge_count()) + ">";
      });

  m.def("generate", [](const std::string& spec) { return generate(parse_generator_spec(spec)); },
        py::arg("spec"));
  m.def("load_graph", &load_graph, py::arg("text"));

  m.def("oracle_triangles", [](const PortGraph& g) {
    const TriangleTally t = oracle_triangles(g);
    py::dict out;
    out["per_node"] = t.per_node;
    out["per_edge"] = edge_dict(t.per_edge);
    out["total"] = t.total;
    return out;
  });
  m.def("oracle_truss", [](const PortGraph& g) { return edge_dict(oracle_truss(g).per_edge); });
  m.def("oracle_truss_hindex",
        [](const PortGraph& g) { return edge_dict(oracle_truss_hindex(g).per_edge); });
  m.def("oracle_centrality", [](const PortGraph& g) {
    const CentralityVector c = oracle_centrality(g);
    return std::make_pair(c.defined, rational_list(c.per_node));
  });
  m.def("oracle_lcc",
        [](const PortGraph& g, const std::string& formula) {
          return rational_list(oracle_lcc(g, lcc_formula(formula)).per_node);
        },
        py::arg("graph"), py::arg("formula") = "paper");
  m.def("h_index", [](const std::vector<std::uint64_t>& values) { return h_index(values); });

  m.def("simulate", &simulate, py::arg("graph"), py::arg("protocol"),
        py::arg("ids") = "sequential", py::arg("id_seed") = 0, py::arg("diameter") = "exact",
        py::arg("lcc") = "paper", py::arg("order_seed") = py::none());
  m.def("run_report", &run_report, py::arg("gen"), py::arg("protocol"),
        py::arg("ids") = "sequential", py::arg("id_seed") = 0, py::arg("diameter") = "exact",
        py::arg("lcc") = "paper");
}
