#include "mobagent/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mobagent {

namespace {

std::string id_key(AgentId id) { return std::to_string(id.value); }

std::string edge_key(AgentId a, AgentId b) {
  const auto [lo, hi] = std::minmax(a, b);
  return std::to_string(lo.value) + "-" + std::to_string(hi.value);
}

std::string edge_key(const std::vector<AgentId>& ids, const Edge& e) {
  return edge_key(ids[e.u], ids[e.v]);
}

const char* to_string(IdMode mode) { return mode == IdMode::sequential ? "sequential" : "random"; }
const char* to_string(DiameterMode mode) { return mode == DiameterMode::exact ? "exact" : "n"; }
const char* to_string(LccFormula formula) {
  return formula == LccFormula::paper ? "paper" : "standard";
}

Json rational_json(const Rational& value) {
  return Json{{"exact", rational_text(value)}, {"value", rational_value(value)}};
}

/// Per-edge map keyed "u-v" by agent ID, ordered by key text.
template <class Map>
Json edge_map_json(const std::vector<AgentId>& ids, const Map& per_edge) {
  std::map<std::string, std::uint64_t> keyed;
  for (const auto& [e, value] : per_edge) keyed[edge_key(ids, e)] = value;
  Json out = Json::object();
  for (const auto& [key, value] : keyed) out[key] = value;
  return out;
}

Json node_map_json(const std::vector<AgentId>& ids, const std::vector<std::uint64_t>& per_node) {
  std::map<AgentId, std::uint64_t> keyed;
  for (std::size_t v = 0; v < per_node.size(); ++v) keyed[ids[v]] = per_node[v];
  Json out = Json::object();
  for (const auto& [id, value] : keyed) out[id_key(id)] = value;
  return out;
}

Json rational_map_json(const std::vector<AgentId>& ids, const std::vector<Rational>& per_node) {
  std::map<AgentId, Rational> keyed;
  for (std::size_t v = 0; v < per_node.size(); ++v) keyed[ids[v]] = per_node[v];
  Json out = Json::object();
  for (const auto& [id, value] : keyed) out[id_key(id)] = rational_json(value);
  return out;
}

std::uint64_t count_mismatches(const std::vector<std::uint64_t>& a,
                               const std::vector<std::uint64_t>& b) {
  if (a.size() != b.size()) return std::max(a.size(), b.size());
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < a.size(); ++i) out += a[i] != b[i];
  return out;
}

std::uint64_t count_mismatches(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  if (a.size() != b.size()) return std::max(a.size(), b.size());
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < a.size(); ++i) out += a[i] != b[i];
  return out;
}

std::uint64_t count_mismatches(const std::map<Edge, std::uint64_t>& a,
                               const std::map<Edge, std::uint64_t>& b) {
  std::uint64_t out = 0;
  for (const auto& [e, value] : a) {
    const auto it = b.find(e);
    out += it == b.end() || it->second != value;
  }
  for (const auto& [e, value] : b) out += a.count(e) == 0;
  return out;
}

/// Table rows that disagree with the graph: a wrong ID behind a port, or a
/// missing or extra row.
std::uint64_t table_mismatches(const PortGraph& graph, const ProtocolResult& result) {
  std::uint64_t out = 0;
  for (NodeIndex v = 0; v < graph.node_count(); ++v) {
    const NeighborTable& table = result.tables.at(v);
    if (table.size() != graph.degree(v)) {
      out += table.size() > graph.degree(v) ? table.size() - graph.degree(v)
                                            : graph.degree(v) - table.size();
    }
    for (Port p = 0; p < graph.degree(v); ++p) {
      const auto id = table.at_port(p);
      if (!id || *id != result.ids[graph.follow(v, p).node]) ++out;
    }
  }
  return out;
}

Json metrics_json(const PortGraph& graph, const ProtocolResult& result) {
  const auto& m = result.metrics;
  const ProtocolConfig& config = result.config;
  Json phases = Json::array();
  for (const auto& span : m.phases) {
    phases.push_back({{"name", span.name}, {"first_round", span.first_round}, {"rounds", span.rounds}});
  }
  Json rounds_by_phase = Json::object();
  for (const auto& span : m.phases) rounds_by_phase[span.name] = m.rounds_in(span.name);
  Json memory = Json::object();
  for (const auto& [phase, bits] : m.peak_memory_by_phase) memory[phase] = bits;

  Json out;
  out["rounds_total"] = m.rounds_elapsed;
  out["schedule_length"] = config.schedule().length();
  out["round_bound"] = round_bound(result.kind, config, graph.edge_count());
  out["phases"] = phases;
  out["rounds_by_phase"] = rounds_by_phase;
  out["peak_memory_bits_by_phase"] = memory;
  out["peak_memory_bits_max"] =
      m.peak_memory_bits.empty() ? 0 : *std::max_element(m.peak_memory_bits.begin(),
                                                          m.peak_memory_bits.end());
  out["peak_memory_bits_by_agent"] = node_map_json(result.ids, m.peak_memory_bits);
  out["memory_constant_c"] = memory_constant(result);
  if (result.kind == ProtocolKind::triangles ||
      (result.kind == ProtocolKind::centrality && !config.known_total)) {
    out["flood_table"] = {{"min_entries", result.flood_min_entries},
                          {"max_entries", result.flood_max_entries},
                          {"node_count", graph.node_count()}};
  }
  if (result.kind == ProtocolKind::truss) {
    out["truss_iterations"] = result.truss_iterations;
    out["h_updates"] = result.h_updates;
    out["h_monotone"] = result.h_monotone;
  }
  return out;
}

ProtocolConfig protocol_config(const RunConfig& config, const PortGraph& graph,
                               const std::vector<AgentId>& ids) {
  ProtocolConfig out = make_config(graph, ids, config.diameter);
  out.lcc = config.lcc;
  out.known_total = config.known_total;
  return out;
}

}  // namespace

std::string rational_text(const Rational& value) {
  return std::to_string(value.numerator()) + "/" + std::to_string(value.denominator());
}

double rational_value(const Rational& value) { return boost::rational_cast<double>(value); }

std::uint64_t round_bound(ProtocolKind kind, const ProtocolConfig& config, std::uint64_t edges) {
  const std::uint64_t schedule = config.schedule().length();
  switch (kind) {
    case ProtocolKind::neighbors: return schedule;
    case ProtocolKind::triangles: return triangle_round_budget(config);
    case ProtocolKind::lcc: return 2 * schedule;
    case ProtocolKind::centrality:
      return (config.known_total ? 3 : config.d_param + 3) * schedule;
    case ProtocolKind::truss: return truss_round_bound(config, edges);
  }
  return 0;
}

double memory_constant(const ProtocolResult& result) {
  const double scale =
      static_cast<double>(result.config.max_degree) * static_cast<double>(result.config.id_bits);
  if (scale == 0) return 0;
  std::uint64_t peak = 0;
  for (const char* phase : {"discover", "count", "support"}) {
    const auto it = result.metrics.peak_memory_by_phase.find(phase);
    if (it != result.metrics.peak_memory_by_phase.end()) peak = std::max(peak, it->second);
  }
  return static_cast<double>(peak) / scale;
}

PortGraph resolve_graph(const RunConfig& config) {
  if (config.graph_path.has_value() == config.generator.has_value()) {
    throw ConfigError("exactly one of --graph and --gen is required");
  }
  try {
    PortGraph graph = config.graph_path ? load_graph_file(*config.graph_path)
                                        : generate(parse_generator_spec(*config.generator));
    if (config.port_seed) return graph.with_shuffled_ports(*config.port_seed);
    return graph;
  } catch (const GraphError& e) {
    throw ConfigError(std::string("graph error: ") + e.what());
  } catch (const ConfigError&) {
    throw;
  } catch (const std::runtime_error& e) {
    throw ConfigError(std::string("file error: ") + e.what());
  }
}

Json config_json(const RunConfig& config) {
  Json out;
  if (config.graph_path) out["graph"] = *config.graph_path;
  if (config.generator) out["gen"] = *config.generator;
  out["port_seed"] = config.port_seed ? Json(*config.port_seed) : Json(nullptr);
  out["ids"] = to_string(config.ids);
  out["id_seed"] = config.id_seed;
  out["id_exponent"] = config.id_exponent;
  out["protocol"] = to_string(config.protocol);
  out["diameter"] = to_string(config.diameter);
  out["lcc"] = to_string(config.lcc);
  out["known_total"] = config.known_total ? Json(*config.known_total) : Json(nullptr);
  out["order_seed"] = config.order_seed ? Json(*config.order_seed) : Json(nullptr);
  return out;
}

Json graph_json(const PortGraph& graph) {
  const GraphStats s = stats(graph);
  return Json{{"n", s.nodes}, {"m", s.edges}, {"max_degree", s.max_degree}, {"diameter", s.diameter}};
}

RunReport build_run_report(const RunConfig& config, std::ostream* trace) {
  const PortGraph graph = resolve_graph(config);
  const std::vector<AgentId> ids =
      assign_ids(graph.node_count(), config.ids, config.id_seed, config.id_exponent);
  const ProtocolConfig protocol = protocol_config(config, graph, ids);

  RunReport report;
  Json& doc = report.document;
  doc["config"] = config_json(config);
  doc["graph"] = graph_json(graph);
  doc["agents"] = {{"ids", [&] {
                      Json list = Json::array();
                      for (AgentId id : ids) list.push_back(id.value);
                      return list;
                    }()},
                   {"id_bits", protocol.id_bits},
                   {"max_degree", protocol.max_degree},
                   {"d_param", protocol.d_param}};

  EngineOptions options;
  options.trace = trace;
  options.order_seed = config.order_seed;

  ProtocolResult result;
  try {
    result = run_protocol(graph, ids, config.protocol, protocol, options);
  } catch (const SimulationFault& fault) {
    doc["error"] = {{"message", fault.what()}, {"round", fault.round()}};
    doc["verdict"] = "fail";
    report.pass = false;
    return report;
  }

  Json output;
  Json oracle;
  Json deltas;
  bool pass = result.disagreements == 0;
  deltas["endpoint_disagreements"] = result.disagreements;

  switch (config.protocol) {
    case ProtocolKind::neighbors: {
      Json tables = Json::object();
      std::map<AgentId, const NeighborTable*> by_id;
      for (std::size_t v = 0; v < ids.size(); ++v) by_id[ids[v]] = &result.tables[v];
      for (const auto& [id, table] : by_id) {
        Json rows = Json::object();
        for (const auto& [port, neighbor] : table->by_port()) rows[std::to_string(port)] = neighbor.value;
        tables[id_key(id)] = rows;
      }
      output["tables"] = tables;
      const std::uint64_t wrong = table_mismatches(graph, result);
      oracle["rows_expected"] = 2 * graph.edge_count();
      deltas["table_rows"] = wrong;
      pass = pass && wrong == 0;
      break;
    }
    case ProtocolKind::triangles: {
      const TriangleTally expected = oracle_triangles(graph);
      output["per_node"] = node_map_json(ids, result.tally.per_node);
      output["per_edge"] = edge_map_json(ids, result.tally.per_edge);
      output["total"] = result.tally.total;
      oracle["per_node"] = node_map_json(ids, expected.per_node);
      oracle["per_edge"] = edge_map_json(ids, expected.per_edge);
      oracle["total"] = expected.total;
      const auto node_delta = count_mismatches(result.tally.per_node, expected.per_node);
      const auto edge_delta = count_mismatches(result.tally.per_edge, expected.per_edge);
      const auto total_delta = static_cast<std::int64_t>(result.tally.total) -
                               static_cast<std::int64_t>(expected.total);
      deltas["per_node"] = node_delta;
      deltas["per_edge"] = edge_delta;
      deltas["total"] = total_delta;
      pass = pass && node_delta == 0 && edge_delta == 0 && total_delta == 0;
      break;
    }
    case ProtocolKind::truss: {
      const TrussLabeling peeled = oracle_truss(graph);
      const TrussLabeling hindex = oracle_truss_hindex(graph);
      output["trussness"] = edge_map_json(ids, result.truss.per_edge);
      output["t_max"] = result.truss.t_max;
      oracle["trussness"] = edge_map_json(ids, peeled.per_edge);
      oracle["t_max"] = peeled.t_max;
      oracle["hindex_matches_peeling"] = peeled == hindex;
      const auto edge_delta = count_mismatches(result.truss.per_edge, peeled.per_edge);
      deltas["trussness"] = edge_delta;
      pass = pass && edge_delta == 0 && peeled == hindex && result.h_monotone;
      break;
    }
    case ProtocolKind::centrality: {
      const CentralityVector expected = oracle_centrality(graph);
      output["defined"] = result.centrality.defined;
      output["total"] = result.tally.total;
      output["per_node"] = rational_map_json(ids, result.centrality.per_node);
      oracle["defined"] = expected.defined;
      oracle["per_node"] = rational_map_json(ids, expected.per_node);
      const auto delta = count_mismatches(result.centrality.per_node, expected.per_node);
      deltas["per_node"] = delta;
      deltas["defined"] = result.centrality.defined != expected.defined;
      pass = pass && delta == 0 && result.centrality.defined == expected.defined;
      break;
    }
    case ProtocolKind::lcc: {
      const LccVector expected = oracle_lcc(graph, config.lcc);
      output["per_node"] = rational_map_json(ids, result.lcc.per_node);
      oracle["per_node"] = rational_map_json(ids, expected.per_node);
      const auto delta = count_mismatches(result.lcc.per_node, expected.per_node);
      deltas["per_node"] = delta;
      pass = pass && delta == 0;
      break;
    }
  }

  doc["output"] = output;
  doc["oracle"] = oracle;
  doc["deltas"] = deltas;
  doc["metrics"] = metrics_json(graph, result);
  doc["verdict"] = pass ? "pass" : "fail";
  report.pass = pass;
  return report;
}

Json build_oracle_report(const RunConfig& config) {
  const PortGraph graph = resolve_graph(config);
  const std::vector<AgentId> ids =
      assign_ids(graph.node_count(), config.ids, config.id_seed, config.id_exponent);
  const TriangleTally tally = oracle_triangles(graph);
  const TrussLabeling truss = oracle_truss(graph);
  const CentralityVector centrality = oracle_centrality(graph);
  const LccVector lcc = oracle_lcc(graph, config.lcc);

  Json doc;
  Json cfg = config_json(config);
  cfg.erase("protocol");
  cfg.erase("known_total");
  cfg.erase("order_seed");
  doc["config"] = cfg;
  doc["graph"] = graph_json(graph);
  doc["triangles"] = {{"per_node", node_map_json(ids, tally.per_node)},
                      {"per_edge", edge_map_json(ids, tally.per_edge)},
                      {"total", tally.total}};
  doc["truss"] = {{"trussness", edge_map_json(ids, truss.per_edge)},
                  {"t_max", truss.t_max},
                  {"hindex_matches_peeling", truss == oracle_truss_hindex(graph)}};
  doc["centrality"] = {{"defined", centrality.defined},
                       {"per_node", rational_map_json(ids, centrality.per_node)}};
  doc["lcc"] = {{"formula", to_string(config.lcc)}, {"per_node", rational_map_json(ids, lcc.per_node)}};
  return doc;
}

std::vector<GeneratorConfig> sweep_corpus(const SweepSpec& spec) {
  std::vector<GeneratorConfig> corpus;
  const bool sized = spec.family != GraphModel::petersen && spec.family != GraphModel::diamond;
  const bool seeded = spec.family == GraphModel::gnp;
  const std::uint64_t lo = sized ? spec.min_size : 0;
  const std::uint64_t hi = sized ? spec.max_size : 0;
  const std::uint64_t first = seeded ? spec.first_seed : 0;
  const std::uint64_t last = seeded ? spec.last_seed : 0;
  for (std::uint64_t size = lo; size <= hi && lo <= hi; ++size) {
    for (std::uint64_t seed = first; seed <= last && first <= last; ++seed) {
      GeneratorConfig config;
      config.model = spec.family;
      config.size = size;
      config.edge_probability = spec.edge_probability;
      config.seed = seed;
      config.port_seed = spec.port_seed;
      corpus.push_back(config);
      if (seed == UINT64_MAX) break;
    }
    if (size == UINT64_MAX) break;
  }
  if (corpus.empty()) throw ConfigError("sweep corpus is empty");
  return corpus;
}

RunReport run_sweep(const SweepSpec& spec) {
  const std::vector<GeneratorConfig> corpus = sweep_corpus(spec);
  RunReport report;
  Json& doc = report.document;
  doc["corpus"] = {{"family", to_string(spec.family)},
                   {"sizes", {spec.min_size, spec.max_size}},
                   {"edge_probability", spec.edge_probability},
                   {"seeds", {spec.first_seed, spec.last_seed}},
                   {"graphs", corpus.size()},
                   {"ids", to_string(spec.ids)},
                   {"diameter", to_string(spec.diameter)}};

  Json runs = Json::array();
  Json failures = Json::array();
  std::map<std::string, double> worst_ratio;
  double worst_memory = 0;
  std::uint64_t executed = 0;

  for (const GeneratorConfig& gen : corpus) {
    const std::string name = describe(gen);
    std::optional<PortGraph> graph;
    try {
      graph = generate(gen);
    } catch (const GraphError& e) {
      failures.push_back({{"graph", name}, {"protocol", nullptr}, {"reason", e.what()}});
      continue;
    }
    const auto ids = assign_ids(graph->node_count(), spec.ids, spec.id_seed);
    const ProtocolConfig config = make_config(*graph, ids, spec.diameter);
    for (ProtocolKind kind : spec.protocols) {
      RunConfig run;
      run.generator = name;
      run.ids = spec.ids;
      run.id_seed = spec.id_seed;
      run.protocol = kind;
      run.diameter = spec.diameter;
      ++executed;
      RunReport single = build_run_report(run);
      const Json& d = single.document;
      Json entry{{"graph", name}, {"protocol", to_string(kind)}, {"verdict", d.at("verdict")}};
      if (d.contains("metrics")) {
        const Json& m = d.at("metrics");
        const auto rounds = m.at("rounds_total").get<std::uint64_t>();
        const auto bound = m.at("round_bound").get<std::uint64_t>();
        const double ratio = bound == 0 ? 0.0 : static_cast<double>(rounds) / bound;
        entry["rounds"] = rounds;
        entry["round_bound"] = bound;
        entry["schedule_length"] = config.schedule().length();
        entry["discover_rounds"] = m.at("rounds_by_phase").value("discover", std::uint64_t{0});
        entry["memory_constant_c"] = m.at("memory_constant_c");
        worst_ratio[to_string(kind)] = std::max(worst_ratio[to_string(kind)], ratio);
        worst_memory = std::max(worst_memory, m.at("memory_constant_c").get<double>());
      }
      if (!single.pass) {
        failures.push_back({{"graph", name},
                            {"protocol", to_string(kind)},
                            {"reason", d.contains("error") ? d.at("error").at("message")
                                                           : Json("oracle mismatch")}});
      }
      runs.push_back(entry);
    }
  }

  Json ratios = Json::object();
  for (const auto& [kind, ratio] : worst_ratio) ratios[kind] = ratio;
  doc["runs_executed"] = executed;
  doc["failures"] = failures;
  doc["max_round_bound_ratio"] = ratios;
  doc["max_memory_constant_c"] = worst_memory;
  doc["runs"] = runs;
  report.pass = failures.empty();
  doc["verdict"] = report.pass ? "pass" : "fail";
  return report;
}

std::string render(const Json& document) { return document.dump(2) + "\n"; }

}  // namespace mobagent
