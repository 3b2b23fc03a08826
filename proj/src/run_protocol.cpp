#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "mobagent/protocols.hpp"
#include "mobagent/random.hpp"

namespace mobagent {

std::string to_string(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::neighbors: return "neighbors";
    case ProtocolKind::triangles: return "triangles";
    case ProtocolKind::truss: return "truss";
    case ProtocolKind::centrality: return "centrality";
    case ProtocolKind::lcc: return "lcc";
  }
  return "unknown";
}

ProtocolKind parse_protocol(std::string_view name) {
  for (ProtocolKind kind : {ProtocolKind::neighbors, ProtocolKind::triangles, ProtocolKind::truss,
                            ProtocolKind::centrality, ProtocolKind::lcc}) {
    if (to_string(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown protocol '" + std::string(name) + "'");
}

bool NeighborTable::insert(Port port, AgentId neighbor) {
  if (by_id_.count(neighbor)) return false;
  if (by_port_.count(port)) {
    throw std::logic_error("port " + std::to_string(port) + " already leads to agent " +
                           std::to_string(by_port_.at(port).value));
  }
  by_port_.emplace(port, neighbor);
  by_id_.emplace(neighbor, port);
  return true;
}

std::optional<AgentId> NeighborTable::at_port(Port port) const {
  const auto it = by_port_.find(port);
  if (it == by_port_.end()) return std::nullopt;
  return it->second;
}

std::optional<Port> NeighborTable::port_of(AgentId id) const {
  const auto it = by_id_.find(id);
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

std::vector<AgentId> NeighborTable::sorted_ids() const {
  std::vector<AgentId> out;
  out.reserve(by_id_.size());
  for (const auto& [id, port] : by_id_) out.push_back(id);
  return out;
}

std::vector<AgentId> assign_ids(std::size_t n, IdMode mode, std::uint64_t seed,
                                unsigned exponent) {
  std::vector<AgentId> ids;
  ids.reserve(n);
  if (mode == IdMode::sequential) {
    for (std::size_t i = 0; i < n; ++i) ids.push_back(AgentId{i + 1});
    return ids;
  }
  if (exponent == 0) throw std::invalid_argument("ID range exponent must be positive");
  std::uint64_t bound = 1;
  for (unsigned i = 0; i < exponent; ++i) {
    if (n != 0 && bound > UINT64_MAX / n) throw std::invalid_argument("ID range n^c overflows");
    bound *= n;
  }
  if (bound + 1 < n) throw std::invalid_argument("ID range too small for distinct IDs");
  Rng rng(seed);
  std::set<std::uint64_t> used;
  while (ids.size() < n) {
    const std::uint64_t value = uniform_below(rng, bound + 1);
    if (used.insert(value).second) ids.push_back(AgentId{value});
  }
  return ids;
}

ProtocolConfig make_config(const PortGraph& graph, std::span<const AgentId> ids,
                           DiameterMode mode) {
  ProtocolConfig config;
  config.max_degree = graph.max_degree();
  std::uint64_t max_id = 0;
  for (AgentId id : ids) max_id = std::max(max_id, id.value);
  config.id_bits = id_bit_length(max_id);
  config.node_count = graph.node_count();
  config.d_param = mode == DiameterMode::exact ? diameter(graph) : graph.node_count();
  return config;
}

std::uint64_t triangle_round_budget(const ProtocolConfig& config) {
  return (config.d_param + 2) * config.schedule().length();
}

std::uint64_t truss_round_bound(const ProtocolConfig& config, std::uint64_t edge_count) {
  return config.schedule().length() * (2 + edge_count * (2 + config.d_param));
}

namespace {

void validate(const PortGraph& graph, std::span<const AgentId> ids, const ProtocolConfig& config) {
  if (ids.size() != graph.node_count()) {
    throw SimulationFault("need exactly one agent per node (" + std::to_string(graph.node_count()) +
                              " nodes, " + std::to_string(ids.size()) + " agents)",
                          std::nullopt, 0);
  }
  for (AgentId id : ids) {
    if (bit_length(id.value) > config.id_bits) {
      throw SimulationFault("ID does not fit in the configured " + std::to_string(config.id_bits) +
                                "-bit window",
                            id, 0);
    }
  }
  if (config.max_degree < graph.max_degree()) {
    throw SimulationFault("configured max degree " + std::to_string(config.max_degree) +
                              " is below the graph's " + std::to_string(graph.max_degree()),
                          std::nullopt, 0);
  }
}

std::uint64_t neighborhood_rounds(ProtocolKind kind, const ProtocolConfig& config) {
  const std::uint64_t schedule = config.schedule().length();
  switch (kind) {
    case ProtocolKind::neighbors: return schedule;
    case ProtocolKind::lcc: return 2 * schedule;
    case ProtocolKind::triangles: return triangle_round_budget(config);
    case ProtocolKind::centrality:
      return (config.known_total ? 3 : config.d_param + 3) * schedule;
    case ProtocolKind::truss: break;
  }
  return 0;
}

using IdIndex = std::unordered_map<AgentId, NodeIndex>;

IdIndex index_ids(std::span<const AgentId> ids) {
  IdIndex out;
  for (NodeIndex v = 0; v < ids.size(); ++v) out.emplace(ids[v], v);
  return out;
}

void collect_neighborhood(const PortGraph& graph, const std::vector<NeighborhoodAgent>& agents,
                          ProtocolResult& result) {
  const std::size_t n = graph.node_count();
  const bool counted = result.kind != ProtocolKind::neighbors;

  for (const auto& agent : agents) result.tables.push_back(agent.table());
  if (!counted) return;

  result.tally.per_node.resize(n);
  for (NodeIndex v = 0; v < n; ++v) result.tally.per_node[v] = agents[v].edge_vars().node_triangles;
  for (const Edge& e : graph.edges()) {
    const auto& a = agents[e.u];
    const auto& b = agents[e.v];
    const auto& low = a.id() < b.id() ? a : b;
    const auto& high = a.id() < b.id() ? b : a;
    auto count_at = [](const NeighborhoodAgent& at, AgentId other) -> std::optional<std::uint64_t> {
      const auto it = at.edge_vars().edge_counts.find(other);
      if (it == at.edge_vars().edge_counts.end()) return std::nullopt;
      return it->second;
    };
    const auto from_low = count_at(low, high.id());
    const auto from_high = count_at(high, low.id());
    if (!from_low || from_low != from_high) ++result.disagreements;
    result.tally.per_edge[e] = from_low.value_or(0);
  }

  if (result.kind == ProtocolKind::triangles || result.kind == ProtocolKind::centrality) {
    for (const auto& agent : agents) {
      result.agent_totals.push_back(agent.total().value_or(0));
      if (agent.total() != agents.front().total()) ++result.disagreements;
    }
    result.tally.total = result.agent_totals.empty() ? 0 : result.agent_totals.front();
    if (!result.config.known_total) {
      result.flood_min_entries = agents.front().flood().known.size();
      for (const auto& agent : agents) {
        result.flood_min_entries = std::min(result.flood_min_entries, agent.flood().known.size());
        result.flood_max_entries = std::max(result.flood_max_entries, agent.flood().known.size());
      }
    }
  }
  if (result.kind == ProtocolKind::centrality) {
    result.centrality.defined = agents.front().centrality_defined();
    for (const auto& agent : agents) {
      result.centrality.per_node.push_back(agent.centrality().value_or(Rational(0)));
      if (agent.centrality_defined() != result.centrality.defined) ++result.disagreements;
    }
  }
  if (result.kind == ProtocolKind::lcc) {
    for (const auto& agent : agents) result.lcc.per_node.push_back(agent.lcc().value_or(Rational(0)));
  }
}

void run_truss(const PortGraph& graph, const ProtocolConfig& config, const EngineOptions& options,
               ProtocolResult& result) {
  std::vector<TrussAgent> agents;
  for (AgentId id : result.ids) agents.emplace_back(id, config);
  Engine<TrussAgent> engine(graph, std::move(agents), options);

  const std::uint64_t m = graph.edge_count();
  const std::uint64_t iteration_cap = m + 1;
  // One schedule of slack past the bound covers the m + 1st iteration's rebuild.
  const std::uint64_t round_cap =
      truss_round_bound(config, m) + config.schedule().length() * (2 + config.d_param);
  while (!engine.finished()) {
    if (engine.agents().front().iterations() > iteration_cap) {
      throw SimulationFault("truss decomposition did not converge within m + 1 = " +
                                std::to_string(iteration_cap) + " iterations",
                            std::nullopt, engine.metrics().rounds_elapsed);
    }
    if (engine.metrics().rounds_elapsed > round_cap) {
      throw SimulationFault("truss decomposition exceeded its round cap", std::nullopt,
                            engine.metrics().rounds_elapsed);
    }
    engine.run_round();
  }

  const IdIndex node_of = index_ids(result.ids);
  for (const TrussAgent& agent : engine.agents()) {
    result.tables.push_back(agent.table());
    result.h_updates += agent.h_updates();
    result.h_monotone = result.h_monotone && agent.h_monotone();
    for (const auto& [key, state] : agent.owned_edges()) {
      const Edge e(node_of.at(key.low), node_of.at(key.high));
      result.truss.per_edge[e] = state.h + 2;
      result.tally.per_edge[e] = state.support;
    }
  }
  result.truss.t_max = 2;
  for (const auto& [e, k] : result.truss.per_edge) result.truss.t_max = std::max(result.truss.t_max, k);
  result.truss_iterations = engine.agents().empty() ? 0 : engine.agents().front().iterations();
  for (const TrussAgent& agent : engine.agents()) {
    if (agent.iterations() != result.truss_iterations) ++result.disagreements;
  }
  result.metrics = engine.metrics();
}

}  // namespace

ProtocolResult run_protocol(const PortGraph& graph, std::span<const AgentId> ids,
                            ProtocolKind kind, const ProtocolConfig& config,
                            const EngineOptions& options) {
  validate(graph, ids, config);
  ProtocolResult result;
  result.kind = kind;
  result.ids.assign(ids.begin(), ids.end());
  result.config = config;

  EngineOptions engine_options = options;
  engine_options.cost = config.cost();

  if (kind == ProtocolKind::truss) {
    run_truss(graph, config, engine_options, result);
    return result;
  }

  std::vector<NeighborhoodAgent> agents;
  for (AgentId id : ids) agents.emplace_back(id, kind, config);
  Engine<NeighborhoodAgent> engine(graph, std::move(agents), engine_options);
  engine.run(neighborhood_rounds(kind, config));
  collect_neighborhood(graph, engine.agents(), result);
  result.metrics = engine.metrics();
  return result;
}

}  // namespace mobagent
