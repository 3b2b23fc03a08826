#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mobagent/generators.hpp"
#include "mobagent/oracles.hpp"
#include "mobagent/protocols.hpp"

namespace mobagent {

using Json = nlohmann::ordered_json;

/// Bad user input: unreadable file, malformed graph, contradictory flags.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything needed to reproduce a run. Exactly one of `graph_path` and
/// `generator` is set.
struct RunConfig {
  std::optional<std::string> graph_path;
  std::optional<std::string> generator;
  std::optional<std::uint64_t> port_seed;
  IdMode ids = IdMode::sequential;
  std::uint64_t id_seed = 0;
  unsigned id_exponent = 2;
  ProtocolKind protocol = ProtocolKind::triangles;
  DiameterMode diameter = DiameterMode::exact;
  LccFormula lcc = LccFormula::paper;
  std::optional<std::uint64_t> known_total;
  std::optional<std::uint64_t> order_seed;
};

PortGraph resolve_graph(const RunConfig& config);
Json config_json(const RunConfig& config);
Json graph_json(const PortGraph& graph);

struct RunReport {
  Json document;
  bool pass = false;
};

/// Simulates the protocol, runs the matching oracle and diffs them. A
/// simulation fault yields a failing report that carries the fault message.
RunReport build_run_report(const RunConfig& config, std::ostream* trace = nullptr);

/// Oracle values for the graph only, no simulation.
Json build_oracle_report(const RunConfig& config);

/// Generator family crossed with sizes and seeds; every protocol runs on
/// every graph.
struct SweepSpec {
  GraphModel family = GraphModel::gnp;
  std::uint64_t min_size = 0;
  std::uint64_t max_size = 0;
  double edge_probability = 0;
  std::uint64_t first_seed = 0;
  std::uint64_t last_seed = 0;
  std::optional<std::uint64_t> port_seed;
  IdMode ids = IdMode::sequential;
  std::uint64_t id_seed = 0;
  DiameterMode diameter = DiameterMode::exact;
  std::vector<ProtocolKind> protocols = {ProtocolKind::neighbors, ProtocolKind::triangles,
                                         ProtocolKind::truss, ProtocolKind::centrality,
                                         ProtocolKind::lcc};
};

/// Generator configs the sweep covers. Throws ConfigError when empty.
std::vector<GeneratorConfig> sweep_corpus(const SweepSpec& spec);

RunReport run_sweep(const SweepSpec& spec);

/// "a/b" for the exact value.
std::string rational_text(const Rational& value);
double rational_value(const Rational& value);

/// Round bound the protocol's schedule promises.
std::uint64_t round_bound(ProtocolKind kind, const ProtocolConfig& config, std::uint64_t edges);

/// Peak metered bits during discovery and local counting, over Delta * L.
double memory_constant(const ProtocolResult& result);

/// Pretty-printed with a trailing newline; byte-stable for equal inputs.
std::string render(const Json& document);

}  // namespace mobagent
