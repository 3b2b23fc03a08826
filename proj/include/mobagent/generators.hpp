#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "mobagent/port_graph.hpp"

namespace mobagent {

enum class GraphModel { complete, cycle, path, star, petersen, diamond, gnp };

struct GeneratorConfig {
  GraphModel model = GraphModel::complete;
  std::size_t size = 0;        // node count; ignored for petersen and diamond
  double edge_probability = 0;  // gnp only
  std::uint64_t seed = 0;
  /// When set, ports at every node are permuted by this seed after construction.
  std::optional<std::uint64_t> port_seed;
};

/// Deterministic for a given config. gnp resamples until connected.
PortGraph generate(const GeneratorConfig& config);

/// Parses "complete:4", "cycle:5", "path:4", "star:5", "petersen", "diamond",
/// "gnp:16:0.3" and "gnp:16:0.3:seed=7". A trailing ":ports=N" sets the port
/// shuffle seed for any model.
GeneratorConfig parse_generator_spec(const std::string& spec);

std::string to_string(GraphModel model);
/// Inverse of to_string. Throws std::invalid_argument for unknown names.
GraphModel parse_graph_model(const std::string& name);
std::string describe(const GeneratorConfig& config);

}  // namespace mobagent
