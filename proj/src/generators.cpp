#include "mobagent/generators.hpp"

#include <charconv>
#include <sstream>
#include <vector>

#include "mobagent/random.hpp"

namespace mobagent {

namespace {

using EdgeList = std::vector<std::pair<NodeIndex, NodeIndex>>;

// Enough for G(8, 0.1), whose connection probability is around 1e-4.
constexpr std::uint64_t kMaxGnpAttempts = std::uint64_t{1} << 26;

[[noreturn]] void invalid(const std::string& why) {
  throw GraphError(GraphError::Kind::invalid_parameters, why);
}

void require_size(const GeneratorConfig& config, std::size_t minimum) {
  if (config.size < minimum) {
    invalid(to_string(config.model) + " needs at least " + std::to_string(minimum) + " nodes");
  }
}

bool edges_connected(std::size_t n, const EdgeList& edges) {
  std::vector<std::vector<NodeIndex>> adj(n);
  for (const auto& [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<char> seen(n, 0);
  std::vector<NodeIndex> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const NodeIndex v = stack.back();
    stack.pop_back();
    for (NodeIndex u : adj[v]) {
      if (!seen[u]) {
        seen[u] = 1;
        ++reached;
        stack.push_back(u);
      }
    }
  }
  return reached == n;
}

PortGraph build(const GeneratorConfig& config) {
  EdgeList edges;
  std::size_t n = config.size;
  switch (config.model) {
    case GraphModel::complete:
      require_size(config, 1);
      for (NodeIndex u = 0; u < n; ++u)
        for (NodeIndex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
      break;
    case GraphModel::cycle:
      require_size(config, 3);
      for (NodeIndex u = 0; u < n; ++u) edges.emplace_back(u, static_cast<NodeIndex>((u + 1) % n));
      break;
    case GraphModel::path:
      require_size(config, 1);
      for (NodeIndex u = 0; u + 1 < n; ++u) edges.emplace_back(u, u + 1);
      break;
    case GraphModel::star:
      require_size(config, 1);
      for (NodeIndex u = 1; u < n; ++u) edges.emplace_back(0, u);
      break;
    case GraphModel::petersen:
      n = 10;
      for (NodeIndex i = 0; i < 5; ++i) {
        edges.emplace_back(i, (i + 1) % 5);          // outer cycle
        edges.emplace_back(i, i + 5);                // spokes
        edges.emplace_back(5 + i, 5 + (i + 2) % 5);  // inner pentagram
      }
      break;
    case GraphModel::diamond:
      n = 4;
      edges = {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}};
      break;
    case GraphModel::gnp: {
      require_size(config, 1);
      const double p = config.edge_probability;
      if (!(p > 0.0) || p > 1.0) invalid("gnp edge probability must lie in (0, 1]");
      Rng rng(config.seed);
      for (std::uint64_t attempt = 0; attempt < kMaxGnpAttempts; ++attempt) {
        edges.clear();
        for (NodeIndex u = 0; u < n; ++u)
          for (NodeIndex v = u + 1; v < n; ++v)
            if (uniform_unit(rng) < p) edges.emplace_back(u, v);
        if (edges_connected(n, edges)) return PortGraph::from_edges(n, edges);
      }
      invalid("gnp produced no connected sample within the attempt limit");
    }
  }
  return PortGraph::from_edges(n, edges);
}

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    invalid("bad " + what + " '" + text + "'");
  }
  return value;
}

}  // namespace

PortGraph generate(const GeneratorConfig& config) {
  PortGraph graph = build(config);
  if (config.port_seed) return graph.with_shuffled_ports(*config.port_seed);
  return graph;
}

std::string to_string(GraphModel model) {
  switch (model) {
    case GraphModel::complete: return "complete";
    case GraphModel::cycle: return "cycle";
    case GraphModel::path: return "path";
    case GraphModel::star: return "star";
    case GraphModel::petersen: return "petersen";
    case GraphModel::diamond: return "diamond";
    case GraphModel::gnp: return "gnp";
  }
  return "unknown";
}

GeneratorConfig parse_generator_spec(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream in(spec);
  for (std::string part; std::getline(in, part, ':');) parts.push_back(part);
  if (parts.empty() || parts[0].empty()) invalid("empty generator spec");

  GeneratorConfig config;
  std::vector<std::string> positional;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const auto& part = parts[i];
    if (part.rfind("seed=", 0) == 0) {
      config.seed = parse_u64(part.substr(5), "seed");
    } else if (part.rfind("ports=", 0) == 0) {
      config.port_seed = parse_u64(part.substr(6), "port seed");
    } else {
      positional.push_back(part);
    }
  }

  const std::string& name = parts[0];
  auto expect_positional = [&](std::size_t count) {
    if (positional.size() != count) {
      invalid("generator '" + name + "' takes " + std::to_string(count) + " parameter(s)");
    }
  };
  if (name == "petersen" || name == "diamond") {
    expect_positional(0);
    config.model = name == "petersen" ? GraphModel::petersen : GraphModel::diamond;
    return config;
  }
  if (name == "gnp") {
    expect_positional(2);
    config.model = GraphModel::gnp;
    config.size = parse_u64(positional[0], "node count");
    try {
      std::size_t used = 0;
      config.edge_probability = std::stod(positional[1], &used);
      if (used != positional[1].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      invalid("bad edge probability '" + positional[1] + "'");
    }
    if (!(config.edge_probability > 0.0) || config.edge_probability > 1.0) {
      invalid("gnp edge probability must lie in (0, 1]");
    }
    return config;
  }
  if (name == "complete") config.model = GraphModel::complete;
  else if (name == "cycle") config.model = GraphModel::cycle;
  else if (name == "path") config.model = GraphModel::path;
  else if (name == "star") config.model = GraphModel::star;
  else invalid("unknown generator '" + name + "'");
  expect_positional(1);
  config.size = parse_u64(positional[0], "node count");
  return config;
}

GraphModel parse_graph_model(const std::string& name) {
  for (GraphModel model : {GraphModel::complete, GraphModel::cycle, GraphModel::path,
                           GraphModel::star, GraphModel::petersen, GraphModel::diamond,
                           GraphModel::gnp}) {
    if (to_string(model) == name) return model;
  }
  throw std::invalid_argument("unknown graph family '" + name + "'");
}

std::string describe(const GeneratorConfig& config) {
  std::ostringstream out;
  out << to_string(config.model);
  switch (config.model) {
    case GraphModel::petersen:
    case GraphModel::diamond:
      break;
    case GraphModel::gnp:
      out << ':' << config.size << ':' << config.edge_probability << ":seed=" << config.seed;
      break;
    default:
      out << ':' << config.size;
  }
  if (config.port_seed) out << ":ports=" << *config.port_seed;
  return out.str();
}

}  // namespace mobagent
