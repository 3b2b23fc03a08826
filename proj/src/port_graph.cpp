#include "mobagent/port_graph.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "mobagent/random.hpp"

namespace mobagent {

namespace {

constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

bool connected(const std::vector<std::vector<PortEnd>>& ports) {
  if (ports.empty()) return false;
  std::vector<char> seen(ports.size(), 0);
  std::vector<NodeIndex> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const NodeIndex v = stack.back();
    stack.pop_back();
    for (const PortEnd& end : ports[v]) {
      if (!seen[end.node]) {
        seen[end.node] = 1;
        ++reached;
        stack.push_back(end.node);
      }
    }
  }
  return reached == ports.size();
}

std::string edge_text(NodeIndex u, NodeIndex v) {
  return "(" + std::to_string(u) + ", " + std::to_string(v) + ")";
}

}  // namespace

PortGraph::PortGraph(std::vector<std::vector<PortEnd>> ports) : ports_(std::move(ports)) {
  const std::size_t n = ports_.size();
  sorted_neighbors_.resize(n);
  for (NodeIndex v = 0; v < n; ++v) {
    auto& list = sorted_neighbors_[v];
    list.reserve(ports_[v].size());
    for (const PortEnd& end : ports_[v]) list.push_back(end.node);
    std::sort(list.begin(), list.end());
    max_degree_ = std::max<Port>(max_degree_, static_cast<Port>(ports_[v].size()));
    for (NodeIndex u : list) {
      if (v < u) edges_.emplace_back(v, u);
    }
  }
  std::sort(edges_.begin(), edges_.end());
}

PortGraph PortGraph::from_edges(std::size_t node_count,
                                std::span<const std::pair<NodeIndex, NodeIndex>> edges) {
  if (node_count == 0) {
    throw GraphError(GraphError::Kind::invalid_parameters, "graph must have at least one node");
  }
  std::vector<std::set<NodeIndex>> adjacency(node_count);
  for (const auto& [a, b] : edges) {
    if (a >= node_count || b >= node_count) {
      throw GraphError(GraphError::Kind::index_out_of_range,
                       "edge " + edge_text(a, b) + " references a node outside [0, " +
                           std::to_string(node_count) + ")");
    }
    if (a == b) {
      throw GraphError(GraphError::Kind::self_loop, "self-loop at node " + std::to_string(a));
    }
    if (!adjacency[a].insert(b).second) {
      throw GraphError(GraphError::Kind::duplicate_edge, "duplicate edge " + edge_text(a, b));
    }
    adjacency[b].insert(a);
  }

  // Ascending neighbor order; the remote port is the rank of v in u's list.
  std::vector<std::vector<PortEnd>> ports(node_count);
  for (NodeIndex v = 0; v < node_count; ++v) {
    for (NodeIndex u : adjacency[v]) {
      const auto rank = std::distance(adjacency[u].begin(), adjacency[u].find(v));
      ports[v].push_back(PortEnd{u, static_cast<Port>(rank)});
    }
  }
  if (!connected(ports)) {
    throw GraphError(GraphError::Kind::disconnected, "graph is not connected");
  }
  return PortGraph(std::move(ports));
}

PortGraph PortGraph::from_port_lists(std::vector<std::vector<NodeIndex>> port_lists) {
  const std::size_t n = port_lists.size();
  if (n == 0) {
    throw GraphError(GraphError::Kind::invalid_parameters, "graph must have at least one node");
  }
  std::vector<std::map<NodeIndex, Port>> port_of(n);
  for (NodeIndex v = 0; v < n; ++v) {
    for (Port p = 0; p < port_lists[v].size(); ++p) {
      const NodeIndex u = port_lists[v][p];
      if (u >= n) {
        throw GraphError(GraphError::Kind::index_out_of_range,
                         "port " + std::to_string(p) + " of node " + std::to_string(v) +
                             " leads outside the graph");
      }
      if (u == v) {
        throw GraphError(GraphError::Kind::self_loop, "self-loop at node " + std::to_string(v));
      }
      if (!port_of[v].emplace(u, p).second) {
        throw GraphError(GraphError::Kind::duplicate_edge, "duplicate edge " + edge_text(v, u));
      }
    }
  }
  std::vector<std::vector<PortEnd>> ports(n);
  for (NodeIndex v = 0; v < n; ++v) {
    for (NodeIndex u : port_lists[v]) {
      const auto back = port_of[u].find(v);
      if (back == port_of[u].end()) {
        throw GraphError(GraphError::Kind::bad_ports,
                         "edge " + edge_text(v, u) + " has no port at node " + std::to_string(u));
      }
      ports[v].push_back(PortEnd{u, back->second});
    }
  }
  if (!connected(ports)) {
    throw GraphError(GraphError::Kind::disconnected, "graph is not connected");
  }
  return PortGraph(std::move(ports));
}

bool PortGraph::adjacent(NodeIndex u, NodeIndex v) const {
  const auto& list = sorted_neighbors_.at(u);
  return std::binary_search(list.begin(), list.end(), v);
}

PortGraph PortGraph::with_shuffled_ports(std::uint64_t seed) const {
  Rng rng(seed);
  std::vector<std::vector<NodeIndex>> lists(node_count());
  for (NodeIndex v = 0; v < node_count(); ++v) {
    for (const PortEnd& end : ports_[v]) lists[v].push_back(end.node);
    seeded_shuffle(lists[v], rng);
  }
  return from_port_lists(std::move(lists));
}

PortGraph PortGraph::relabeled(std::span<const NodeIndex> mapping) const {
  const std::size_t n = node_count();
  if (mapping.size() != n) {
    throw GraphError(GraphError::Kind::invalid_parameters, "relabeling must cover every node");
  }
  std::vector<char> hit(n, 0);
  for (NodeIndex target : mapping) {
    if (target >= n || hit[target]) {
      throw GraphError(GraphError::Kind::invalid_parameters, "relabeling is not a permutation");
    }
    hit[target] = 1;
  }
  std::vector<std::vector<PortEnd>> ports(n);
  for (NodeIndex v = 0; v < n; ++v) {
    auto& out = ports[mapping[v]];
    for (const PortEnd& end : ports_[v]) out.push_back(PortEnd{mapping[end.node], end.port});
  }
  return PortGraph(std::move(ports));
}

std::vector<std::size_t> bfs_distances(const PortGraph& graph, NodeIndex source) {
  std::vector<std::size_t> dist(graph.node_count(), kUnreached);
  std::deque<NodeIndex> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const NodeIndex v = queue.front();
    queue.pop_front();
    for (NodeIndex u : graph.neighbors(v)) {
      if (dist[u] == kUnreached) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
    }
  }
  return dist;
}

std::size_t diameter(const PortGraph& graph) {
  std::size_t best = 0;
  for (NodeIndex v = 0; v < graph.node_count(); ++v) {
    for (std::size_t d : bfs_distances(graph, v)) best = std::max(best, d);
  }
  return best;
}

GraphStats stats(const PortGraph& graph) {
  return GraphStats{graph.node_count(), graph.edge_count(), graph.max_degree(), diameter(graph)};
}

namespace {

std::optional<std::uint64_t> parse_uint(std::string_view token) {
  std::uint64_t value = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

[[noreturn]] void malformed(std::size_t line_no, const std::string& why) {
  throw GraphError(GraphError::Kind::malformed,
                   "line " + std::to_string(line_no) + ": " + why);
}

}  // namespace

PortGraph load_graph(const std::string& text) {
  std::optional<std::size_t> declared_n;
  std::vector<std::pair<NodeIndex, NodeIndex>> edges;
  std::map<NodeIndex, std::vector<NodeIndex>> port_lines;

  std::istringstream in(text);
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      // "# ports v: a,b,c"
      std::string body = line.substr(first + 1);
      const auto tokens = split_ws(body);
      if (tokens.size() < 2 || tokens[0] != "ports") continue;
      const auto colon = body.find(':');
      if (colon == std::string::npos) malformed(line_no, "ports comment without ':'");
      const std::string head = body.substr(0, colon);
      const auto head_tokens = split_ws(head);
      if (head_tokens.size() != 2) malformed(line_no, "ports comment needs exactly one node");
      const auto node = parse_uint(head_tokens[1]);
      if (!node) malformed(line_no, "bad node in ports comment");
      std::vector<NodeIndex> list;
      std::string rest = body.substr(colon + 1);
      std::replace(rest.begin(), rest.end(), ',', ' ');
      for (const auto& tok : split_ws(rest)) {
        const auto u = parse_uint(tok);
        if (!u) malformed(line_no, "bad neighbor '" + tok + "' in ports comment");
        list.push_back(static_cast<NodeIndex>(*u));
      }
      if (!port_lines.emplace(static_cast<NodeIndex>(*node), std::move(list)).second) {
        malformed(line_no, "repeated ports comment for node " + head_tokens[1]);
      }
      continue;
    }
    const auto tokens = split_ws(line);
    if (tokens.size() == 2 && tokens[0] == "n") {
      if (declared_n) malformed(line_no, "repeated node-count header");
      if (!edges.empty()) malformed(line_no, "node-count header must precede edges");
      const auto count = parse_uint(tokens[1]);
      if (!count || *count == 0) malformed(line_no, "node count must be a positive integer");
      declared_n = *count;
      continue;
    }
    if (tokens.size() != 2) malformed(line_no, "expected \"u v\"");
    const auto a = parse_uint(tokens[0]);
    const auto b = parse_uint(tokens[1]);
    if (!a || !b) malformed(line_no, "node indices must be non-negative integers");
    if (*a >= std::numeric_limits<NodeIndex>::max() ||
        *b >= std::numeric_limits<NodeIndex>::max()) {
      throw GraphError(GraphError::Kind::index_out_of_range,
                       "line " + std::to_string(line_no) + ": node index too large");
    }
    edges.emplace_back(static_cast<NodeIndex>(*a), static_cast<NodeIndex>(*b));
  }

  std::size_t n = declared_n.value_or(0);
  if (!declared_n) {
    for (const auto& [a, b] : edges) n = std::max<std::size_t>(n, std::max(a, b) + 1);
  }
  if (n == 0) throw GraphError(GraphError::Kind::malformed, "document contains no edges");

  PortGraph plain = PortGraph::from_edges(n, edges);
  if (port_lines.empty()) return plain;

  std::vector<std::vector<NodeIndex>> lists(n);
  for (NodeIndex v = 0; v < n; ++v) {
    const auto it = port_lines.find(v);
    if (it == port_lines.end()) {
      lists[v].assign(plain.neighbors(v).begin(), plain.neighbors(v).end());
      continue;
    }
    std::vector<NodeIndex> sorted = it->second;
    std::sort(sorted.begin(), sorted.end());
    if (!std::equal(sorted.begin(), sorted.end(), plain.neighbors(v).begin(),
                    plain.neighbors(v).end())) {
      throw GraphError(GraphError::Kind::bad_ports,
                       "ports comment for node " + std::to_string(v) +
                           " does not match its neighbors");
    }
    lists[v] = it->second;
  }
  for (const auto& [v, list] : port_lines) {
    if (v >= n) {
      throw GraphError(GraphError::Kind::index_out_of_range,
                       "ports comment for node " + std::to_string(v) + " outside the graph");
    }
  }
  return PortGraph::from_port_lists(std::move(lists));
}

PortGraph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_graph(buffer.str());
}

std::string serialize_graph(const PortGraph& graph, bool with_ports) {
  std::ostringstream out;
  out << "n " << graph.node_count() << '\n';
  for (const Edge& e : graph.edges()) out << e.u << ' ' << e.v << '\n';
  if (with_ports) {
    for (NodeIndex v = 0; v < graph.node_count(); ++v) {
      out << "# ports " << v << ':';
      const auto ports = graph.ports(v);
      for (std::size_t p = 0; p < ports.size(); ++p) {
        out << (p == 0 ? " " : ",") << ports[p].node;
      }
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace mobagent
