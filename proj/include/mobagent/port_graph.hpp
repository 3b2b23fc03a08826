#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mobagent {

using NodeIndex = std::uint32_t;
using Port = std::uint32_t;

/// Undirected edge between two node indices, normalized so that u < v.
struct Edge {
  NodeIndex u = 0;
  NodeIndex v = 0;

  Edge() = default;
  Edge(NodeIndex a, NodeIndex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  auto operator<=>(const Edge&) const = default;
};

/// Far side of a port: the neighbor reached and the port number it sees.
struct PortEnd {
  NodeIndex node = 0;
  Port port = 0;

  bool operator==(const PortEnd&) const = default;
};

class GraphError : public std::runtime_error {
 public:
  enum class Kind {
    malformed,
    duplicate_edge,
    self_loop,
    disconnected,
    index_out_of_range,
    bad_ports,
    invalid_parameters,
  };

  GraphError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Anonymous, simple, connected graph with independent port numbering at
/// every node. Node indices exist for the simulator and the oracles only;
/// agents see nothing but port numbers.
///
/// Immutable once constructed.
class PortGraph {
 public:
  /// Ports are assigned at each node in ascending neighbor-index order.
  static PortGraph from_edges(std::size_t node_count,
                              std::span<const std::pair<NodeIndex, NodeIndex>> edges);

  /// `port_lists[v][p]` is the neighbor reached through port p of v. Each
  /// list must be a permutation of v's neighbor set; the edge set is implied.
  static PortGraph from_port_lists(std::vector<std::vector<NodeIndex>> port_lists);

  std::size_t node_count() const { return ports_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  Port degree(NodeIndex v) const { return static_cast<Port>(ports_.at(v).size()); }
  Port max_degree() const { return max_degree_; }

  /// Where port `p` of node `v` leads.
  const PortEnd& follow(NodeIndex v, Port p) const { return ports_.at(v).at(p); }
  std::span<const PortEnd> ports(NodeIndex v) const { return ports_.at(v); }

  /// Neighbor indices of v, sorted ascending.
  std::span<const NodeIndex> neighbors(NodeIndex v) const { return sorted_neighbors_.at(v); }
  bool adjacent(NodeIndex u, NodeIndex v) const;

  /// All edges, sorted lexicographically.
  std::span<const Edge> edges() const { return edges_; }

  /// Same graph with the ports at every node permuted by a seeded shuffle.
  PortGraph with_shuffled_ports(std::uint64_t seed) const;

  /// Isomorphic copy where node v becomes `mapping[v]`; port numbers travel
  /// with their edges.
  PortGraph relabeled(std::span<const NodeIndex> mapping) const;

  bool operator==(const PortGraph& other) const { return ports_ == other.ports_; }

 private:
  explicit PortGraph(std::vector<std::vector<PortEnd>> ports);

  std::vector<std::vector<PortEnd>> ports_;
  std::vector<std::vector<NodeIndex>> sorted_neighbors_;
  std::vector<Edge> edges_;
  Port max_degree_ = 0;
};

/// Exact diameter by BFS from every node.
std::size_t diameter(const PortGraph& graph);

/// Distances from `source` to every node.
std::vector<std::size_t> bfs_distances(const PortGraph& graph, NodeIndex source);

struct GraphStats {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  Port max_degree = 0;
  std::size_t diameter = 0;
};

GraphStats stats(const PortGraph& graph);

// Edge-list text format: optional "n <count>" header, "u v" lines, '#'
// comments. "# ports v: a,b,c" comments pin the port order at node v.
PortGraph load_graph(const std::string& text);
PortGraph load_graph_file(const std::string& path);

/// Sorted "u v" lines (u < v) after an "n <count>" header, followed by one
/// "# ports" line per node so that loading reproduces the port assignment.
std::string serialize_graph(const PortGraph& graph, bool with_ports = true);

}  // namespace mobagent
