#include "mobagent/oracles.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace mobagent {

namespace {

using AdjacencyMatrix = std::vector<std::vector<char>>;

AdjacencyMatrix adjacency_matrix(const PortGraph& graph) {
  const std::size_t n = graph.node_count();
  AdjacencyMatrix adj(n, std::vector<char>(n, 0));
  for (const Edge& e : graph.edges()) {
    adj[e.u][e.v] = 1;
    adj[e.v][e.u] = 1;
  }
  return adj;
}

/// Third vertices of the triangles on edge (u, v) among edges still alive.
std::vector<NodeIndex> apexes(const std::vector<std::set<NodeIndex>>& alive, const Edge& e) {
  std::vector<NodeIndex> out;
  std::set_intersection(alive[e.u].begin(), alive[e.u].end(), alive[e.v].begin(),
                        alive[e.v].end(), std::back_inserter(out));
  return out;
}

std::uint64_t max_label(const std::map<Edge, std::uint64_t>& labels) {
  std::uint64_t best = 2;
  for (const auto& [edge, k] : labels) best = std::max(best, k);
  return best;
}

}  // namespace

TriangleTally oracle_triangles(const PortGraph& graph) {
  const std::size_t n = graph.node_count();
  const AdjacencyMatrix adj = adjacency_matrix(graph);
  TriangleTally tally;
  tally.per_node.assign(n, 0);
  for (const Edge& e : graph.edges()) tally.per_edge[e] = 0;
  for (NodeIndex a = 0; a < n; ++a) {
    for (NodeIndex b = a + 1; b < n; ++b) {
      if (!adj[a][b]) continue;
      for (NodeIndex c = b + 1; c < n; ++c) {
        if (!adj[a][c] || !adj[b][c]) continue;
        ++tally.total;
        ++tally.per_node[a];
        ++tally.per_node[b];
        ++tally.per_node[c];
        ++tally.per_edge[Edge(a, b)];
        ++tally.per_edge[Edge(a, c)];
        ++tally.per_edge[Edge(b, c)];
      }
    }
  }
  return tally;
}

std::vector<Edge> peeling_order(const PortGraph& graph) {
  std::vector<std::set<NodeIndex>> alive(graph.node_count());
  for (const Edge& e : graph.edges()) {
    alive[e.u].insert(e.v);
    alive[e.v].insert(e.u);
  }
  std::map<Edge, std::uint64_t> support;
  for (const Edge& e : graph.edges()) support[e] = apexes(alive, e).size();

  // (support, edge) ordering gives the lexicographic tie-break for free.
  std::set<std::pair<std::uint64_t, Edge>> queue;
  for (const auto& [e, s] : support) queue.emplace(s, e);

  std::vector<Edge> order;
  while (!queue.empty()) {
    const auto [s, e] = *queue.begin();
    queue.erase(queue.begin());
    order.push_back(e);
    for (NodeIndex w : apexes(alive, e)) {
      for (const Edge& other : {Edge(e.u, w), Edge(e.v, w)}) {
        auto& value = support.at(other);
        queue.erase({value, other});
        --value;
        queue.emplace(value, other);
      }
    }
    alive[e.u].erase(e.v);
    alive[e.v].erase(e.u);
    support.erase(e);
  }
  return order;
}

TrussLabeling oracle_truss(const PortGraph& graph) {
  std::vector<std::set<NodeIndex>> alive(graph.node_count());
  for (const Edge& e : graph.edges()) {
    alive[e.u].insert(e.v);
    alive[e.v].insert(e.u);
  }
  TrussLabeling labels;
  // Peeling can only lower supports, so a removed edge's trussness is the
  // running maximum of removal supports.
  std::uint64_t level = 0;
  for (const Edge& e : peeling_order(graph)) {
    level = std::max<std::uint64_t>(level, apexes(alive, e).size());
    labels.per_edge[e] = level + 2;
    alive[e.u].erase(e.v);
    alive[e.v].erase(e.u);
  }
  labels.t_max = max_label(labels.per_edge);
  return labels;
}

TrussLabeling oracle_truss_hindex(const PortGraph& graph) {
  const AdjacencyMatrix adj = adjacency_matrix(graph);
  const std::size_t n = graph.node_count();
  std::map<Edge, std::uint64_t> h;
  std::map<Edge, std::vector<std::pair<Edge, Edge>>> triangles;
  for (const Edge& e : graph.edges()) {
    auto& list = triangles[e];
    for (NodeIndex w = 0; w < n; ++w) {
      if (adj[e.u][w] && adj[e.v][w]) list.emplace_back(Edge(e.u, w), Edge(e.v, w));
    }
    h[e] = list.size();
  }

  for (bool changed = true; changed;) {
    changed = false;
    for (const Edge& e : graph.edges()) {
      std::vector<std::uint64_t> mins;
      for (const auto& [a, b] : triangles[e]) mins.push_back(std::min(h[a], h[b]));
      const std::uint64_t updated = std::min(h[e], h_index(mins));
      if (updated != h[e]) {
        h[e] = updated;
        changed = true;
      }
    }
  }

  TrussLabeling labels;
  for (const auto& [e, value] : h) labels.per_edge[e] = value + 2;
  labels.t_max = max_label(labels.per_edge);
  return labels;
}

std::uint64_t h_index(std::span<const std::uint64_t> values) {
  std::vector<std::uint64_t> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  std::uint64_t h = 0;
  while (h < sorted.size() && sorted[h] >= h + 1) ++h;
  return h;
}

CentralityVector oracle_centrality(const PortGraph& graph) {
  const std::size_t n = graph.node_count();
  const TriangleTally tally = oracle_triangles(graph);
  const AdjacencyMatrix adj = adjacency_matrix(graph);
  CentralityVector out;
  out.per_node.assign(n, Rational(0));
  out.defined = tally.total > 0;
  if (!out.defined) return out;

  for (NodeIndex v = 0; v < n; ++v) {
    // A sums T over the closed triangle neighborhood, B over neighbors
    // sharing no triangle with v.
    std::int64_t closed_sum = static_cast<std::int64_t>(tally.per_node[v]);
    std::int64_t outside_sum = 0;
    for (NodeIndex u : graph.neighbors(v)) {
      bool in_triangle = false;
      for (NodeIndex w = 0; w < n && !in_triangle; ++w) in_triangle = adj[u][w] && adj[v][w];
      const auto t = static_cast<std::int64_t>(tally.per_node[u]);
      (in_triangle ? closed_sum : outside_sum) += t;
    }
    out.per_node[v] = (Rational(closed_sum, 3) + outside_sum) /
                      static_cast<std::int64_t>(tally.total);
  }
  return out;
}

Rational lcc_value(std::uint64_t triangles, std::uint64_t degree, LccFormula formula) {
  if (degree <= 1) return Rational(0);
  const auto numerator =
      static_cast<std::int64_t>(formula == LccFormula::standard ? 2 * triangles : triangles);
  return Rational(numerator, static_cast<std::int64_t>(degree * (degree - 1)));
}

LccVector oracle_lcc(const PortGraph& graph, LccFormula formula) {
  const TriangleTally tally = oracle_triangles(graph);
  LccVector out;
  for (NodeIndex v = 0; v < graph.node_count(); ++v) {
    out.per_node.push_back(lcc_value(tally.per_node[v], graph.degree(v), formula));
  }
  return out;
}

std::vector<Edge> k_truss(const TrussLabeling& labels, std::uint64_t k) {
  if (k < 2) throw std::invalid_argument("k-truss requires k >= 2");
  std::vector<Edge> out;
  for (const auto& [e, trussness] : labels.per_edge) {
    if (trussness >= k) out.push_back(e);
  }
  return out;
}

bool is_k_truss(const PortGraph& graph, std::span<const Edge> edges, std::uint64_t k) {
  std::vector<std::set<NodeIndex>> alive(graph.node_count());
  for (const Edge& e : edges) {
    alive[e.u].insert(e.v);
    alive[e.v].insert(e.u);
  }
  return std::all_of(edges.begin(), edges.end(),
                     [&](const Edge& e) { return apexes(alive, e).size() + 2 >= k; });
}

}  // namespace mobagent
