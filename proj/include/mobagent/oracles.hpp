#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include <boost/rational.hpp>

#include "mobagent/port_graph.hpp"

namespace mobagent {

using Rational = boost::rational<std::int64_t>;

/// Triangle counts per node, per edge (support) and in total.
struct TriangleTally {
  std::vector<std::uint64_t> per_node;
  std::map<Edge, std::uint64_t> per_edge;
  std::uint64_t total = 0;

  bool operator==(const TriangleTally&) const = default;
};

/// Trussness of every edge. T_k is the set of edges with trussness >= k.
struct TrussLabeling {
  std::map<Edge, std::uint64_t> per_edge;
  std::uint64_t t_max = 2;

  bool operator==(const TrussLabeling&) const = default;
};

struct CentralityVector {
  std::vector<Rational> per_node;
  /// False when the graph has no triangles; every value is then 0.
  bool defined = false;

  bool operator==(const CentralityVector&) const = default;
};

enum class LccFormula {
  paper,     // T(v) / (d(v) (d(v) - 1))
  standard,  // 2 T(v) / (d(v) (d(v) - 1))
};

struct LccVector {
  std::vector<Rational> per_node;

  bool operator==(const LccVector&) const = default;
};

/// Brute force over all node triples.
TriangleTally oracle_triangles(const PortGraph& graph);

/// Sequential peeling. Among minimum-support edges the lexicographically
/// smallest is removed first.
TrussLabeling oracle_truss(const PortGraph& graph);

/// Same labels via the h-index fixed point, starting from the supports.
TrussLabeling oracle_truss_hindex(const PortGraph& graph);

/// Order of edge removals in oracle_truss, for replay tests.
std::vector<Edge> peeling_order(const PortGraph& graph);

CentralityVector oracle_centrality(const PortGraph& graph);
LccVector oracle_lcc(const PortGraph& graph, LccFormula formula = LccFormula::paper);

/// Largest h such that at least h values are >= h.
std::uint64_t h_index(std::span<const std::uint64_t> values);

/// Edges with trussness >= k; empty when k exceeds t_max. Throws for k < 2.
std::vector<Edge> k_truss(const TrussLabeling& labels, std::uint64_t k);

/// Every edge of T_k has at least k - 2 triangles inside T_k.
bool is_k_truss(const PortGraph& graph, std::span<const Edge> edges, std::uint64_t k);

Rational lcc_value(std::uint64_t triangles, std::uint64_t degree, LccFormula formula);

}  // namespace mobagent
