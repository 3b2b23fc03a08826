#include <gtest/gtest.h>

#include "mobagent/generators.hpp"
#include "mobagent/protocols.hpp"

using namespace mobagent;

namespace {

PortGraph make(const char* spec) { return generate(parse_generator_spec(spec)); }

std::vector<AgentId> ids_of(std::initializer_list<std::uint64_t> values) {
  std::vector<AgentId> out;
  for (auto v : values) out.push_back(AgentId{v});
  return out;
}

ProtocolResult run(const PortGraph& g, ProtocolKind kind,
                   std::vector<AgentId> ids = {}) {
  if (ids.empty()) ids = assign_ids(g.node_count(), IdMode::sequential);
  return run_protocol(g, ids, kind, make_config(g, ids));
}

}  // namespace

TEST(Ids, SequentialAndRandom) {
  EXPECT_EQ(assign_ids(3, IdMode::sequential), ids_of({1, 2, 3}));
  const auto random = assign_ids(20, IdMode::random, 5);
  std::set<AgentId> distinct(random.begin(), random.end());
  EXPECT_EQ(distinct.size(), 20u);
  for (AgentId id : random) EXPECT_LE(id.value, 400u);
  EXPECT_EQ(assign_ids(20, IdMode::random, 5), random);
  EXPECT_NE(assign_ids(20, IdMode::random, 6), random);
}

TEST(Schedule, SlotsFollowBits) {
  const MeetingSchedule s(2, 3);
  EXPECT_EQ(s.length(), 12u);
  // ID 5 = 101: bit 0 set, bit 1 clear, bit 2 set.
  const AgentId id{5};
  EXPECT_EQ(s.slot(id, 2, 0).action, MeetingSchedule::Action::leave);
  EXPECT_EQ(s.slot(id, 2, 1).action, MeetingSchedule::Action::visit);
  EXPECT_EQ(s.slot(id, 2, 2).port, 1u);
  EXPECT_EQ(s.slot(id, 2, 4).action, MeetingSchedule::Action::stay_home);
  // Degree 1 in a window sized for 2: idle after the only port.
  EXPECT_EQ(s.slot(id, 1, 2).action, MeetingSchedule::Action::idle);
}

TEST(AgentNeighbors, SingleEdgeTakesFourRounds) {
  const PortGraph k2 = load_graph("0 1");
  const auto r = run(k2, ProtocolKind::neighbors, ids_of({1, 2}));
  EXPECT_EQ(r.metrics.rounds_elapsed, 4u);
  EXPECT_EQ(r.config.id_bits, 2u);
  ASSERT_EQ(r.tables.size(), 2u);
  EXPECT_EQ(r.tables[0].at_port(0), AgentId{2});
  EXPECT_EQ(r.tables[1].at_port(0), AgentId{1});
  EXPECT_EQ(r.tables[0].size(), 1u);
  EXPECT_EQ(r.tables[1].size(), 1u);
}

TEST(AgentNeighbors, TriangleTables) {
  const auto r = run(make("complete:3"), ProtocolKind::neighbors);
  EXPECT_EQ(r.tables[0].sorted_ids(), ids_of({2, 3}));
  EXPECT_EQ(r.tables[1].sorted_ids(), ids_of({1, 3}));
  EXPECT_EQ(r.tables[2].sorted_ids(), ids_of({1, 2}));
}

TEST(AgentNeighbors, StarWithSparseIds) {
  const PortGraph star = make("star:4");
  const auto r = run(star, ProtocolKind::neighbors, ids_of({7, 1, 2, 4}));
  EXPECT_EQ(r.tables[0].sorted_ids(), ids_of({1, 2, 4}));
  for (NodeIndex v = 1; v < 4; ++v) EXPECT_EQ(r.tables[v].sorted_ids(), ids_of({7}));
  EXPECT_EQ(r.metrics.rounds_elapsed, 2u * 3 * 3);
}

TEST(AgentNeighbors, IdZeroIsTreatedAsAllZeroBits) {
  const PortGraph p3 = make("path:3");
  const auto r = run(p3, ProtocolKind::neighbors, ids_of({0, 3, 1}));
  EXPECT_EQ(r.tables[0].sorted_ids(), ids_of({3}));
  EXPECT_EQ(r.tables[1].sorted_ids(), ids_of({0, 1}));
}

TEST(AgentTriangles, LocalCounts) {
  const auto k3 = run(make("complete:3"), ProtocolKind::triangles);
  EXPECT_EQ(k3.tally.total, 1u);
  for (auto t : k3.tally.per_node) EXPECT_EQ(t, 1u);
  for (auto t : k3.agent_totals) EXPECT_EQ(t, 1u);

  const auto k4 = run(make("complete:4"), ProtocolKind::triangles);
  EXPECT_EQ(k4.tally.total, 4u);
  for (auto t : k4.tally.per_node) EXPECT_EQ(t, 3u);
  for (const auto& [e, s] : k4.tally.per_edge) EXPECT_EQ(s, 2u);

  const auto c5 = run(make("cycle:5"), ProtocolKind::triangles);
  EXPECT_EQ(c5.tally.total, 0u);
  for (auto t : c5.tally.per_node) EXPECT_EQ(t, 0u);

  EXPECT_EQ(run(make("path:3"), ProtocolKind::triangles).tally.total, 0u);
}

TEST(AgentTriangles, ExactRoundBudget) {
  const PortGraph g = make("gnp:16:0.3:seed=2");
  const auto r = run(g, ProtocolKind::triangles);
  const std::uint64_t schedule = r.config.schedule().length();
  EXPECT_EQ(r.metrics.rounds_in("discover"), schedule);
  EXPECT_EQ(r.metrics.rounds_in("count"), schedule);
  EXPECT_EQ(r.metrics.rounds_in("flood"), r.config.d_param * schedule);
  EXPECT_EQ(r.metrics.rounds_elapsed, triangle_round_budget(r.config));
  EXPECT_EQ(r.flood_min_entries, g.node_count());
}

TEST(AgentTriangles, RejectsIdsWiderThanWindow) {
  const PortGraph k3 = make("complete:3");
  const auto ids = ids_of({1, 2, 9});
  ProtocolConfig config = make_config(k3, ids);
  config.id_bits = 2;
  EXPECT_THROW(run_protocol(k3, ids, ProtocolKind::triangles, config), SimulationFault);
}

TEST(AgentCentrality, KnownTotalSkipsFlooding) {
  const PortGraph k4 = make("complete:4");
  const auto ids = assign_ids(4, IdMode::sequential);
  ProtocolConfig config = make_config(k4, ids);
  config.known_total = 4;
  const auto r = run_protocol(k4, ids, ProtocolKind::centrality, config);
  EXPECT_EQ(r.metrics.rounds_in("flood"), 0u);
  EXPECT_EQ(r.metrics.rounds_elapsed, 3 * config.schedule().length());
  for (const auto& tc : r.centrality.per_node) EXPECT_EQ(tc, Rational(1));
}

TEST(AgentCentrality, SpotValues) {
  for (const auto& tc : run(make("complete:3"), ProtocolKind::centrality).centrality.per_node) {
    EXPECT_EQ(tc, Rational(1));
  }
  const auto petersen = run(make("petersen"), ProtocolKind::centrality);
  EXPECT_FALSE(petersen.centrality.defined);
  for (const auto& tc : petersen.centrality.per_node) EXPECT_EQ(tc, Rational(0));
}

TEST(AgentLcc, SpotValues) {
  for (const auto& v : run(make("complete:3"), ProtocolKind::lcc).lcc.per_node) {
    EXPECT_EQ(v, Rational(1, 2));
  }
  const auto p3 = run(make("path:3"), ProtocolKind::lcc);
  EXPECT_EQ(p3.lcc.per_node[0], Rational(0));
  EXPECT_EQ(p3.lcc.per_node[2], Rational(0));

  const PortGraph k4 = make("complete:4");
  const auto ids = assign_ids(4, IdMode::sequential);
  ProtocolConfig config = make_config(k4, ids);
  config.lcc = LccFormula::standard;
  for (const auto& v : run_protocol(k4, ids, ProtocolKind::lcc, config).lcc.per_node) {
    EXPECT_EQ(v, Rational(1));
  }
}

TEST(AgentTruss, CompleteGraphNeedsNoUpdates) {
  const auto r = run(make("complete:4"), ProtocolKind::truss);
  for (const auto& [e, k] : r.truss.per_edge) EXPECT_EQ(k, 4u);
  EXPECT_EQ(r.truss.per_edge.size(), 6u);
  EXPECT_EQ(r.h_updates, 0u);
  EXPECT_EQ(r.truss_iterations, 1u);
}

TEST(AgentTruss, Diamond) {
  const auto r = run(make("diamond"), ProtocolKind::truss);
  EXPECT_EQ(r.truss.per_edge.size(), 5u);
  for (const auto& [e, k] : r.truss.per_edge) EXPECT_EQ(k, 3u);
  EXPECT_TRUE(r.h_monotone);
}

TEST(AgentTruss, CycleTerminatesInOneIteration) {
  const auto r = run(make("cycle:5"), ProtocolKind::truss);
  for (const auto& [e, k] : r.truss.per_edge) EXPECT_EQ(k, 2u);
  EXPECT_EQ(r.truss_iterations, 1u);
}

// Two K4s sharing a vertex, joined to a tail: forces several h drops.
TEST(AgentTruss, MatchesOracleWithCascades) {
  const PortGraph g = load_graph(
      "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n3 4\n3 5\n3 6\n4 5\n4 6\n5 6\n6 7\n7 8\n6 8\n0 9\n1 9");
  const auto r = run(g, ProtocolKind::truss, assign_ids(g.node_count(), IdMode::random, 3));
  EXPECT_EQ(r.truss, oracle_truss(g));
  EXPECT_LE(r.truss_iterations, g.edge_count());
  EXPECT_LE(r.metrics.rounds_elapsed, truss_round_bound(r.config, g.edge_count()));
}

TEST(AgentTruss, KTrussFromDistributedLabels) {
  const auto r = run(make("complete:4"), ProtocolKind::truss);
  EXPECT_EQ(k_truss(r.truss, 4).size(), 6u);
  EXPECT_TRUE(k_truss(r.truss, 5).empty());
}

TEST(Protocols, ParseNames) {
  for (auto kind : {ProtocolKind::neighbors, ProtocolKind::triangles, ProtocolKind::truss,
                    ProtocolKind::centrality, ProtocolKind::lcc}) {
    EXPECT_EQ(parse_protocol(to_string(kind)), kind);
  }
  EXPECT_THROW(parse_protocol("squares"), std::invalid_argument);
}
