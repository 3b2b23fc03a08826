#include <gtest/gtest.h>

#include <sstream>

#include "mobagent/engine.hpp"
#include "mobagent/generators.hpp"
#include "mobagent/protocols.hpp"

using namespace mobagent;

namespace {

// Follows a fixed list of moves and records who it saw each round.
class ScriptAgent {
 public:
  struct Snapshot {
    AgentId id;
    std::uint64_t seen = 0;
  };

  ScriptAgent(AgentId id, std::vector<Move> script) : id_(id), script_(std::move(script)) {}

  AgentId id() const { return id_; }
  Snapshot snapshot() const { return {id_, static_cast<std::uint64_t>(seen_.size())}; }
  Move step(const LocalView<Snapshot>& view) {
    std::vector<AgentId> here;
    for (const Snapshot* peer : view.peers) here.push_back(peer->id);
    std::sort(here.begin(), here.end());
    seen_.push_back(here);
    entries_.push_back(view.entry_port);
    return next_ < script_.size() ? script_[next_++] : std::nullopt;
  }
  void on_arrival(std::optional<Port>) {}
  std::uint64_t memory_bits(const CostModel& cost) const {
    return MemoryMeter(cost).ids(1).counter(next_).bits();
  }
  std::string_view phase() const { return "script"; }
  bool finished() const { return next_ >= script_.size(); }

  const std::vector<std::vector<AgentId>>& seen() const { return seen_; }
  const std::vector<std::optional<Port>>& entries() const { return entries_; }

 private:
  AgentId id_;
  std::vector<Move> script_;
  std::size_t next_ = 0;
  std::vector<std::vector<AgentId>> seen_;
  std::vector<std::optional<Port>> entries_;
};

static_assert(MobileAgent<ScriptAgent>);
static_assert(MobileAgent<NeighborhoodAgent>);
static_assert(MobileAgent<TrussAgent>);

}  // namespace

TEST(Engine, SwapOnSingleEdgeWithoutMeeting) {
  const PortGraph k2 = load_graph("0 1");
  std::vector<ScriptAgent> agents{{AgentId{1}, {Port{0}, std::nullopt}},
                                  {AgentId{2}, {Port{0}, std::nullopt}}};
  Engine<ScriptAgent> engine(k2, std::move(agents));
  engine.run_round();
  EXPECT_EQ(engine.location(0), 1u);
  EXPECT_EQ(engine.location(1), 0u);
  engine.run_round();
  for (const auto& a : engine.agents()) {
    for (const auto& seen : a.seen()) EXPECT_TRUE(seen.empty());
    EXPECT_EQ(a.entries()[1], Port{0});
  }
  EXPECT_EQ(engine.metrics().rounds_elapsed, 2u);
  EXPECT_EQ(engine.metrics().moves, (std::vector<std::uint64_t>{1, 1}));
}

TEST(Engine, StayingKeepsPosition) {
  const PortGraph k2 = load_graph("0 1");
  std::vector<ScriptAgent> agents{{AgentId{1}, {std::nullopt}}, {AgentId{2}, {std::nullopt}}};
  Engine<ScriptAgent> engine(k2, std::move(agents));
  engine.run_round();
  EXPECT_EQ(engine.location(0), 0u);
  EXPECT_EQ(engine.location(1), 1u);
  EXPECT_EQ(engine.metrics().rounds_elapsed, 1u);
  EXPECT_TRUE(engine.finished());
}

TEST(Engine, ThreeColocatedAgentsSeeTwoPeers) {
  // Star with center 0; both leaves walk in, then everyone idles a round.
  const PortGraph star = generate(parse_generator_spec("star:3"));
  std::vector<ScriptAgent> agents{{AgentId{5}, {std::nullopt, std::nullopt}},
                                  {AgentId{6}, {Port{0}, std::nullopt}},
                                  {AgentId{7}, {Port{0}, std::nullopt}}};
  Engine<ScriptAgent> engine(star, std::move(agents));
  engine.run(10);
  for (const auto& a : engine.agents()) {
    ASSERT_EQ(a.seen().size(), 2u);
    EXPECT_EQ(a.seen()[1].size(), 2u) << a.id().value;
  }
  EXPECT_EQ(engine.agents()[0].seen()[1], (std::vector<AgentId>{{6}, {7}}));
}

TEST(Engine, OutOfRangePortFaults) {
  const PortGraph k2 = load_graph("0 1");
  std::vector<ScriptAgent> agents{{AgentId{1}, {std::nullopt, Port{0}}},
                                  {AgentId{2}, {std::nullopt, Port{3}}}};
  Engine<ScriptAgent> engine(k2, std::move(agents));
  engine.run_round();
  try {
    engine.run_round();
    FAIL() << "expected a fault";
  } catch (const SimulationFault& fault) {
    EXPECT_EQ(fault.round(), 1u);
    ASSERT_TRUE(fault.agent().has_value());
    EXPECT_EQ(fault.agent()->value, 2u);
  }
}

TEST(Engine, RejectsDuplicateIdsAndWrongAgentCount) {
  const PortGraph k2 = load_graph("0 1");
  EXPECT_THROW(Engine<ScriptAgent>(k2, {{AgentId{1}, {}}, {AgentId{1}, {}}}), SimulationFault);
  EXPECT_THROW(Engine<ScriptAgent>(k2, {{AgentId{1}, {}}}), SimulationFault);
}

TEST(Engine, RoundBudgetFaults) {
  const PortGraph k2 = load_graph("0 1");
  std::vector<ScriptAgent> agents{{AgentId{1}, {std::nullopt, std::nullopt, std::nullopt}},
                                  {AgentId{2}, {std::nullopt}}};
  Engine<ScriptAgent> engine(k2, std::move(agents));
  EXPECT_THROW(engine.run(2), SimulationFault);
}

TEST(MemoryMeter, CostModelExamples) {
  const CostModel cost(4, 4);
  EXPECT_EQ(cost.port_bits(), 2u);
  EXPECT_EQ(MemoryMeter(cost).bits(), 0u);
  EXPECT_EQ(MemoryMeter(cost).ids(3).ports(3).bits(), 18u);
  EXPECT_EQ(MemoryMeter(cost).counter(6).bits(), 3u);
  EXPECT_EQ(MemoryMeter(cost).counter(0).bits(), 1u);
  EXPECT_EQ(MemoryMeter(cost).flags(2).bits(), 2u);
  EXPECT_EQ(CostModel(3, 1).port_bits(), 0u);
  EXPECT_EQ(CostModel(3, 5).port_bits(), 3u);
}

TEST(Engine, PeakMemoryTracked) {
  const PortGraph k2 = load_graph("0 1");
  std::vector<ScriptAgent> agents{{AgentId{1}, {std::nullopt, std::nullopt, std::nullopt, std::nullopt}},
                                  {AgentId{2}, {std::nullopt}}};
  EngineOptions options;
  options.cost = CostModel(2, 1);
  Engine<ScriptAgent> engine(k2, std::move(agents), options);
  engine.run(10);
  // id (2 bits) + counter 4 (3 bits)
  EXPECT_EQ(engine.metrics().peak_memory_bits[0], 5u);
  // id + counter 1
  EXPECT_EQ(engine.metrics().peak_memory_bits[1], 3u);
}

TEST(Engine, DeterministicTraceAndOrderIndependence) {
  const PortGraph g = generate(parse_generator_spec("gnp:12:0.4:seed=9"));
  const auto ids = assign_ids(g.node_count(), IdMode::random, 4);
  const ProtocolConfig config = make_config(g, ids);

  auto run = [&](std::optional<std::uint64_t> order_seed, bool poison) {
    std::ostringstream trace;
    EngineOptions options;
    options.trace = &trace;
    options.order_seed = order_seed;
    options.poison_nonlocal = poison;
    const ProtocolResult r = run_protocol(g, ids, ProtocolKind::triangles, config, options);
    return std::make_tuple(trace.str(), r.tally, r.metrics);
  };
  const auto base = run(std::nullopt, false);
  EXPECT_FALSE(std::get<0>(base).empty());
  EXPECT_EQ(run(std::nullopt, false), base);
  EXPECT_EQ(run(17, false), base);
  EXPECT_EQ(run(18, true), base);
}
