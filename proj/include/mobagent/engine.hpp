#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "mobagent/agent.hpp"
#include "mobagent/port_graph.hpp"
#include "mobagent/random.hpp"

namespace mobagent {

template <class A>
concept MobileAgent = requires(A agent, const A& cagent,
                               const LocalView<typename A::Snapshot>& view,
                               const CostModel& cost) {
  typename A::Snapshot;
  { cagent.id() } -> std::same_as<AgentId>;
  { cagent.snapshot() } -> std::convertible_to<typename A::Snapshot>;
  { agent.step(view) } -> std::same_as<Move>;
  agent.on_arrival(std::optional<Port>{});
  { cagent.memory_bits(cost) } -> std::convertible_to<std::uint64_t>;
  { cagent.phase() } -> std::convertible_to<std::string_view>;
  { cagent.finished() } -> std::same_as<bool>;
};

struct PhaseSpan {
  std::string name;
  std::uint64_t first_round = 0;
  std::uint64_t rounds = 0;

  bool operator==(const PhaseSpan&) const = default;
};

struct RoundMetrics {
  std::uint64_t rounds_elapsed = 0;
  /// Indexed like the engine's agent list.
  std::vector<std::uint64_t> peak_memory_bits;
  std::vector<std::uint64_t> moves;
  /// Consecutive rounds sharing a phase label, in execution order.
  std::vector<PhaseSpan> phases;
  /// Per phase label, peak metered bits over all agents.
  std::map<std::string, std::uint64_t> peak_memory_by_phase;

  std::uint64_t rounds_in(std::string_view phase) const {
    std::uint64_t total = 0;
    for (const auto& span : phases)
      if (span.name == phase) total += span.rounds;
    return total;
  }

  bool operator==(const RoundMetrics&) const = default;
};

struct EngineOptions {
  /// When set, agents are stepped in a freshly shuffled order every round.
  std::optional<std::uint64_t> order_seed;
  /// Instrumentation: before each agent computes, every snapshot of an agent
  /// at another node is overwritten with a value-initialized one.
  bool poison_nonlocal = false;
  /// One line per moving agent per round: "round=R agent=ID port=P".
  std::ostream* trace = nullptr;
  CostModel cost;
};

/// Lockstep Communicate-Compute-Move simulator. Agent i starts on node i.
///
/// Each round every agent reads the snapshots its co-located peers published
/// at round start, updates its own store and picks a move; moves are applied
/// after all agents have computed, so the stepping order is unobservable.
template <MobileAgent A>
class Engine {
 public:
  using Snapshot = typename A::Snapshot;

  Engine(const PortGraph& graph, std::vector<A> agents, EngineOptions options = {})
      : graph_(graph), agents_(std::move(agents)), options_(options) {
    if (agents_.size() != graph_.node_count()) {
      throw SimulationFault("dispersed start needs exactly one agent per node", std::nullopt, 0);
    }
    const std::size_t n = agents_.size();
    location_.resize(n);
    std::iota(location_.begin(), location_.end(), NodeIndex{0});
    home_ = location_;
    entry_.assign(n, std::nullopt);
    metrics_.peak_memory_bits.assign(n, 0);
    metrics_.moves.assign(n, 0);
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    if (options_.order_seed) order_rng_.seed(*options_.order_seed);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (agents_[i].id() == agents_[j].id()) {
          throw SimulationFault("agent IDs must be distinct", agents_[i].id(), 0);
        }
      }
    }
  }

  void run_round() {
    const std::size_t n = agents_.size();
    const std::uint64_t round = metrics_.rounds_elapsed;
    record_phase(round);

    std::vector<Snapshot> snapshots;
    snapshots.reserve(n);
    for (const A& agent : agents_) snapshots.push_back(agent.snapshot());

    std::vector<std::vector<std::size_t>> occupants(graph_.node_count());
    for (std::size_t i = 0; i < n; ++i) occupants[location_[i]].push_back(i);

    if (options_.order_seed) seeded_shuffle(order_, order_rng_);

    std::vector<Move> moves(n);
    std::vector<const Snapshot*> peers;
    std::vector<Snapshot> poisoned;
    for (std::size_t i : order_) {
      const NodeIndex here = location_[i];
      const std::vector<Snapshot>* visible = &snapshots;
      if (options_.poison_nonlocal) {
        poisoned = snapshots;
        for (std::size_t j = 0; j < n; ++j)
          if (location_[j] != here) poisoned[j] = Snapshot{};
        visible = &poisoned;
      }
      peers.clear();
      for (std::size_t j : occupants[here])
        if (j != i) peers.push_back(&(*visible)[j]);

      LocalView<Snapshot> view{round, graph_.degree(here), entry_[i], peers};
      moves[i] = agents_[i].step(view);
      if (moves[i] && *moves[i] >= graph_.degree(here)) {
        throw SimulationFault("port " + std::to_string(*moves[i]) + " out of range (degree " +
                                  std::to_string(graph_.degree(here)) + ")",
                              agents_[i].id(), round);
      }
      const std::uint64_t bits = agents_[i].memory_bits(options_.cost);
      auto& peak = metrics_.peak_memory_bits[i];
      peak = std::max(peak, bits);
      auto& phase_peak = metrics_.peak_memory_by_phase[std::string(current_phase_)];
      phase_peak = std::max(phase_peak, bits);
    }

    for (std::size_t i = 0; i < n; ++i) {
      if (!moves[i]) {
        entry_[i].reset();
        agents_[i].on_arrival(std::nullopt);
        continue;
      }
      const PortEnd& end = graph_.follow(location_[i], *moves[i]);
      if (options_.trace) {
        *options_.trace << "round=" << round << " agent=" << agents_[i].id().value
                        << " port=" << *moves[i] << '\n';
      }
      location_[i] = end.node;
      entry_[i] = end.port;
      agents_[i].on_arrival(end.port);
      ++metrics_.moves[i];
    }
    ++metrics_.rounds_elapsed;
  }

  bool finished() const {
    return std::all_of(agents_.begin(), agents_.end(), [](const A& a) { return a.finished(); });
  }

  /// Runs until every agent reports finished; faults after `max_rounds`.
  void run(std::uint64_t max_rounds) {
    while (!finished()) {
      if (metrics_.rounds_elapsed >= max_rounds) {
        throw SimulationFault("round budget exhausted", std::nullopt, metrics_.rounds_elapsed);
      }
      run_round();
    }
  }

  const std::vector<A>& agents() const { return agents_; }
  std::vector<A>& agents() { return agents_; }
  const RoundMetrics& metrics() const { return metrics_; }
  const PortGraph& graph() const { return graph_; }

  // Simulator-side bookkeeping, never visible to agents.
  NodeIndex location(std::size_t agent) const { return location_.at(agent); }
  NodeIndex home(std::size_t agent) const { return home_.at(agent); }

 private:
  void record_phase(std::uint64_t round) {
    const std::string_view phase = agents_.empty() ? std::string_view{} : agents_[0].phase();
    for (const A& agent : agents_) {
      if (agent.phase() != phase) {
        throw SimulationFault("agents disagree on the current phase (" + std::string(phase) +
                                  " vs " + std::string(agent.phase()) + ")",
                              agent.id(), round);
      }
    }
    current_phase_ = phase;
    if (metrics_.phases.empty() || metrics_.phases.back().name != phase) {
      metrics_.phases.push_back(PhaseSpan{std::string(phase), round, 0});
    }
    ++metrics_.phases.back().rounds;
  }

  const PortGraph& graph_;
  std::vector<A> agents_;
  EngineOptions options_;
  std::vector<NodeIndex> location_;
  std::vector<NodeIndex> home_;
  std::vector<std::optional<Port>> entry_;
  std::vector<std::size_t> order_;
  Rng order_rng_;
  RoundMetrics metrics_;
  std::string current_phase_;
};

}  // namespace mobagent
