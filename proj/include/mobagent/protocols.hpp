#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mobagent/agent.hpp"
#include "mobagent/engine.hpp"
#include "mobagent/oracles.hpp"
#include "mobagent/port_graph.hpp"
#include "mobagent/schedule.hpp"

namespace mobagent {

enum class ProtocolKind { neighbors, triangles, truss, centrality, lcc };

std::string to_string(ProtocolKind kind);
/// Accepts "neighbors", "triangles", "truss", "centrality", "lcc".
ProtocolKind parse_protocol(std::string_view name);

/// What the agents are told up front.
struct ProtocolConfig {
  Port max_degree = 0;
  unsigned id_bits = 1;
  /// Flooding repetitions: the diameter, or n when the diameter is unknown.
  std::uint64_t d_param = 0;
  /// Only used for the flood-completeness flag.
  std::optional<std::uint64_t> node_count;
  LccFormula lcc = LccFormula::paper;
  /// Centrality skips the flooding phase when T(G) is known in advance.
  std::optional<std::uint64_t> known_total;

  MeetingSchedule schedule() const { return MeetingSchedule(max_degree, id_bits); }
  CostModel cost() const { return CostModel(id_bits, max_degree); }
};

enum class DiameterMode { exact, node_count };
enum class IdMode { sequential, random };

/// Sequential IDs are 1..n in node order. Random IDs are distinct and uniform
/// in [0, n^exponent].
std::vector<AgentId> assign_ids(std::size_t n, IdMode mode, std::uint64_t seed = 0,
                                unsigned exponent = 2);

ProtocolConfig make_config(const PortGraph& graph, std::span<const AgentId> ids,
                           DiameterMode mode = DiameterMode::exact);

/// Port <-> neighbor ID bijection learned during discovery.
class NeighborTable {
 public:
  /// False if the ID is already registered. Throws if the port is already
  /// taken by a different agent.
  bool insert(Port port, AgentId neighbor);

  std::size_t size() const { return by_port_.size(); }
  bool contains(AgentId id) const { return by_id_.count(id) != 0; }
  std::optional<AgentId> at_port(Port port) const;
  std::optional<Port> port_of(AgentId id) const;
  const std::map<Port, AgentId>& by_port() const { return by_port_; }
  /// Neighbor IDs in ascending order.
  std::vector<AgentId> sorted_ids() const;

  bool operator==(const NeighborTable&) const = default;

 private:
  std::map<Port, AgentId> by_port_;
  std::map<AgentId, Port> by_id_;
};

struct EdgeVars {
  /// Common-neighbor count with each neighbor.
  std::map<AgentId, std::uint64_t> edge_counts;
  std::uint64_t local_sum = 0;
  std::uint64_t node_triangles = 0;
};

struct FloodTable {
  std::map<AgentId, std::uint64_t> known;  // agent -> its local_sum
  bool complete = false;
};

/// Round-start state an agent exposes to co-located agents about where it
/// stands in the current meeting schedule.
struct Presence {
  AgentId id;
  bool in_schedule = false;
  bool active_bit = false;
  std::optional<Port> entry_port;
};

// ---------------------------------------------------------------------------
// Neighborhood protocols: discovery, local counting, flooding, centrality and
// clustering all share one agent with a configurable stage plan.

class NeighborhoodAgent {
 public:
  enum class Stage { discover, count, flood, exchange, done };

  struct Snapshot {
    Presence presence;
    std::uint64_t node_triangles = 0;
    std::shared_ptr<const std::vector<AgentId>> neighbors;
    std::shared_ptr<const std::map<AgentId, std::uint64_t>> flood;
  };

  NeighborhoodAgent(AgentId id, ProtocolKind kind, const ProtocolConfig& config);

  AgentId id() const { return id_; }
  Snapshot snapshot() const;
  Move step(const LocalView<Snapshot>& view);
  void on_arrival(std::optional<Port> entry_port) { last_entry_ = entry_port; }
  std::uint64_t memory_bits(const CostModel& cost) const;
  std::string_view phase() const;
  bool finished() const { return stage() == Stage::done; }

  Stage stage() const { return plan_index_ < plan_.size() ? plan_[plan_index_] : Stage::done; }
  const NeighborTable& table() const { return table_; }
  const EdgeVars& edge_vars() const { return vars_; }
  const FloodTable& flood() const { return flood_; }
  std::optional<std::uint64_t> total() const { return total_; }
  /// T(u) of every neighbor, learned in the exchange stage.
  const std::map<AgentId, std::uint64_t>& neighbor_triangles() const { return neighbor_t_; }
  std::optional<Rational> centrality() const { return centrality_; }
  bool centrality_defined() const { return centrality_defined_; }
  std::optional<Rational> lcc() const { return lcc_; }
  Port degree() const { return degree_; }

 private:
  void meet(const Snapshot& peer, Port local_port);
  std::uint64_t repetitions(Stage stage) const;
  void enter_stage();
  void finish_schedule();
  void complete_stage();
  void publish_flood();

  AgentId id_;
  ProtocolConfig config_;
  MeetingSchedule schedule_;
  std::vector<Stage> plan_;
  std::size_t plan_index_ = 0;
  std::uint64_t offset_ = 0;
  std::uint64_t repetition_ = 0;
  std::uint64_t clock_ = 0;
  Port degree_ = 0;
  bool degree_known_ = false;
  std::optional<Port> last_entry_;
  bool lcc_requested_ = false;
  bool counted_ = false;

  NeighborTable table_;
  std::shared_ptr<const std::vector<AgentId>> published_neighbors_;
  EdgeVars vars_;
  FloodTable flood_;
  std::shared_ptr<const std::map<AgentId, std::uint64_t>> published_flood_;
  bool flood_dirty_ = false;
  std::optional<std::uint64_t> total_;
  std::map<AgentId, std::uint64_t> neighbor_t_;
  std::optional<Rational> centrality_;
  bool centrality_defined_ = false;
  std::optional<Rational> lcc_;
};

// ---------------------------------------------------------------------------
// Truss decomposition by distributed h-index refinement.

/// Edge named by its endpoint agents, low ID first. The low endpoint owns it.
struct EdgeKey {
  AgentId low;
  AgentId high;

  EdgeKey() = default;
  EdgeKey(AgentId a, AgentId b) : low(a < b ? a : b), high(a < b ? b : a) {}

  auto operator<=>(const EdgeKey&) const = default;
};

/// Sent by an edge whose h dropped to `new_h` from `old_h`, to the owners of
/// the edges sharing a triangle with it.
struct Notification {
  EdgeKey edge;
  std::uint64_t new_h = 0;
  std::uint64_t old_h = 0;

  auto operator<=>(const Notification&) const = default;
};

struct TrussEdgeState {
  std::uint64_t support = 0;
  std::uint64_t h = 0;
  std::vector<std::uint64_t> l_set;
  std::vector<EdgeKey> n_set;
  bool scheduled = true;
};

class TrussAgent {
 public:
  enum class Stage { discover, support, rebuild, notify, terminate, done };

  struct Snapshot {
    Presence presence;
    bool all_done = false;
    std::shared_ptr<const std::vector<AgentId>> neighbors;
    std::shared_ptr<const std::map<EdgeKey, std::uint64_t>> owned_h;
    std::shared_ptr<const std::vector<Notification>> outbox;
  };

  TrussAgent(AgentId id, const ProtocolConfig& config);

  AgentId id() const { return id_; }
  Snapshot snapshot() const;
  Move step(const LocalView<Snapshot>& view);
  void on_arrival(std::optional<Port> entry_port) { last_entry_ = entry_port; }
  std::uint64_t memory_bits(const CostModel& cost) const;
  std::string_view phase() const;
  bool finished() const { return stage_ == Stage::done; }

  Stage stage() const { return stage_; }
  const NeighborTable& table() const { return table_; }
  const std::map<EdgeKey, TrussEdgeState>& owned_edges() const { return owned_; }
  /// Phase-3 iterations started so far.
  std::uint64_t iterations() const { return iterations_; }
  std::uint64_t h_updates() const { return h_updates_; }
  bool h_monotone() const { return h_monotone_; }
  bool change() const { return change_; }

 private:
  struct PendingTriangle {
    std::optional<std::uint64_t> near;  // h of (self, apex)
    std::optional<std::uint64_t> far;   // h of (other endpoint, apex)
  };

  void meet(const Snapshot& peer, Port local_port);
  void rebuild_from(const Snapshot& peer);
  void finish_schedule();
  void start_rebuild();
  void finish_rebuild();
  void finish_notify();
  void publish_h();
  void publish_outbox();

  AgentId id_;
  ProtocolConfig config_;
  MeetingSchedule schedule_;
  Stage stage_ = Stage::discover;
  std::uint64_t offset_ = 0;
  std::uint64_t repetition_ = 0;
  std::uint64_t clock_ = 0;
  Port degree_ = 0;
  bool degree_known_ = false;
  std::optional<Port> last_entry_;

  NeighborTable table_;
  std::shared_ptr<const std::vector<AgentId>> published_neighbors_;
  std::map<EdgeKey, TrussEdgeState> owned_;
  std::shared_ptr<const std::map<EdgeKey, std::uint64_t>> published_h_;
  std::map<EdgeKey, std::map<AgentId, PendingTriangle>> pending_;
  std::vector<Notification> outbox_;
  std::shared_ptr<const std::vector<Notification>> published_outbox_;
  std::set<Notification> inbox_;
  bool change_ = false;
  bool all_done_ = false;
  std::uint64_t iterations_ = 0;
  std::uint64_t h_updates_ = 0;
  bool h_monotone_ = true;
};

// ---------------------------------------------------------------------------
// Driver.

struct ProtocolResult {
  ProtocolKind kind = ProtocolKind::triangles;
  std::vector<AgentId> ids;  // agent on each node
  ProtocolConfig config;

  std::vector<NeighborTable> tables;  // by node
  /// Per-node counts, per-edge counts as held by the lower-ID endpoint, and
  /// the total as output by the first agent.
  TriangleTally tally;
  std::vector<std::uint64_t> agent_totals;
  /// Edges whose two endpoints hold different counts, plus agents whose
  /// total differs from the first agent's.
  std::uint64_t disagreements = 0;
  std::size_t flood_min_entries = 0;
  std::size_t flood_max_entries = 0;

  TrussLabeling truss;
  std::uint64_t truss_iterations = 0;
  std::uint64_t h_updates = 0;
  bool h_monotone = true;

  CentralityVector centrality;
  LccVector lcc;

  RoundMetrics metrics;
};

/// Runs a protocol from the dispersed configuration (agent `ids[v]` on node v)
/// to completion. Throws SimulationFault on protocol failure.
ProtocolResult run_protocol(const PortGraph& graph, std::span<const AgentId> ids,
                            ProtocolKind kind, const ProtocolConfig& config,
                            const EngineOptions& options = {});

/// Rounds used by the triangle protocol: (d_param + 2) schedules.
std::uint64_t triangle_round_budget(const ProtocolConfig& config);
/// Upper bound for truss: 2 schedules plus m iterations of (2 + d_param).
std::uint64_t truss_round_bound(const ProtocolConfig& config, std::uint64_t edge_count);

}  // namespace mobagent
