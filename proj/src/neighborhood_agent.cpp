#include <algorithm>

#include "mobagent/protocols.hpp"
#include "schedule_walk.hpp"

namespace mobagent {

namespace {

std::uint64_t count_common(const std::vector<AgentId>& a, const std::vector<AgentId>& b) {
  std::uint64_t common = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return common;
}

}  // namespace

NeighborhoodAgent::NeighborhoodAgent(AgentId id, ProtocolKind kind, const ProtocolConfig& config)
    : id_(id), config_(config), schedule_(config.schedule()) {
  switch (kind) {
    case ProtocolKind::neighbors:
      plan_ = {Stage::discover};
      break;
    case ProtocolKind::triangles:
      plan_ = {Stage::discover, Stage::count, Stage::flood};
      break;
    case ProtocolKind::lcc:
      plan_ = {Stage::discover, Stage::count};
      break;
    case ProtocolKind::centrality:
      plan_ = {Stage::discover, Stage::count};
      if (!config.known_total) plan_.push_back(Stage::flood);
      plan_.push_back(Stage::exchange);
      break;
    case ProtocolKind::truss:
      throw std::invalid_argument("truss runs on TrussAgent");
  }
  lcc_requested_ = kind == ProtocolKind::lcc;
  enter_stage();
}

std::string_view NeighborhoodAgent::phase() const {
  switch (stage()) {
    case Stage::discover: return "discover";
    case Stage::count: return "count";
    case Stage::flood: return "flood";
    case Stage::exchange: return "exchange";
    case Stage::done: return "done";
  }
  return "done";
}

NeighborhoodAgent::Snapshot NeighborhoodAgent::snapshot() const {
  Snapshot out;
  out.presence = presence_at(id_, schedule_, offset_, !finished(), last_entry_);
  out.node_triangles = vars_.node_triangles;
  out.neighbors = published_neighbors_;
  out.flood = published_flood_;
  return out;
}

Move NeighborhoodAgent::step(const LocalView<Snapshot>& view) {
  if (finished()) return std::nullopt;
  clock_ = view.round;
  if (!degree_known_) {
    degree_ = view.degree;
    degree_known_ = true;
  }
  const Move move = walk_schedule(schedule_, id_, degree_, offset_, view,
                                  [this](const Snapshot& peer, Port port) { meet(peer, port); });
  if (flood_dirty_) publish_flood();
  if (++offset_ == schedule_.length()) finish_schedule();
  return move;
}

void NeighborhoodAgent::meet(const Snapshot& peer, Port local_port) {
  const AgentId other = peer.presence.id;
  switch (stage()) {
    case Stage::discover:
      table_.insert(local_port, other);
      break;
    case Stage::count: {
      if (table_.at_port(local_port) != other) {
        throw SimulationFault("met agent " + std::to_string(other.value) +
                                  " who is not registered behind port " +
                                  std::to_string(local_port),
                              id_, clock_);
      }
      if (!peer.neighbors || !published_neighbors_) {
        throw SimulationFault("neighbor list missing during counting", id_, clock_);
      }
      vars_.edge_counts[other] = count_common(*published_neighbors_, *peer.neighbors);
      break;
    }
    case Stage::flood:
      if (!peer.flood) throw SimulationFault("flood table missing", id_, clock_);
      for (const auto& [agent, sum] : *peer.flood) {
        if (flood_.known.emplace(agent, sum).second) flood_dirty_ = true;
      }
      break;
    case Stage::exchange:
      neighbor_t_[other] = peer.node_triangles;
      break;
    case Stage::done:
      break;
  }
}

std::uint64_t NeighborhoodAgent::repetitions(Stage stage) const {
  return stage == Stage::flood ? config_.d_param : 1;
}

void NeighborhoodAgent::enter_stage() {
  while (stage() != Stage::done) {
    offset_ = 0;
    repetition_ = 0;
    if (stage() == Stage::flood) {
      flood_.known.emplace(id_, vars_.local_sum);
      publish_flood();
    }
    if (schedule_.length() > 0 && repetitions(stage()) > 0) return;
    complete_stage();
    ++plan_index_;
  }
}

void NeighborhoodAgent::finish_schedule() {
  offset_ = 0;
  if (++repetition_ < repetitions(stage())) return;
  complete_stage();
  ++plan_index_;
  enter_stage();
}

void NeighborhoodAgent::complete_stage() {
  switch (stage()) {
    case Stage::discover:
      published_neighbors_ = std::make_shared<const std::vector<AgentId>>(table_.sorted_ids());
      break;
    case Stage::count: {
      vars_.local_sum = 0;
      for (const auto& [other, common] : vars_.edge_counts) vars_.local_sum += common;
      if (vars_.local_sum % 2 != 0) {
        throw SimulationFault("odd local_sum " + std::to_string(vars_.local_sum), id_, clock_);
      }
      vars_.node_triangles = vars_.local_sum / 2;
      counted_ = true;
      if (lcc_requested_) lcc_ = lcc_value(vars_.node_triangles, degree_, config_.lcc);
      break;
    }
    case Stage::flood: {
      std::uint64_t sum = 0;
      for (const auto& [agent, value] : flood_.known) sum += value;
      if (sum % 6 != 0) {
        throw SimulationFault("flooded local sums add to " + std::to_string(sum) +
                                  ", not a multiple of 6",
                              id_, clock_);
      }
      flood_.complete = !config_.node_count || flood_.known.size() == *config_.node_count;
      total_ = sum / 6;
      break;
    }
    case Stage::exchange: {
      if (!total_) total_ = config_.known_total;
      const std::uint64_t total = total_.value_or(0);
      std::int64_t closed = static_cast<std::int64_t>(vars_.node_triangles);
      std::int64_t all_neighbors = 0;
      std::int64_t triangle_neighbors = 0;
      for (const auto& [other, t] : neighbor_t_) {
        all_neighbors += static_cast<std::int64_t>(t);
        const auto shared = vars_.edge_counts.find(other);
        if (shared != vars_.edge_counts.end() && shared->second > 0) {
          triangle_neighbors += static_cast<std::int64_t>(t);
        }
      }
      closed += triangle_neighbors;
      const std::int64_t outside = all_neighbors - triangle_neighbors;
      centrality_defined_ = total > 0;
      centrality_ = centrality_defined_
                        ? (Rational(closed, 3) + outside) / static_cast<std::int64_t>(total)
                        : Rational(0);
      break;
    }
    case Stage::done:
      break;
  }
}

void NeighborhoodAgent::publish_flood() {
  published_flood_ = std::make_shared<const std::map<AgentId, std::uint64_t>>(flood_.known);
  flood_dirty_ = false;
}

std::uint64_t NeighborhoodAgent::memory_bits(const CostModel& cost) const {
  MemoryMeter meter(cost);
  meter.ids(1);
  meter.counter(offset_).counter(plan_index_).counter(repetition_);
  if (last_entry_) meter.ports(1);
  meter.ids(table_.size()).ports(table_.size());
  // edge counts are kept per port, aligned with the table
  for (const auto& [other, common] : vars_.edge_counts) meter.counter(common);
  if (counted_) meter.counter(vars_.local_sum).counter(vars_.node_triangles);
  meter.ids(flood_.known.size());
  for (const auto& [agent, sum] : flood_.known) meter.counter(sum);
  if (total_) meter.counter(*total_);
  for (const auto& [other, t] : neighbor_t_) meter.counter(t);
  if (centrality_) {
    meter.counter(static_cast<std::uint64_t>(centrality_->numerator()));
    meter.counter(static_cast<std::uint64_t>(centrality_->denominator()));
  }
  if (lcc_) {
    meter.counter(static_cast<std::uint64_t>(lcc_->numerator()));
    meter.counter(static_cast<std::uint64_t>(lcc_->denominator()));
  }
  return meter.bits();
}

}  // namespace mobagent
