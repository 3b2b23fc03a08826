#include <algorithm>

#include "mobagent/protocols.hpp"
#include "schedule_walk.hpp"

namespace mobagent {

TrussAgent::TrussAgent(AgentId id, const ProtocolConfig& config)
    : id_(id), config_(config), schedule_(config.schedule()) {
  // Without ports there is nothing to decompose.
  if (schedule_.length() == 0) stage_ = Stage::done;
}

std::string_view TrussAgent::phase() const {
  switch (stage_) {
    case Stage::discover: return "discover";
    case Stage::support: return "support";
    case Stage::rebuild: return "rebuild";
    case Stage::notify: return "notify";
    case Stage::terminate: return "terminate";
    case Stage::done: return "done";
  }
  return "done";
}

TrussAgent::Snapshot TrussAgent::snapshot() const {
  Snapshot out;
  out.presence = presence_at(id_, schedule_, offset_, !finished(), last_entry_);
  out.all_done = all_done_;
  out.neighbors = published_neighbors_;
  out.owned_h = published_h_;
  out.outbox = published_outbox_;
  return out;
}

Move TrussAgent::step(const LocalView<Snapshot>& view) {
  if (finished()) return std::nullopt;
  clock_ = view.round;
  if (!degree_known_) {
    degree_ = view.degree;
    degree_known_ = true;
  }
  const Move move = walk_schedule(schedule_, id_, degree_, offset_, view,
                                  [this](const Snapshot& peer, Port port) { meet(peer, port); });
  if (++offset_ == schedule_.length()) {
    offset_ = 0;
    finish_schedule();
  }
  return move;
}

void TrussAgent::meet(const Snapshot& peer, Port local_port) {
  const AgentId other = peer.presence.id;
  switch (stage_) {
    case Stage::discover:
      table_.insert(local_port, other);
      break;
    case Stage::support: {
      if (other < id_) break;  // the other endpoint owns this edge
      if (!peer.neighbors) throw SimulationFault("neighbor list missing", id_, clock_);
      const auto& mine = *published_neighbors_;
      std::vector<AgentId> common;
      std::set_intersection(mine.begin(), mine.end(), peer.neighbors->begin(),
                            peer.neighbors->end(), std::back_inserter(common));
      owned_.at(EdgeKey(id_, other)).support = common.size();
      break;
    }
    case Stage::rebuild:
      rebuild_from(peer);
      break;
    case Stage::notify:
      if (!peer.outbox) break;
      for (const Notification& note : *peer.outbox) {
        if (note.edge.low == id_) inbox_.insert(note);
      }
      break;
    case Stage::terminate:
      all_done_ = all_done_ && peer.all_done;
      break;
    case Stage::done:
      break;
  }
}

// Collects h(e') and h(e'') for every triangle on each scheduled owned edge
// e = (self, j). Each of those edges is owned by self, j or the apex, and
// all three meet self during one schedule.
void TrussAgent::rebuild_from(const Snapshot& peer) {
  if (!peer.neighbors || !peer.owned_h) {
    throw SimulationFault("peer published no edge state", id_, clock_);
  }
  const AgentId x = peer.presence.id;
  const auto& their_neighbors = *peer.neighbors;
  const auto& their_h = *peer.owned_h;
  auto lookup = [&](const EdgeKey& key) {
    const auto it = their_h.find(key);
    if (it == their_h.end()) {
      throw SimulationFault("agent " + std::to_string(x.value) + " does not hold edge " +
                                std::to_string(key.low.value) + "-" +
                                std::to_string(key.high.value),
                            id_, clock_);
    }
    return it->second;
  };
  auto own_h = [&](AgentId apex) -> std::optional<std::uint64_t> {
    if (apex < id_) return std::nullopt;
    return owned_.at(EdgeKey(id_, apex)).h;
  };

  for (auto& [edge, triangles] : pending_) {
    const AgentId j = edge.high;
    if (x == j) {
      std::vector<AgentId> apexes;
      std::set_intersection(published_neighbors_->begin(), published_neighbors_->end(),
                            their_neighbors.begin(), their_neighbors.end(),
                            std::back_inserter(apexes));
      for (AgentId apex : apexes) {
        PendingTriangle& t = triangles[apex];
        if (auto h = own_h(apex)) t.near = h;
        if (j < apex) t.far = lookup(EdgeKey(j, apex));
      }
    } else if (std::binary_search(their_neighbors.begin(), their_neighbors.end(), j)) {
      PendingTriangle& t = triangles[x];
      if (auto h = own_h(x)) {
        t.near = h;
      } else {
        t.near = lookup(EdgeKey(x, id_));
      }
      if (x < j) t.far = lookup(EdgeKey(x, j));
    }
  }
}

void TrussAgent::finish_schedule() {
  switch (stage_) {
    case Stage::discover:
      published_neighbors_ = std::make_shared<const std::vector<AgentId>>(table_.sorted_ids());
      for (AgentId other : *published_neighbors_) {
        if (id_ < other) owned_.emplace(EdgeKey(id_, other), TrussEdgeState{});
      }
      stage_ = Stage::support;
      break;
    case Stage::support:
      for (auto& [edge, state] : owned_) {
        state.h = state.support;
        state.scheduled = true;
      }
      publish_h();
      start_rebuild();
      break;
    case Stage::rebuild:
      finish_rebuild();
      stage_ = Stage::notify;
      break;
    case Stage::notify:
      finish_notify();
      stage_ = Stage::terminate;
      repetition_ = 0;
      if (config_.d_param == 0) finish_schedule();
      break;
    case Stage::terminate:
      if (config_.d_param > 0 && ++repetition_ < config_.d_param) break;
      if (all_done_) {
        stage_ = Stage::done;
      } else {
        start_rebuild();
      }
      break;
    case Stage::done:
      break;
  }
}

void TrussAgent::start_rebuild() {
  stage_ = Stage::rebuild;
  ++iterations_;
  pending_.clear();
  for (const auto& [edge, state] : owned_) {
    if (state.scheduled) pending_[edge];
  }
}

void TrussAgent::finish_rebuild() {
  for (auto& [edge, triangles] : pending_) {
    TrussEdgeState& state = owned_.at(edge);
    state.l_set.clear();
    state.n_set.clear();
    for (const auto& [apex, t] : triangles) {
      if (!t.near || !t.far) {
        throw SimulationFault("triangle on edge " + std::to_string(edge.low.value) + "-" +
                                  std::to_string(edge.high.value) + " with apex " +
                                  std::to_string(apex.value) + " is missing an h value",
                              id_, clock_);
      }
      state.l_set.push_back(std::min(*t.near, *t.far));
      state.n_set.emplace_back(id_, apex);
      state.n_set.emplace_back(edge.high, apex);
    }
    const std::uint64_t updated = h_index(state.l_set);
    if (updated < state.h) {
      for (const EdgeKey& neighbor : state.n_set) {
        outbox_.push_back(Notification{neighbor, updated, state.h});
      }
      state.h = updated;
      ++h_updates_;
    } else {
      state.scheduled = false;
    }
    if (state.h > state.support) h_monotone_ = false;
  }
  pending_.clear();
  publish_h();
  publish_outbox();
}

void TrussAgent::finish_notify() {
  auto apply = [&](const Notification& note) {
    if (note.edge.low != id_) return;
    const auto it = owned_.find(note.edge);
    if (it == owned_.end()) {
      throw SimulationFault("notified about unknown edge", id_, clock_);
    }
    TrussEdgeState& state = it->second;
    if (note.new_h < state.h && state.h <= note.old_h) state.scheduled = true;
  };
  for (const Notification& note : outbox_) apply(note);
  for (const Notification& note : inbox_) apply(note);
  inbox_.clear();
  outbox_.clear();
  publish_outbox();
  change_ = std::none_of(owned_.begin(), owned_.end(),
                         [](const auto& entry) { return entry.second.scheduled; });
  all_done_ = change_;
}

void TrussAgent::publish_h() {
  auto values = std::make_shared<std::map<EdgeKey, std::uint64_t>>();
  for (const auto& [edge, state] : owned_) values->emplace(edge, state.h);
  published_h_ = std::move(values);
}

void TrussAgent::publish_outbox() {
  published_outbox_ = std::make_shared<const std::vector<Notification>>(outbox_);
}

std::uint64_t TrussAgent::memory_bits(const CostModel& cost) const {
  MemoryMeter meter(cost);
  meter.ids(1);
  meter.counter(offset_).counter(static_cast<std::uint64_t>(stage_)).counter(repetition_);
  meter.counter(iterations_);
  if (last_entry_) meter.ports(1);
  meter.ids(table_.size()).ports(table_.size());
  for (const auto& [edge, state] : owned_) {
    meter.counter(state.support).counter(state.h).flags(1);
    for (std::uint64_t value : state.l_set) meter.counter(value);
    meter.ids(2 * state.n_set.size());
  }
  for (const auto& [edge, triangles] : pending_) {
    meter.ids(triangles.size());
    for (const auto& [apex, t] : triangles) {
      if (t.near) meter.counter(*t.near);
      if (t.far) meter.counter(*t.far);
    }
  }
  for (const Notification& note : outbox_) meter.ids(2).counter(note.new_h).counter(note.old_h);
  for (const Notification& note : inbox_) meter.ids(2).counter(note.new_h).counter(note.old_h);
  meter.flags(2);  // change, all_done
  return meter.bits();
}

}  // namespace mobagent
