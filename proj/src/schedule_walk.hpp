#pragma once

#include "mobagent/protocols.hpp"

namespace mobagent {

inline Presence presence_at(AgentId id, const MeetingSchedule& schedule, std::uint64_t offset,
                            bool active, std::optional<Port> last_entry) {
  Presence out;
  out.id = id;
  out.entry_port = last_entry;
  if (active && schedule.length() > 0) {
    out.in_schedule = true;
    out.active_bit = id.bit(schedule.bit_at(offset));
  }
  return out;
}

/// One round of the meeting schedule. Calls `meet(peer, port)` for every
/// valid meeting, where `port` is the local port that leads to the peer's
/// home, and returns the move for this round.
///
/// A bit-0 agent at home meets every bit-1 visitor; a bit-1 visitor meets the
/// bit-0 agent it finds. Two bit-1 agents ignore each other.
template <class Snapshot, class MeetFn>
Move walk_schedule(const MeetingSchedule& schedule, AgentId id, Port degree,
                   std::uint64_t offset, const LocalView<Snapshot>& view, MeetFn&& meet) {
  const auto slot = schedule.slot(id, degree, offset);
  switch (slot.action) {
    case MeetingSchedule::Action::stay_home:
      for (const Snapshot* peer : view.peers) {
        const Presence& p = peer->presence;
        if (!p.in_schedule || !p.active_bit) continue;
        if (!p.entry_port) {
          throw SimulationFault("visitor " + std::to_string(p.id.value) + " has no entry port",
                                id, view.round);
        }
        meet(*peer, *p.entry_port);
      }
      return std::nullopt;
    case MeetingSchedule::Action::leave:
      return slot.port;
    case MeetingSchedule::Action::visit: {
      std::size_t hosts = 0;
      for (const Snapshot* peer : view.peers) {
        const Presence& p = peer->presence;
        if (!p.in_schedule || p.active_bit) continue;
        ++hosts;
        meet(*peer, slot.port);
      }
      if (hosts > 1) throw SimulationFault("more than one resident agent at a node", id, view.round);
      if (!view.entry_port) throw SimulationFault("visitor lost its way back", id, view.round);
      return *view.entry_port;
    }
    case MeetingSchedule::Action::idle:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace mobagent
