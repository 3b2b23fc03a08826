#pragma once

#include <cstdint>
#include <optional>

#include "mobagent/agent.hpp"

namespace mobagent {

/// The bit-scheduled neighbor visiting pattern every protocol phase reuses.
///
/// One window of 2*Delta rounds per ID bit, rightmost bit first. In the window
/// for bit b an agent whose bit b is 0 stays home. An agent whose bit b is 1
/// leaves through port p at window offset 2p, spends offset 2p+1 at the
/// neighbor and walks back through its entry port, then idles once all of its
/// ports are done. Any two adjacent agents differ in some bit, so each pair
/// meets at least once per schedule.
class MeetingSchedule {
 public:
  MeetingSchedule() = default;
  MeetingSchedule(Port max_degree, unsigned id_bits)
      : window_(2 * static_cast<std::uint64_t>(max_degree)), id_bits_(id_bits) {}

  std::uint64_t length() const { return window_ * id_bits_; }
  std::uint64_t window() const { return window_; }
  unsigned id_bits() const { return id_bits_; }

  unsigned bit_at(std::uint64_t offset) const {
    return static_cast<unsigned>(offset / window_);
  }

  enum class Action {
    stay_home,     // bit 0: wait for visitors
    leave,         // bit 1, even offset: walk out through `port`
    visit,         // bit 1, odd offset: at the neighbor behind `port`, then walk back
    idle,          // bit 1, ports exhausted
  };

  struct Slot {
    Action action = Action::stay_home;
    bool active_bit = false;
    Port port = 0;
  };

  /// What an agent with `id` and home degree `degree` does at `offset`.
  Slot slot(AgentId id, Port degree, std::uint64_t offset) const {
    const unsigned bit = bit_at(offset);
    const std::uint64_t within = offset % window_;
    Slot out;
    out.active_bit = id.bit(bit);
    if (!out.active_bit) return out;
    out.port = static_cast<Port>(within / 2);
    if (out.port >= degree) {
      out.action = Action::idle;
    } else {
      out.action = within % 2 == 0 ? Action::leave : Action::visit;
    }
    return out;
  }

 private:
  std::uint64_t window_ = 0;
  unsigned id_bits_ = 0;
};

}  // namespace mobagent
