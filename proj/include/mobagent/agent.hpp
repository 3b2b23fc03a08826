#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

#include "mobagent/port_graph.hpp"

namespace mobagent {

/// Distinct agent identifier in [0, n^c].
struct AgentId {
  std::uint64_t value = 0;

  auto operator<=>(const AgentId&) const = default;

  bool bit(unsigned position) const {
    return position < 64 && ((value >> position) & 1U) != 0;
  }
};

inline unsigned bit_length(std::uint64_t value) {
  return static_cast<unsigned>(std::bit_width(value));
}

/// Width of the ID field shared by all agents: bit length of the maximum ID,
/// at least 1.
inline unsigned id_bit_length(std::uint64_t max_id) {
  return std::max(1U, bit_length(max_id));
}

/// Canonical memory cost model. IDs cost L bits each, ports ceil(log2 Delta),
/// counters their bit length (at least 1), flags 1.
class CostModel {
 public:
  CostModel() = default;
  CostModel(unsigned id_bits, Port max_degree)
      : id_bits_(id_bits),
        port_bits_(max_degree <= 1 ? 0U : bit_length(max_degree - 1)) {}

  unsigned id_bits() const { return id_bits_; }
  unsigned port_bits() const { return port_bits_; }

 private:
  unsigned id_bits_ = 0;
  unsigned port_bits_ = 0;
};

/// Accumulates the metered size of an agent's store.
class MemoryMeter {
 public:
  explicit MemoryMeter(const CostModel& cost) : cost_(cost) {}

  MemoryMeter& ids(std::uint64_t count) { return add(count * cost_.id_bits()); }
  MemoryMeter& ports(std::uint64_t count) { return add(count * cost_.port_bits()); }
  MemoryMeter& counter(std::uint64_t value) { return add(std::max(1U, bit_length(value))); }
  MemoryMeter& flags(std::uint64_t count) { return add(count); }

  std::uint64_t bits() const { return bits_; }

 private:
  MemoryMeter& add(std::uint64_t bits) {
    bits_ += bits;
    return *this;
  }

  CostModel cost_;
  std::uint64_t bits_ = 0;
};

/// Everything an agent can observe during Communicate: its clock, the ports
/// at its current node, how it arrived, and the round-start snapshots of the
/// agents sharing its node.
template <class Snapshot>
struct LocalView {
  std::uint64_t round = 0;
  Port degree = 0;
  std::optional<Port> entry_port;
  std::span<const Snapshot* const> peers;
};

/// Move decision: a port to leave through, or nullopt to stay.
using Move = std::optional<Port>;

class SimulationFault : public std::runtime_error {
 public:
  SimulationFault(const std::string& what, std::optional<AgentId> agent, std::uint64_t round)
      : std::runtime_error(describe(what, agent, round)), agent_(agent), round_(round) {}

  std::optional<AgentId> agent() const { return agent_; }
  std::uint64_t round() const { return round_; }

 private:
  static std::string describe(const std::string& what, std::optional<AgentId> agent,
                              std::uint64_t round) {
    std::string out = "simulation fault at round " + std::to_string(round);
    if (agent) out += " (agent " + std::to_string(agent->value) + ")";
    return out + ": " + what;
  }

  std::optional<AgentId> agent_;
  std::uint64_t round_;
};

}  // namespace mobagent

template <>
struct std::hash<mobagent::AgentId> {
  std::size_t operator()(const mobagent::AgentId& id) const noexcept {
    return std::hash<std::uint64_t>{}(id.value);
  }
};
