#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace mobagent {

// std::mt19937_64 has a fully specified output sequence, but the standard
// distributions do not. These helpers keep seeded output identical across
// standard library implementations.
using Rng = std::mt19937_64;

inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  // Reject the tail so every residue is equally likely.
  const std::uint64_t span = Rng::max() - Rng::max() % bound;
  std::uint64_t draw = rng();
  while (draw >= span) draw = rng();
  return draw % bound;
}

inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <class T>
void seeded_shuffle(std::vector<T>& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace mobagent
