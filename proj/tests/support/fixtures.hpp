#pragma once

#include <cstdint>
#include <vector>

#include "girthforge/family.hpp"
#include "girthforge/rng.hpp"

namespace fixtures {

using namespace girthforge;

// Same recipe as `girthforge gen gd --parts ...`.
inline GdGraph gd(const std::vector<std::size_t>& parts, std::uint64_t seed = 1) {
  auto g = build_cycle(parts[0]);
  for (std::size_t k = 1; k < parts.size(); ++k) {
    std::vector<GdGraph> copies(parts[k], g);
    g = extend_family(copies, RandomFactors{Rng::derive(seed, k)});
  }
  return g;
}

// Heawood graph as a π-graph on n = 7.
inline std::vector<std::uint32_t> heawood_pi() { return {3, 4, 5, 6, 0, 1, 2}; }

}  // namespace fixtures
