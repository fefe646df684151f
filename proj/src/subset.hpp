#pragma once

#include <bit>
#include <cstdint>

namespace flowsort {

// Criteria subsets are bitmasks: bit j set means criterion j (0-based) is in
// the set. Dense lattices index their value vector directly by the mask, so
// explicit lattices are capped at 20 criteria (2^20 doubles).
using Subset = std::uint32_t;

inline constexpr int max_lattice_criteria = 20;

// Hard cap for any subset-based representation, set by the mask width.
inline constexpr int max_subset_criteria = 32;

inline int subset_size(Subset s) noexcept { return std::popcount(s); }

inline Subset full_set(int n_criteria) noexcept {
  return n_criteria >= max_subset_criteria
             ? ~Subset{0}
             : (Subset{1} << n_criteria) - 1;
}

inline bool subset_contains(Subset s, int j) noexcept {
  return (s >> j) & 1u;
}

inline Subset singleton(int j) noexcept { return Subset{1} << j; }

inline Subset pair_set(int j, int s) noexcept {
  return singleton(j) | singleton(s);
}

}  // namespace flowsort
