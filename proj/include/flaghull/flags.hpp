#pragma once

#include <cstdint>
#include <vector>

#include "flaghull/lattice.hpp"

namespace flaghull {

inline constexpr std::size_t kDefaultFlagBudget = 1'000'000;

// Maximal chain from bottom to top, listed bottom first. Always produced through make_flag or
// enumerate_flags, so consecutive entries are covers.
struct Flag {
  std::vector<ElemId> elems;

  bool operator==(const Flag& o) const { return elems == o.elems; }
  bool operator<(const Flag& o) const { return elems < o.elems; }
};

// Validates that elems is bottom, a chain of covers, then top. Throws NotAFlag naming the first
// offending consecutive pair.
Flag make_flag(const Lattice& lat, std::vector<ElemId> elems);

// All flags in lexicographic order of their element sequences. Throws FlagBudgetExceeded once
// more than budget flags exist. Works on any valid lattice; chains of unequal length appear
// when the input is not graded.
std::vector<Flag> enumerate_flags(const Lattice& lat, std::size_t budget = kDefaultFlagBudget);

// Number of maximal chains, saturating at the uint64 maximum.
std::uint64_t count_flags(const Lattice& lat);

// Near-uniform sample of want distinct flags (weighted descent over path counts). Used by the
// verification harness when enumeration would blow the budget.
std::vector<Flag> sample_flags(const Lattice& lat, std::size_t want, std::uint64_t seed);

// Flags are adjacent when they differ in exactly one element.
bool flags_adjacent(const Flag& f, const Flag& g);

// All flags reachable from f by exchanging one interior element.
std::vector<Flag> flag_neighbors(const Lattice& lat, const Flag& f);

struct Gallery {
  std::vector<Flag> flags;  // consecutive entries adjacent
};

bool is_gallery(const Lattice& lat, const Gallery& g);

// perm[i] is the 0-based position j such that d_{i+1} lies below d_i v c_{j+1} and below no
// earlier join of that chain. Reports print it 1-based.
struct JordanHolderPermutation {
  std::vector<int> perm;
  long long inversions = 0;
};

// Throws NotAFlag when the flags have mismatched lengths and NotABijection when the computed
// word is not a permutation (possible only on non-semimodular input or under a bug).
JordanHolderPermutation jordan_holder(const Lattice& lat, const Flag& c, const Flag& d);

// Shortest-gallery length, computed as the inversion number of jordan_holder(lat, c, d).
// Valid on semimodular lattices; gallery_distance_bfs is the independent oracle.
long long flag_distance(const Lattice& lat, const Flag& c, const Flag& d);

// Breadth-first search over the flag exchange graph; budget caps the number of distinct flags
// visited. Throws NoGallery when d is unreachable, FlagBudgetExceeded past the cap.
long long gallery_distance_bfs(const Lattice& lat, const Flag& c, const Flag& d,
                               std::size_t budget = kDefaultFlagBudget);

struct ShortestGalleryFlags {
  long long distance = 0;
  std::vector<Flag> flags;  // every flag on at least one shortest gallery, sorted
};

ShortestGalleryFlags shortest_gallery_flags(const Lattice& lat, const Flag& c, const Flag& d,
                                            std::size_t budget = kDefaultFlagBudget);

// One concrete shortest gallery from c to d, deterministic (smallest neighbor first).
Gallery shortest_gallery_witness(const Lattice& lat, const Flag& c, const Flag& d,
                                 std::size_t budget = kDefaultFlagBudget);

}  // namespace flaghull
