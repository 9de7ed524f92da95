#pragma once

#include "flaghull/family.hpp"
#include "flaghull/flags.hpp"
#include "flaghull/lattice.hpp"

namespace flaghull {

// Modular convex hull of two flags C, D of a semimodular lattice of height n.
//
// caps[i] (0-based i, level i+1) is the largest element of the join chain
// {c_j v d_i : j = 0..n} that is NOT above d_{i+1}; cap_covers[i] is the next chain element,
// which covers caps[i]. The hull is exactly the set of meets of elements {d_i} and caps taken
// along the level recursion, and membership embeds into subsets of {1..n} through cap_support.
struct HullResult {
  ElemSet members;
  std::vector<ElemId> caps;        // length n
  std::vector<ElemId> cap_covers;  // length n
  JordanHolderPermutation sigma;
};

// Smallest superset of seed closed under join and meet of modular pairs. Requires a
// semimodular lattice (throws NotSemimodular); this is the reference fixpoint the level
// recursion is checked against.
ElemSet modular_convex_closure(const Lattice& lat, const ElemSet& seed);

// caps / cap_covers for the flag pair, plus the permutation they come from.
// Checks internally that both defining expressions for cap_covers agree, that each cap is
// maximal-not-above within its join chain, and that the level-1 cap sits just below the first
// chain element above d_1.
HullResult compute_caps(const Lattice& lat, const Flag& c, const Flag& d);

// Level recursion: start from the top two elements of D and fold in one level at a time,
// meeting interval members with the level cap when the pair is modular. Returns the full hull;
// asserts equality with modular_convex_closure(C u D).
HullResult modular_convex_hull(const Lattice& lat, const Flag& c, const Flag& d);

// Levels i+1 whose cap lies above u, as a mask over {1..n}. u must be a hull member
// (throws NotInHull). Rank identity: rank(u) == n - popcount(cap_support(u)).
GroundMask cap_support(const Lattice& lat, const HullResult& hull, ElemId u);

// Complement embedding u -> {1..n} \ cap_support(u). Injective on the hull, turns joins into
// unions and order into inclusion.
GroundMask cap_cosupport(const Lattice& lat, const HullResult& hull, ElemId u);

// Image of the hull under cap_cosupport. Verifies and enforces on the way out:
// the family is a pre-antimatroid (A1, A2, chain of full length), the map is injective and an
// order isomorphism onto its image, and set size equals element rank. Any failure throws
// AxiomViolation: the construction guarantees all of it, so a throw means a bug.
SetFamily hull_as_family(const Lattice& lat, const HullResult& hull);

}  // namespace flaghull
