#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "flaghull/family.hpp"
#include "flaghull/lattice.hpp"

namespace flaghull {

// Subsets of {1..n} ordered by inclusion; ids sorted by (cardinality, mask value). 1 <= n <= 6.
Lattice gen_boolean(int n);

// Partitions of {1..n} ordered by refinement (finer below coarser); ids sorted by
// (rank, block structure). 2 <= n <= 6.
Lattice gen_partition(int n);

// Subspaces of the d-dimensional vector space over GF(2), ordered by containment; ids sorted
// by (dimension, vector-set mask). 1 <= d <= 4.
Lattice gen_binary_subspace(int d);

// Chain 0 < 1 < ... < length.
Lattice gen_chain(int length);

// Direct product of two chains of the given length: a (length+1) x (length+1) grid.
Lattice gen_grid(int length);

enum class AntimatroidKind {
  PosetShelling,   // remove minimal elements only; feasible sets are the order ideals
  DoubleShelling,  // remove minimal or maximal elements of what remains
};

// Feasible sets of the shelling process over an explicit strict partial order, given as
// (smaller, larger) pairs over 0..ground-1 (transitively closed internally).
SetFamily shelling_family(AntimatroidKind kind, int ground,
                          const std::vector<std::pair<int, int>>& relations);

// Same, over a seeded random poset: each pair i < j is related with probability 1/2 using the
// project-wide linear congruential generator, then closed transitively.
SetFamily antimatroid_feasible_sets(AntimatroidKind kind, int ground, std::uint64_t seed);

// Lattice of an arbitrary union-closed family containing {} and the ground set, ordered by
// inclusion. Covers are derived by transitive reduction, so no gradedness is assumed.
Lattice lattice_from_family(const SetFamily& fam);

// Feasible-set lattice of a seeded antimatroid; asserts the family passes the antimatroid
// axioms and the lattice is semimodular. ground <= 7.
Lattice gen_antimatroid_lattice(AntimatroidKind kind, int ground, std::uint64_t seed);

// Reads a lattice interchange file (see io.hpp for the format).
Lattice load_lattice(const std::string& path);

struct GeneratorSpec {
  enum class Family {
    Boolean,
    Partition,
    BinarySubspace,
    AntimatroidPoset,
    AntimatroidShelling,
    Chain,
    Product,
    FromFile,
  };
  Family family = Family::Boolean;
  int parameter = 0;
  std::uint64_t seed = 0;
  std::string path;  // FromFile only

  std::string id() const;  // canonical "family:param[:seed]" or the file path
};

// Parses "boolean:3", "partition:4", "subspace:3", "antimatroid-poset:5:7",
// "antimatroid-shelling:6:2", "chain:4", "product:3". Throws ParseError on anything else.
GeneratorSpec parse_generator_spec(const std::string& text);

// Builds the lattice a spec describes. Same spec, same bytes in, same lattice out.
Lattice realize(const GeneratorSpec& spec);

// The standard verification corpus: booleans n=1..4, partitions n=2..4, subspaces d=1..3 and
// ten seeded antimatroid lattices (kinds alternating, grounds cycling 4,5,6, seeds 1..10).
std::vector<GeneratorSpec> default_corpus();

}  // namespace flaghull
