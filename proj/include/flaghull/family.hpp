#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace flaghull {

// Subset of a ground set {1..ground_size}, bit i-1 for element i.
using GroundMask = std::uint32_t;

inline constexpr int kMaxGroundSize = 31;

// Family of subsets of a small ground set. Canonical form: deduplicated, sorted by
// (cardinality, mask value), so equal families compare equal member-wise.
struct SetFamily {
  int ground_size = 0;
  std::vector<GroundMask> sets;

  static SetFamily from_sets(int ground_size, std::vector<GroundMask> sets);

  GroundMask ground_mask() const { return (ground_size == 0) ? 0u : ((1u << ground_size) - 1u); }
  bool contains(GroundMask x) const;
  bool operator==(const SetFamily& o) const {
    return ground_size == o.ground_size && sets == o.sets;
  }
};

struct AxiomWitness {
  std::string axiom;   // "A1", "A2", "A3", "A3'"
  GroundMask x = 0;
  GroundMask y = 0;
  std::string detail;
};

// One pass over every axiom; first_violation names the earliest failure in the order
// A1(empty), A1(ground), A2, A3', A3.
struct FamilyAudit {
  bool has_empty = false;
  bool has_ground = false;
  bool union_closed = false;
  bool has_full_chain = false;  // chain of member sets of every cardinality 0..n
  bool accessible = false;      // every nonempty member loses some element and stays a member
  std::optional<AxiomWitness> first_violation;

  bool antimatroid() const { return has_empty && has_ground && union_closed && accessible; }
  bool preantimatroid() const { return has_empty && has_ground && union_closed && has_full_chain; }
};

FamilyAudit audit_family(const SetFamily& fam);
bool is_antimatroid(const SetFamily& fam);
bool is_preantimatroid(const SetFamily& fam);

// Union of all maximum-length chains of fam: the largest antimatroid inside a pre-antimatroid.
// A chain from the empty set to the ground set of length n forces single-element steps, so this
// is forward-reachability from {} intersected with backward-reachability from the ground set
// over single-element augmentations. Throws NotPreAntimatroid when fam is not one, and asserts
// the result passes is_antimatroid.
SetFamily extract_antimatroid(const SetFamily& fam);

// "{1,3}" style rendering, 1-based, "{}" for the empty set.
std::string set_to_string(GroundMask x, int ground_size);

}  // namespace flaghull
