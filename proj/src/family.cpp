#include "flaghull/family.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

#include "flaghull/errors.hpp"

namespace flaghull {

SetFamily SetFamily::from_sets(int ground_size, std::vector<GroundMask> sets) {
  if (ground_size < 0 || ground_size > kMaxGroundSize) {
    fail(Errc::OutOfBounds, "ground size " + std::to_string(ground_size) + " not in 0..31");
  }
  SetFamily fam;
  fam.ground_size = ground_size;
  const GroundMask gm = fam.ground_mask();
  for (GroundMask s : sets) {
    if ((s & ~gm) != 0) {
      fail(Errc::OutOfBounds,
           "set " + set_to_string(s, kMaxGroundSize) + " leaves the ground set");
    }
  }
  std::sort(sets.begin(), sets.end(), [](GroundMask a, GroundMask b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  fam.sets = std::move(sets);
  return fam;
}

bool SetFamily::contains(GroundMask x) const {
  // sets are sorted by (popcount, value); binary search within the popcount band.
  auto cmp = [](GroundMask a, GroundMask b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  };
  return std::binary_search(sets.begin(), sets.end(), x, cmp);
}

FamilyAudit audit_family(const SetFamily& fam) {
  FamilyAudit audit;
  const GroundMask gm = fam.ground_mask();
  const int n = fam.ground_size;
  std::unordered_set<GroundMask> members(fam.sets.begin(), fam.sets.end());

  audit.has_empty = members.count(0) > 0;
  audit.has_ground = members.count(gm) > 0;

  audit.union_closed = true;
  AxiomWitness union_w;
  for (std::size_t i = 0; i < fam.sets.size() && audit.union_closed; ++i) {
    for (std::size_t j = i + 1; j < fam.sets.size(); ++j) {
      GroundMask u = fam.sets[i] | fam.sets[j];
      if (!members.count(u)) {
        audit.union_closed = false;
        union_w = {"A2", fam.sets[i], fam.sets[j],
                   "union " + set_to_string(u, n) + " is missing"};
        break;
      }
    }
  }

  // Full chain: reachability from {} by single-element augmentations must hit the ground set.
  {
    std::unordered_set<GroundMask> reach;
    if (members.count(0)) {
      std::vector<GroundMask> work{0};
      reach.insert(0);
      while (!work.empty()) {
        GroundMask x = work.back();
        work.pop_back();
        for (int e = 0; e < n; ++e) {
          GroundMask y = x | (GroundMask{1} << e);
          if (y == x || !members.count(y) || reach.count(y)) continue;
          reach.insert(y);
          work.push_back(y);
        }
      }
    }
    audit.has_full_chain = reach.count(gm) > 0;
  }

  audit.accessible = true;
  AxiomWitness access_w;
  for (GroundMask x : fam.sets) {
    if (x == 0) continue;
    bool ok = false;
    for (GroundMask rest = x; rest != 0; rest &= rest - 1) {
      GroundMask bit = rest & (~rest + 1);
      if (members.count(x & ~bit)) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      audit.accessible = false;
      access_w = {"A3", x, 0,
                  "no single-element deletion of " + set_to_string(x, n) + " stays a member"};
      break;
    }
  }

  if (!audit.has_empty) {
    audit.first_violation = {"A1", 0, 0, "empty set missing"};
  } else if (!audit.has_ground) {
    audit.first_violation = {"A1", gm, 0, "ground set missing"};
  } else if (!audit.union_closed) {
    audit.first_violation = union_w;
  } else if (!audit.has_full_chain) {
    audit.first_violation = {"A3'", 0, 0,
                             "no chain of member sets of every cardinality 0.." +
                                 std::to_string(n)};
  } else if (!audit.accessible) {
    audit.first_violation = access_w;
  }
  return audit;
}

bool is_antimatroid(const SetFamily& fam) { return audit_family(fam).antimatroid(); }

bool is_preantimatroid(const SetFamily& fam) { return audit_family(fam).preantimatroid(); }

SetFamily extract_antimatroid(const SetFamily& fam) {
  FamilyAudit audit = audit_family(fam);
  if (!audit.preantimatroid()) {
    std::string why = audit.first_violation ? audit.first_violation->detail : "unknown";
    fail(Errc::NotPreAntimatroid, "input family is not a pre-antimatroid: " + why);
  }
  const int n = fam.ground_size;
  const GroundMask gm = fam.ground_mask();
  std::unordered_set<GroundMask> members(fam.sets.begin(), fam.sets.end());

  auto reach = [&](bool upward) {
    std::unordered_set<GroundMask> seen;
    std::vector<GroundMask> work;
    GroundMask start = upward ? 0 : gm;
    seen.insert(start);
    work.push_back(start);
    while (!work.empty()) {
      GroundMask x = work.back();
      work.pop_back();
      for (int e = 0; e < n; ++e) {
        GroundMask bit = GroundMask{1} << e;
        GroundMask y = upward ? (x | bit) : (x & ~bit);
        if (y == x || !members.count(y) || seen.count(y)) continue;
        seen.insert(y);
        work.push_back(y);
      }
    }
    return seen;
  };

  std::unordered_set<GroundMask> up = reach(true), down = reach(false);
  std::vector<GroundMask> kept;
  for (GroundMask x : fam.sets) {
    if (up.count(x) && down.count(x)) kept.push_back(x);
  }
  SetFamily out = SetFamily::from_sets(n, std::move(kept));
  FamilyAudit check = audit_family(out);
  if (!check.antimatroid()) {
    std::string why = check.first_violation ? check.first_violation->detail : "unknown";
    fail(Errc::AxiomViolation, "extracted family is not an antimatroid (" + why +
                                   "); this indicates a bug, the construction guarantees it");
  }
  return out;
}

std::string set_to_string(GroundMask x, int ground_size) {
  std::string out = "{";
  bool first = true;
  for (int e = 0; e < ground_size; ++e) {
    if (x & (GroundMask{1} << e)) {
      if (!first) out += ",";
      out += std::to_string(e + 1);
      first = false;
    }
  }
  out += "}";
  return out;
}

}  // namespace flaghull
