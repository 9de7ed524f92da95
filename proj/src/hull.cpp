#include "flaghull/hull.hpp"

#include <cassert>
#include <string>

namespace flaghull {
namespace {

void require_semimodular(const Lattice& lat) {
  if (!is_semimodular(lat)) {
    fail(Errc::NotSemimodular, "hull operations are defined on semimodular lattices only");
  }
}

// Rank-equality modular test, valid because callers guarantee semimodularity. The definitional
// check rides along as an assertion so miscalibration cannot pass silently in checked builds.
bool modular_pair_fast(const Lattice& lat, ElemId p, ElemId q) {
  bool by_rank = is_modular_pair_by_rank(lat, p, q);
  assert(by_rank == is_modular_pair(lat, p, q));
  return by_rank;
}

}  // namespace

ElemSet modular_convex_closure(const Lattice& lat, const ElemSet& seed) {
  require_semimodular(lat);
  ElemSet members = seed;
  std::vector<ElemId> work;
  for_each_in(members, [&](ElemId v) { work.push_back(v); });
  auto add = [&](ElemId v) {
    if (!members.test(v)) {
      members.set(v);
      work.push_back(v);
    }
  };
  while (!work.empty()) {
    ElemId x = work.back();
    work.pop_back();
    std::vector<ElemId> snapshot;
    for_each_in(members, [&](ElemId y) { snapshot.push_back(y); });
    for (ElemId y : snapshot) {
      if (!modular_pair_fast(lat, x, y)) continue;
      add(lat.join(x, y));
      add(lat.meet(x, y));
    }
  }
  return members;
}

HullResult compute_caps(const Lattice& lat, const Flag& c, const Flag& d) {
  require_semimodular(lat);
  make_flag(lat, c.elems);
  make_flag(lat, d.elems);
  HullResult res;
  res.sigma = jordan_holder(lat, c, d);
  const int n = static_cast<int>(c.elems.size()) - 1;
  res.caps.resize(n);
  res.cap_covers.resize(n);
  for (int i = 0; i < n; ++i) {
    const int s = res.sigma.perm[i];  // 0-based: chain position s+1 is first above d_{i+1}
    res.caps[i] = lat.join(c.elems[s], d.elems[i]);
    res.cap_covers[i] = lat.join(c.elems[s + 1], d.elems[i + 1]);
    // Both expressions for the upper chain element must coincide: joining with d_{i+1} adds
    // nothing once the chain element is above it.
    assert(res.cap_covers[i] == lat.join(c.elems[s + 1], d.elems[i]));
    assert(lat.covers(res.caps[i], res.cap_covers[i]));
    // caps[i] is the last chain element not above d_{i+1}: the defining minimality of sigma.
    assert(!lat.leq(d.elems[i + 1], res.caps[i]));
    assert(lat.leq(d.elems[i + 1], res.cap_covers[i]));
  }
  if (n > 0) {
    // Level 1 ties the permutation to the largest index k with c_k not above d_1; the two
    // descriptions must agree rather than be assumed to.
    const int s0 = res.sigma.perm[0];
    assert(res.caps[0] == c.elems[s0]);
    assert(!lat.leq(d.elems[1], c.elems[s0]));
    assert(lat.leq(d.elems[1], c.elems[s0 + 1]));
  }
  return res;
}

HullResult modular_convex_hull(const Lattice& lat, const Flag& c, const Flag& d) {
  HullResult res = compute_caps(lat, c, d);
  const int n = static_cast<int>(c.elems.size()) - 1;
  ElemSet members = lat.empty_set();
  if (n == 0) {
    members.set(lat.bottom());
  } else {
    // Seed with the top edge of D, then fold levels n-1 .. 1 (1-based) downward.
    members.set(d.elems[n - 1]);
    members.set(d.elems[n]);
    for (int li = n - 2; li >= 0; --li) {
      const ElemId cap = res.caps[li];
      const ElemId cap_cover = res.cap_covers[li];
      const ElemId d_lo = d.elems[li + 1];
      std::vector<ElemId> snapshot;
      for_each_in(members, [&](ElemId q) {
        if (lat.leq(d_lo, q) && lat.leq(q, cap_cover)) snapshot.push_back(q);
      });
      for (ElemId q : snapshot) {
        if (modular_pair_fast(lat, q, cap)) members.set(lat.meet(q, cap));
      }
    }
  }
  res.members = std::move(members);

#ifndef NDEBUG
  // Checked builds re-derive the hull through the generic fixpoint; a mismatch is a bug and
  // must be loud. The verification harness performs the same comparison unconditionally and
  // records counterexamples instead of throwing.
  {
    ElemSet seed = lat.empty_set();
    for (ElemId e : c.elems) seed.set(e);
    for (ElemId e : d.elems) seed.set(e);
    if (res.members != modular_convex_closure(lat, seed)) {
      fail(Errc::AxiomViolation,
           "level recursion disagrees with the modular convex fixpoint; this is a bug");
    }
  }
#endif
  return res;
}

GroundMask cap_support(const Lattice& lat, const HullResult& hull, ElemId u) {
  if (u < 0 || u >= lat.size() || !hull.members.test(u)) {
    fail(Errc::NotInHull, "element " + std::to_string(u) + " is not a hull member");
  }
  GroundMask mask = 0;
  for (std::size_t i = 0; i < hull.caps.size(); ++i) {
    if (lat.leq(u, hull.caps[i])) mask |= GroundMask{1} << i;
  }
  return mask;
}

GroundMask cap_cosupport(const Lattice& lat, const HullResult& hull, ElemId u) {
  const int n = static_cast<int>(hull.caps.size());
  const GroundMask full = (n == 0) ? 0u : ((GroundMask{1} << n) - 1u);
  return full & ~cap_support(lat, hull, u);
}

SetFamily hull_as_family(const Lattice& lat, const HullResult& hull) {
  const int n = static_cast<int>(hull.caps.size());
  std::vector<ElemId> elems;
  for_each_in(hull.members, [&](ElemId v) { elems.push_back(v); });
  std::vector<GroundMask> images(elems.size());
  for (std::size_t i = 0; i < elems.size(); ++i) {
    images[i] = cap_cosupport(lat, hull, elems[i]);
    if (lat.rank(elems[i]) != std::popcount(images[i])) {
      fail(Errc::AxiomViolation,
           "rank of element " + std::to_string(elems[i]) +
               " does not match its image size; embedding is broken");
    }
  }
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = 0; j < elems.size(); ++j) {
      if (i == j) continue;
      const bool below = lat.leq(elems[i], elems[j]);
      const bool subset = (images[i] & ~images[j]) == 0;
      if (below != subset) {
        fail(Errc::AxiomViolation,
             "embedding is not an order isomorphism on elements " +
                 std::to_string(elems[i]) + ", " + std::to_string(elems[j]));
      }
    }
  }
  SetFamily fam = SetFamily::from_sets(n, images);
  if (fam.sets.size() != elems.size()) {
    fail(Errc::AxiomViolation, "embedding is not injective on the hull");
  }
  FamilyAudit audit = audit_family(fam);
  if (!audit.preantimatroid()) {
    std::string why = audit.first_violation ? audit.first_violation->detail : "unknown";
    fail(Errc::AxiomViolation, "hull image is not a pre-antimatroid: " + why);
  }
  return fam;
}

}  // namespace flaghull
