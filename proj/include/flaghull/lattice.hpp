#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstdint>
#include <utility>
#include <vector>

#include "flaghull/errors.hpp"

namespace flaghull {

using ElemId = int;
using ElemSet = boost::dynamic_bitset<>;

inline constexpr std::size_t kDefaultMaxElements = std::size_t{1} << 16;

struct BuildOptions {
  // Join/meet tables are quadratic in the element count, so absurdly large inputs are refused
  // up front instead of thrashing memory. Raise deliberately if you mean it.
  std::size_t max_elements = kDefaultMaxElements;
};

// Finite lattice, immutable once built. Elements are dense ids 0..size()-1; the order relation
// is kept as one bitset row per element (up_set/down_set), joins and meets as full tables, so
// all queries after construction are O(1) or one bitset scan. Construction validates that the
// cover input really describes a lattice: acyclic, irredundant covers, every pair with a unique
// least upper and greatest lower bound. Bottom and top are discovered, never passed in.
class Lattice {
 public:
  static Lattice from_covers(const std::vector<std::pair<ElemId, ElemId>>& covers,
                             int element_count, const BuildOptions& options = {});

  int size() const { return m_; }
  // Rank of the top element; every flag has height() + 1 elements when the lattice is graded.
  int height() const { return rank_[top_]; }
  ElemId bottom() const { return bottom_; }
  ElemId top() const { return top_; }

  bool leq(ElemId p, ElemId q) const { return up_[p].test(q); }
  bool covers(ElemId lo, ElemId hi) const { return cover_bits_[lo].test(hi); }
  ElemId join(ElemId p, ElemId q) const { return join_[static_cast<std::size_t>(p) * m_ + q]; }
  ElemId meet(ElemId p, ElemId q) const { return meet_[static_cast<std::size_t>(p) * m_ + q]; }
  // Length of a longest chain from bottom to p. In a semimodular lattice every maximal chain
  // from bottom to p has exactly this length.
  int rank(ElemId p) const { return rank_[p]; }

  const ElemSet& up_set(ElemId p) const { return up_[p]; }
  const ElemSet& down_set(ElemId p) const { return down_[p]; }
  const std::vector<ElemId>& covers_above(ElemId p) const { return cov_above_[p]; }
  const std::vector<ElemId>& covers_below(ElemId p) const { return cov_below_[p]; }
  // Cover pairs (lower, upper), sorted; canonical regardless of input order.
  const std::vector<std::pair<ElemId, ElemId>>& cover_pairs() const { return cover_pairs_; }

  ElemSet empty_set() const { return ElemSet(m_); }
  ElemSet full_set() const { ElemSet s(m_); s.set(); return s; }

 private:
  Lattice() = default;

  int m_ = 0;
  ElemId bottom_ = 0;
  ElemId top_ = 0;
  std::vector<ElemSet> up_, down_, cover_bits_;
  std::vector<std::vector<ElemId>> cov_above_, cov_below_;
  std::vector<std::pair<ElemId, ElemId>> cover_pairs_;
  std::vector<int> rank_;
  std::vector<ElemId> join_, meet_;
};

struct Interval {
  ElemId lo = 0;
  ElemId hi = 0;
  ElemSet members;  // everything between lo and hi inclusive
};

// Requires lo <= hi in the order; throws NotComparable otherwise.
Interval interval(const Lattice& lat, ElemId lo, ElemId hi);

// Checks both characterizations over all pairs: the rank inequality
// r(p) + r(q) >= r(p^q) + r(pvq) and the cover condition (a covers a^b implies avb covers b).
// For finite lattices these agree, and the implementation asserts that they do.
bool is_semimodular(const Lattice& lat);

// Definitional modular-pair test: (x v p) ^ q == x v (p ^ q) for every x <= q.
bool is_modular_pair(const Lattice& lat, ElemId p, ElemId q);

// Rank shortcut r(p) + r(q) == r(p^q) + r(pvq). Equivalent to is_modular_pair exactly when
// the lattice is semimodular; callers on untrusted input should use the definitional form.
bool is_modular_pair_by_rank(const Lattice& lat, ElemId p, ElemId q);

// Every pair modular.
bool is_modular_lattice(const Lattice& lat);

// Smallest subset containing seed that is closed under join and meet of ALL pairs.
ElemSet sublattice_closure(const Lattice& lat, const ElemSet& seed);

// Distributive law x ^ (y v z) == (x ^ y) v (x ^ z) over all triples drawn from members.
// members is expected to be closed under join and meet.
bool subset_is_distributive(const Lattice& lat, const ElemSet& members);

// Visits every set bit in ascending order.
template <class F>
void for_each_in(const ElemSet& s, F&& f) {
  for (auto p = s.find_first(); p != ElemSet::npos; p = s.find_next(p)) {
    f(static_cast<ElemId>(p));
  }
}

}  // namespace flaghull
