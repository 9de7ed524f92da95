#include "flaghull/lattice.hpp"

#include <algorithm>
#include <cassert>
#include <queue>
#include <string>

namespace flaghull {
namespace {

std::string pair_str(ElemId a, ElemId b) {
  return "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
}

}  // namespace

Lattice Lattice::from_covers(const std::vector<std::pair<ElemId, ElemId>>& covers,
                             int element_count, const BuildOptions& options) {
  if (element_count < 1) {
    fail(Errc::OutOfBounds, "element count must be positive, got " +
                                std::to_string(element_count));
  }
  if (static_cast<std::size_t>(element_count) > options.max_elements) {
    fail(Errc::OutOfBounds,
         "element count " + std::to_string(element_count) + " exceeds the configured limit " +
             std::to_string(options.max_elements) +
             " (join/meet tables are quadratic; raise BuildOptions::max_elements to proceed)");
  }

  Lattice lat;
  const int m = element_count;
  lat.m_ = m;

  for (auto [a, b] : covers) {
    if (a < 0 || a >= m || b < 0 || b >= m) {
      fail(Errc::OutOfBounds, "cover pair " + pair_str(a, b) + " references an element outside 0.." +
                                  std::to_string(m - 1));
    }
    if (a == b) {
      fail(Errc::RedundantCover, "reflexive cover pair " + pair_str(a, b));
    }
  }

  auto sorted = covers;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    auto dup = *std::adjacent_find(sorted.begin(), sorted.end());
    fail(Errc::RedundantCover, "duplicate cover pair " + pair_str(dup.first, dup.second));
  }
  lat.cover_pairs_ = std::move(sorted);

  lat.cov_above_.assign(m, {});
  lat.cov_below_.assign(m, {});
  lat.cover_bits_.assign(m, ElemSet(m));
  std::vector<int> indeg(m, 0);
  for (auto [a, b] : lat.cover_pairs_) {
    lat.cov_above_[a].push_back(b);
    lat.cov_below_[b].push_back(a);
    lat.cover_bits_[a].set(b);
    ++indeg[b];
  }

  // Kahn topological order over the cover digraph; leftovers mean a directed cycle, which
  // contradicts antisymmetry of the intended order.
  std::vector<ElemId> topo;
  topo.reserve(m);
  {
    std::vector<int> deg = indeg;
    std::priority_queue<ElemId, std::vector<ElemId>, std::greater<>> ready;
    for (ElemId v = 0; v < m; ++v) {
      if (deg[v] == 0) ready.push(v);
    }
    while (!ready.empty()) {
      ElemId v = ready.top();
      ready.pop();
      topo.push_back(v);
      for (ElemId w : lat.cov_above_[v]) {
        if (--deg[w] == 0) ready.push(w);
      }
    }
    if (static_cast<int>(topo.size()) != m) {
      fail(Errc::NotAPoset, "cover relation contains a directed cycle");
    }
  }

  // up_[v] = {w : v <= w} accumulated against topological order; down_ dually.
  lat.up_.assign(m, ElemSet(m));
  lat.down_.assign(m, ElemSet(m));
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    ElemId v = *it;
    lat.up_[v].set(v);
    for (ElemId w : lat.cov_above_[v]) lat.up_[v] |= lat.up_[w];
  }
  for (ElemId v : topo) {
    lat.down_[v].set(v);
    for (ElemId u : lat.cov_below_[v]) lat.down_[v] |= lat.down_[u];
  }

  // A declared cover must have nothing strictly between its endpoints. Transitive edges and
  // anything implied by other covers land here.
  for (auto [a, b] : lat.cover_pairs_) {
    ElemSet between = lat.up_[a] & lat.down_[b];
    if (between.count() != 2) {
      fail(Errc::RedundantCover, "cover pair " + pair_str(a, b) +
                                     " is implied by other covers (interval has " +
                                     std::to_string(between.count()) + " elements)");
    }
  }

  // Join and meet tables. For p,q the candidates are S = up(p) & up(q); because up(z) is a
  // subset of S for any z in S, the least upper bound exists exactly when some z in S has
  // |up(z)| == |S|, and that z is unique. This check is the lattice validation: no separate
  // "is this a lattice" pass exists.
  std::vector<std::size_t> up_count(m), down_count(m);
  for (ElemId v = 0; v < m; ++v) {
    up_count[v] = lat.up_[v].count();
    down_count[v] = lat.down_[v].count();
  }
  lat.join_.assign(static_cast<std::size_t>(m) * m, -1);
  lat.meet_.assign(static_cast<std::size_t>(m) * m, -1);
  auto at = [m](std::vector<ElemId>& t, ElemId p, ElemId q) -> ElemId& {
    return t[static_cast<std::size_t>(p) * m + q];
  };
  for (ElemId p = 0; p < m; ++p) {
    for (ElemId q = p; q < m; ++q) {
      ElemId j = -1;
      if (lat.up_[p].test(q)) {
        j = q;
      } else if (lat.up_[q].test(p)) {
        j = p;
      } else {
        ElemSet ub = lat.up_[p] & lat.up_[q];
        const std::size_t want = ub.count();
        if (want == 0) {
          fail(Errc::NoUniqueBound,
               "elements " + pair_str(p, q) + " have no common upper bound");
        }
        for_each_in(ub, [&](ElemId z) {
          if (up_count[z] == want) j = z;
        });
        if (j < 0) {
          fail(Errc::NoUniqueBound,
               "elements " + pair_str(p, q) + " have no least upper bound");
        }
      }
      ElemId w = -1;
      if (lat.down_[p].test(q)) {
        w = q;
      } else if (lat.down_[q].test(p)) {
        w = p;
      } else {
        ElemSet lb = lat.down_[p] & lat.down_[q];
        const std::size_t want = lb.count();
        if (want == 0) {
          fail(Errc::NoUniqueBound,
               "elements " + pair_str(p, q) + " have no common lower bound");
        }
        for_each_in(lb, [&](ElemId z) {
          if (down_count[z] == want) w = z;
        });
        if (w < 0) {
          fail(Errc::NoUniqueBound,
               "elements " + pair_str(p, q) + " have no greatest lower bound");
        }
      }
      at(lat.join_, p, q) = at(lat.join_, q, p) = j;
      at(lat.meet_, p, q) = at(lat.meet_, q, p) = w;
    }
  }

  // With pairwise bounds established the extremes are forced to be unique; these checks are
  // kept as a guard against construction bugs, not as reachable validation.
  {
    std::vector<ElemId> minimals, maximals;
    for (ElemId v = 0; v < m; ++v) {
      if (down_count[v] == 1) minimals.push_back(v);
      if (up_count[v] == 1) maximals.push_back(v);
    }
    if (minimals.size() != 1) {
      fail(Errc::MultipleBottoms,
           "expected a unique minimal element, found " + std::to_string(minimals.size()));
    }
    if (maximals.size() != 1) {
      fail(Errc::MultipleTops,
           "expected a unique maximal element, found " + std::to_string(maximals.size()));
    }
    lat.bottom_ = minimals[0];
    lat.top_ = maximals[0];
  }

  // Longest-path rank from bottom. Well defined on any valid input; this is the grading when
  // the lattice is semimodular.
  lat.rank_.assign(m, 0);
  for (ElemId v : topo) {
    for (ElemId w : lat.cov_above_[v]) {
      lat.rank_[w] = std::max(lat.rank_[w], lat.rank_[v] + 1);
    }
  }

  for (auto& adj : lat.cov_above_) std::sort(adj.begin(), adj.end());
  for (auto& adj : lat.cov_below_) std::sort(adj.begin(), adj.end());
  return lat;
}

Interval interval(const Lattice& lat, ElemId lo, ElemId hi) {
  if (!lat.leq(lo, hi)) {
    fail(Errc::NotComparable, "interval endpoints " + pair_str(lo, hi) + " are not comparable");
  }
  Interval iv;
  iv.lo = lo;
  iv.hi = hi;
  iv.members = lat.up_set(lo) & lat.down_set(hi);
  return iv;
}

bool is_semimodular(const Lattice& lat) {
  const int m = lat.size();
  bool rank_ok = true;
  for (ElemId p = 0; p < m && rank_ok; ++p) {
    for (ElemId q = p + 1; q < m; ++q) {
      if (lat.rank(p) + lat.rank(q) <
          lat.rank(lat.meet(p, q)) + lat.rank(lat.join(p, q))) {
        rank_ok = false;
        break;
      }
    }
  }
  bool cover_ok = true;
  for (ElemId a = 0; a < m && cover_ok; ++a) {
    for (ElemId b = 0; b < m; ++b) {
      if (a == b) continue;
      if (lat.covers(lat.meet(a, b), a) && !lat.covers(b, lat.join(a, b))) {
        cover_ok = false;
        break;
      }
    }
  }
  // Equivalent characterizations for finite lattices, longest-path rank included.
  assert(rank_ok == cover_ok);
  return rank_ok && cover_ok;
}

bool is_modular_pair(const Lattice& lat, ElemId p, ElemId q) {
  const ElemId pq = lat.meet(p, q);
  bool ok = true;
  for_each_in(lat.down_set(q), [&](ElemId x) {
    if (lat.meet(lat.join(x, p), q) != lat.join(x, pq)) ok = false;
  });
  return ok;
}

bool is_modular_pair_by_rank(const Lattice& lat, ElemId p, ElemId q) {
  return lat.rank(p) + lat.rank(q) ==
         lat.rank(lat.meet(p, q)) + lat.rank(lat.join(p, q));
}

bool is_modular_lattice(const Lattice& lat) {
  const int m = lat.size();
  for (ElemId p = 0; p < m; ++p) {
    for (ElemId q = 0; q < m; ++q) {
      if (!is_modular_pair(lat, p, q)) return false;
    }
  }
  return true;
}

ElemSet sublattice_closure(const Lattice& lat, const ElemSet& seed) {
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
    // Pair x against the current membership snapshot; later arrivals get their own turn.
    std::vector<ElemId> snapshot;
    for_each_in(members, [&](ElemId y) { snapshot.push_back(y); });
    for (ElemId y : snapshot) {
      add(lat.join(x, y));
      add(lat.meet(x, y));
    }
  }
  return members;
}

bool subset_is_distributive(const Lattice& lat, const ElemSet& members) {
  std::vector<ElemId> elems;
  for_each_in(members, [&](ElemId v) { elems.push_back(v); });
  for (ElemId x : elems) {
    for (ElemId y : elems) {
      for (ElemId z : elems) {
        if (lat.meet(x, lat.join(y, z)) !=
            lat.join(lat.meet(x, y), lat.meet(x, z))) {
          return false;
        }
      }
    }
  }
  return true;
}

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotAPoset: return "NotAPoset";
    case Errc::NoUniqueBound: return "NoUniqueBound";
    case Errc::MultipleBottoms: return "MultipleBottoms";
    case Errc::MultipleTops: return "MultipleTops";
    case Errc::RedundantCover: return "RedundantCover";
    case Errc::NotComparable: return "NotComparable";
    case Errc::NotAFlag: return "NotAFlag";
    case Errc::FlagBudgetExceeded: return "FlagBudgetExceeded";
    case Errc::NotABijection: return "NotABijection";
    case Errc::NoGallery: return "NoGallery";
    case Errc::NotSemimodular: return "NotSemimodular";
    case Errc::NotModularLattice: return "NotModularLattice";
    case Errc::NotInHull: return "NotInHull";
    case Errc::AxiomViolation: return "AxiomViolation";
    case Errc::NotPreAntimatroid: return "NotPreAntimatroid";
    case Errc::OutOfBounds: return "OutOfBounds";
    case Errc::ParseError: return "ParseError";
  }
  return "UnknownError";
}

}  // namespace flaghull
