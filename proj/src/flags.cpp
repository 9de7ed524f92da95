#include "flaghull/flags.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <limits>
#include <string>
#include <unordered_map>

#include "flaghull/rng.hpp"

namespace flaghull {
namespace {

struct FlagHash {
  std::size_t operator()(const std::vector<ElemId>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (ElemId e : v) {
      h ^= static_cast<std::size_t>(e) + 0x9e3779b9;
      h *= 1099511628211ull;
    }
    return h;
  }
};

// Index map over flags discovered so far; BFS works on indices, not vectors.
struct FlagArena {
  std::unordered_map<std::vector<ElemId>, int, FlagHash> index;
  std::vector<Flag> flags;

  int intern(const Flag& f) {
    auto it = index.find(f.elems);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(flags.size());
    index.emplace(f.elems, id);
    flags.push_back(f);
    return id;
  }
};

}  // namespace

Flag make_flag(const Lattice& lat, std::vector<ElemId> elems) {
  if (elems.empty()) fail(Errc::NotAFlag, "empty element sequence");
  for (ElemId e : elems) {
    if (e < 0 || e >= lat.size()) {
      fail(Errc::NotAFlag, "element " + std::to_string(e) + " is out of range");
    }
  }
  if (elems.front() != lat.bottom()) {
    fail(Errc::NotAFlag, "sequence starts at " + std::to_string(elems.front()) +
                             ", not at the bottom element " + std::to_string(lat.bottom()));
  }
  if (elems.back() != lat.top()) {
    fail(Errc::NotAFlag, "sequence ends at " + std::to_string(elems.back()) +
                             ", not at the top element " + std::to_string(lat.top()));
  }
  for (std::size_t i = 0; i + 1 < elems.size(); ++i) {
    if (!lat.covers(elems[i], elems[i + 1])) {
      fail(Errc::NotAFlag, "consecutive pair (" + std::to_string(elems[i]) + ", " +
                               std::to_string(elems[i + 1]) + ") is not a cover");
    }
  }
  return Flag{std::move(elems)};
}

std::vector<Flag> enumerate_flags(const Lattice& lat, std::size_t budget) {
  std::vector<Flag> out;
  std::vector<ElemId> chain{lat.bottom()};
  // Explicit DFS; branch order ascending, so emission order is lexicographic.
  struct Frame {
    ElemId elem;
    std::size_t next_cover;
  };
  std::vector<Frame> stack{{lat.bottom(), 0}};
  while (!stack.empty()) {
    Frame& fr = stack.back();
    const auto& above = lat.covers_above(fr.elem);
    if (fr.elem == lat.top()) {
      if (out.size() == budget) {
        fail(Errc::FlagBudgetExceeded,
             "more than " + std::to_string(budget) + " flags");
      }
      out.push_back(Flag{chain});
      stack.pop_back();
      chain.pop_back();
      continue;
    }
    if (fr.next_cover < above.size()) {
      ElemId nxt = above[fr.next_cover++];
      stack.push_back({nxt, 0});
      chain.push_back(nxt);
    } else {
      stack.pop_back();
      chain.pop_back();
    }
  }
  return out;
}

std::uint64_t count_flags(const Lattice& lat) {
  // Path-count DP from bottom over the cover digraph, saturating.
  const std::uint64_t cap = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> cnt(lat.size(), 0);
  cnt[lat.bottom()] = 1;
  std::vector<ElemId> order(lat.size());
  for (ElemId v = 0; v < lat.size(); ++v) order[v] = v;
  std::sort(order.begin(), order.end(),
            [&](ElemId a, ElemId b) { return lat.rank(a) < lat.rank(b); });
  // Rank order is not a topological order on non-graded input, so walk covers instead.
  std::vector<int> pending(lat.size(), 0);
  for (ElemId v = 0; v < lat.size(); ++v) {
    pending[v] = static_cast<int>(lat.covers_below(v).size());
  }
  std::deque<ElemId> ready{lat.bottom()};
  while (!ready.empty()) {
    ElemId v = ready.front();
    ready.pop_front();
    for (ElemId w : lat.covers_above(v)) {
      cnt[w] = (cap - cnt[w] < cnt[v]) ? cap : cnt[w] + cnt[v];
      if (--pending[w] == 0) ready.push_back(w);
    }
  }
  return cnt[lat.top()];
}

std::vector<Flag> sample_flags(const Lattice& lat, std::size_t want, std::uint64_t seed) {
  using U128 = unsigned __int128;
  const U128 cap = ~U128{0};
  // paths[v] = number of maximal chains from v to top, saturating at 2^128-1. Saturation makes
  // the draw only near-uniform, which is irrelevant for any lattice a human will feed in.
  std::vector<U128> paths(lat.size(), 0);
  paths[lat.top()] = 1;
  std::vector<int> pending(lat.size(), 0);
  for (ElemId v = 0; v < lat.size(); ++v) {
    pending[v] = static_cast<int>(lat.covers_above(v).size());
  }
  std::deque<ElemId> ready{lat.top()};
  while (!ready.empty()) {
    ElemId v = ready.front();
    ready.pop_front();
    for (ElemId u : lat.covers_below(v)) {
      paths[u] = (cap - paths[u] < paths[v]) ? cap : paths[u] + paths[v];
      if (--pending[u] == 0) ready.push_back(u);
    }
  }

  Lcg rng(seed);
  std::vector<Flag> out;
  std::unordered_map<std::vector<ElemId>, int, FlagHash> seen;
  std::size_t attempts = 0;
  const std::size_t max_attempts = want * 20 + 64;
  while (out.size() < want && attempts++ < max_attempts) {
    std::vector<ElemId> chain{lat.bottom()};
    while (chain.back() != lat.top()) {
      ElemId v = chain.back();
      // 64-bit draw against the (possibly 128-bit) path count; upper halves beyond 2^64
      // collapse, acceptable for sampling purposes.
      std::uint64_t total =
          paths[v] > U128{std::numeric_limits<std::uint64_t>::max()}
              ? std::numeric_limits<std::uint64_t>::max()
              : static_cast<std::uint64_t>(paths[v]);
      std::uint64_t r = rng.below(std::max<std::uint64_t>(total, 1));
      ElemId picked = lat.covers_above(v).front();
      for (ElemId w : lat.covers_above(v)) {
        std::uint64_t share =
            paths[w] > U128{std::numeric_limits<std::uint64_t>::max()}
                ? std::numeric_limits<std::uint64_t>::max()
                : static_cast<std::uint64_t>(paths[w]);
        if (r < share) {
          picked = w;
          break;
        }
        r -= std::min(r, share);
        picked = w;
      }
      chain.push_back(picked);
    }
    if (seen.emplace(chain, 1).second) out.push_back(Flag{std::move(chain)});
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool flags_adjacent(const Flag& f, const Flag& g) {
  if (f.elems.size() != g.elems.size()) return false;
  std::vector<ElemId> a = f.elems, b = g.elems;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<ElemId> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  return common.size() + 1 == f.elems.size();
}

std::vector<Flag> flag_neighbors(const Lattice& lat, const Flag& f) {
  std::vector<Flag> out;
  for (std::size_t i = 1; i + 1 < f.elems.size(); ++i) {
    for (ElemId w : lat.covers_above(f.elems[i - 1])) {
      if (w == f.elems[i]) continue;
      if (!lat.covers(w, f.elems[i + 1])) continue;
      Flag g = f;
      g.elems[i] = w;
      out.push_back(std::move(g));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_gallery(const Lattice& lat, const Gallery& g) {
  if (g.flags.empty()) return false;
  for (const Flag& f : g.flags) {
    make_flag(lat, f.elems);  // validity; throws on garbage
  }
  for (std::size_t i = 0; i + 1 < g.flags.size(); ++i) {
    if (!flags_adjacent(g.flags[i], g.flags[i + 1])) return false;
  }
  return true;
}

JordanHolderPermutation jordan_holder(const Lattice& lat, const Flag& c, const Flag& d) {
  if (c.elems.size() != d.elems.size()) {
    fail(Errc::NotAFlag, "flags have different lengths (" + std::to_string(c.elems.size()) +
                             " vs " + std::to_string(d.elems.size()) + ")");
  }
  const int n = static_cast<int>(c.elems.size()) - 1;
  JordanHolderPermutation jh;
  jh.perm.resize(n);
  for (int i = 1; i <= n; ++i) {
    int found = -1;
    for (int j = 1; j <= n; ++j) {
      if (lat.leq(d.elems[i], lat.join(d.elems[i - 1], c.elems[j]))) {
        found = j;
        break;
      }
    }
    assert(found > 0);  // j = n always succeeds: c_n is the top element
    jh.perm[i - 1] = found - 1;
  }
  std::vector<char> hit(n, 0);
  for (int v : jh.perm) {
    if (hit[v]) {
      fail(Errc::NotABijection,
           "Jordan-Holder word repeats position " + std::to_string(v + 1) +
               "; input lattice is not semimodular or flags are inconsistent");
    }
    hit[v] = 1;
  }
  for (int i = 0; i < n; ++i) {
    for (int k = i + 1; k < n; ++k) {
      if (jh.perm[i] > jh.perm[k]) ++jh.inversions;
    }
  }
  return jh;
}

long long flag_distance(const Lattice& lat, const Flag& c, const Flag& d) {
  return jordan_holder(lat, c, d).inversions;
}

long long gallery_distance_bfs(const Lattice& lat, const Flag& c, const Flag& d,
                               std::size_t budget) {
  FlagArena arena;
  int src = arena.intern(c);
  int dst = arena.intern(d);
  std::vector<long long> dist(arena.flags.size(), -1);
  dist.resize(2, -1);
  dist[src] = 0;
  if (src == dst) return 0;
  std::deque<int> q{src};
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (const Flag& g : flag_neighbors(lat, arena.flags[v])) {
      int w = arena.intern(g);
      if (arena.flags.size() > budget) {
        fail(Errc::FlagBudgetExceeded,
             "gallery search visited more than " + std::to_string(budget) + " flags");
      }
      if (static_cast<std::size_t>(w) >= dist.size()) dist.resize(w + 1, -1);
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        if (w == dst) return dist[w];
        q.push_back(w);
      }
    }
  }
  fail(Errc::NoGallery, "no gallery connects the two flags");
}

namespace {

// Distances from src to every flag in its exchange-graph component.
std::vector<long long> bfs_all(const Lattice& lat, FlagArena& arena, int src,
                               std::size_t budget) {
  std::vector<long long> dist(arena.flags.size(), -1);
  if (static_cast<std::size_t>(src) >= dist.size()) dist.resize(src + 1, -1);
  dist[src] = 0;
  std::deque<int> q{src};
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (const Flag& g : flag_neighbors(lat, arena.flags[v])) {
      int w = arena.intern(g);
      if (arena.flags.size() > budget) {
        fail(Errc::FlagBudgetExceeded,
             "gallery search visited more than " + std::to_string(budget) + " flags");
      }
      if (static_cast<std::size_t>(w) >= dist.size()) dist.resize(w + 1, -1);
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        q.push_back(w);
      }
    }
  }
  dist.resize(arena.flags.size(), -1);
  return dist;
}

}  // namespace

ShortestGalleryFlags shortest_gallery_flags(const Lattice& lat, const Flag& c, const Flag& d,
                                            std::size_t budget) {
  FlagArena arena;
  int src = arena.intern(c);
  int dst = arena.intern(d);
  std::vector<long long> from_c = bfs_all(lat, arena, src, budget);
  if (from_c[dst] < 0) fail(Errc::NoGallery, "no gallery connects the two flags");
  std::vector<long long> from_d = bfs_all(lat, arena, dst, budget);
  ShortestGalleryFlags res;
  res.distance = from_c[dst];
  for (std::size_t i = 0; i < arena.flags.size(); ++i) {
    if (from_c[i] >= 0 && from_d[i] >= 0 && from_c[i] + from_d[i] == res.distance) {
      res.flags.push_back(arena.flags[i]);
    }
  }
  std::sort(res.flags.begin(), res.flags.end());
  return res;
}

Gallery shortest_gallery_witness(const Lattice& lat, const Flag& c, const Flag& d,
                                 std::size_t budget) {
  FlagArena arena;
  int src = arena.intern(c);
  int dst = arena.intern(d);
  std::vector<long long> from_d = bfs_all(lat, arena, dst, budget);
  from_d.resize(arena.flags.size(), -1);
  if (static_cast<std::size_t>(src) >= from_d.size() || from_d[src] < 0) {
    fail(Errc::NoGallery, "no gallery connects the two flags");
  }
  Gallery g;
  Flag cur = c;
  g.flags.push_back(cur);
  long long remaining = from_d[src];
  while (remaining > 0) {
    // Neighbors come back sorted, so the walk is deterministic.
    bool stepped = false;
    for (const Flag& nb : flag_neighbors(lat, cur)) {
      auto it = arena.index.find(nb.elems);
      if (it == arena.index.end()) continue;
      if (from_d[it->second] == remaining - 1) {
        cur = nb;
        g.flags.push_back(cur);
        --remaining;
        stepped = true;
        break;
      }
    }
    assert(stepped);
    (void)stepped;
  }
  return g;
}

}  // namespace flaghull
