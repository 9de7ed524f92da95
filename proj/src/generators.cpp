#include "flaghull/generators.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <map>
#include <set>

#include "flaghull/io.hpp"
#include "flaghull/rng.hpp"

namespace flaghull {
namespace {

void require_range(const char* what, int value, int lo, int hi) {
  if (value < lo || value > hi) {
    fail(Errc::OutOfBounds, std::string(what) + " must be in " + std::to_string(lo) + ".." +
                                std::to_string(hi) + ", got " + std::to_string(value));
  }
}

}  // namespace

Lattice gen_boolean(int n) {
  require_range("boolean exponent", n, 1, 6);
  std::vector<GroundMask> subsets;
  for (GroundMask s = 0; s < (GroundMask{1} << n); ++s) subsets.push_back(s);
  std::sort(subsets.begin(), subsets.end(), [](GroundMask a, GroundMask b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  std::map<GroundMask, int> id;
  for (std::size_t i = 0; i < subsets.size(); ++i) id[subsets[i]] = static_cast<int>(i);
  std::vector<std::pair<ElemId, ElemId>> covers;
  for (GroundMask s : subsets) {
    for (int e = 0; e < n; ++e) {
      if (!(s & (GroundMask{1} << e))) {
        covers.push_back({id[s], id[s | (GroundMask{1} << e)]});
      }
    }
  }
  return Lattice::from_covers(covers, static_cast<int>(subsets.size()));
}

namespace {

using Partition = std::vector<std::vector<int>>;  // blocks sorted by min, members ascending

Partition canonical_partition(std::vector<std::vector<int>> blocks) {
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end());
  return blocks;
}

// All set partitions of {0..n-1} through restricted-growth strings.
std::vector<Partition> all_partitions(int n) {
  std::vector<Partition> out;
  std::vector<int> rgs(n, 0);
  while (true) {
    int nblocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
    Partition p(nblocks);
    for (int i = 0; i < n; ++i) p[rgs[i]].push_back(i);
    out.push_back(canonical_partition(p));
    // next restricted-growth string
    int i = n - 1;
    for (; i > 0; --i) {
      int cap = *std::max_element(rgs.begin(), rgs.begin() + i) + 1;
      if (rgs[i] < cap) {
        ++rgs[i];
        std::fill(rgs.begin() + i + 1, rgs.end(), 0);
        break;
      }
      rgs[i] = 0;
    }
    if (i == 0) break;
  }
  return out;
}

bool refines(const Partition& fine, const Partition& coarse, int n) {
  std::vector<int> block_of(n);
  for (std::size_t b = 0; b < coarse.size(); ++b) {
    for (int e : coarse[b]) block_of[e] = static_cast<int>(b);
  }
  for (const auto& blk : fine) {
    for (int e : blk) {
      if (block_of[e] != block_of[blk[0]]) return false;
    }
  }
  return true;
}

}  // namespace

Lattice gen_partition(int n) {
  require_range("partition ground size", n, 2, 6);
  std::vector<Partition> parts = all_partitions(n);
  // rank = n - #blocks; canonical id order is (rank, block structure)
  std::sort(parts.begin(), parts.end(), [](const Partition& a, const Partition& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });
  const int m = static_cast<int>(parts.size());
  std::vector<std::pair<ElemId, ElemId>> covers;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      // Covers in the refinement order merge exactly two blocks.
      if (parts[i].size() == parts[j].size() + 1 && refines(parts[i], parts[j], n)) {
        covers.push_back({i, j});
      }
    }
  }
  return Lattice::from_covers(covers, m);
}

namespace {

// Subspace of GF(2)^d as the set of its vectors, one bit per vector index.
using VecSet = std::uint32_t;

VecSet span_of(std::vector<int> gens, int d) {
  (void)d;
  std::vector<int> basis;
  for (int g : gens) {
    int v = g;
    for (int b : basis) v = std::min(v, v ^ b);
    if (v != 0) basis.push_back(v);
  }
  // Enumerate all combinations of the reduced basis.
  VecSet out = 0;
  int k = static_cast<int>(basis.size());
  for (int pick = 0; pick < (1 << k); ++pick) {
    int v = 0;
    for (int i = 0; i < k; ++i) {
      if (pick & (1 << i)) v ^= basis[i];
    }
    out |= VecSet{1} << v;
  }
  return out;
}

}  // namespace

Lattice gen_binary_subspace(int d) {
  require_range("subspace dimension", d, 1, 4);
  const int nvec = 1 << d;
  std::set<VecSet> spaces;
  // Spans of all generator subsets of size <= d; d <= 4 keeps this tiny.
  std::vector<int> nonzero;
  for (int v = 1; v < nvec; ++v) nonzero.push_back(v);
  std::vector<int> pick;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    spaces.insert(span_of(pick, d));
    if (pick.size() == static_cast<std::size_t>(d)) return;
    for (std::size_t i = from; i < nonzero.size(); ++i) {
      pick.push_back(nonzero[i]);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);

  std::vector<VecSet> ordered(spaces.begin(), spaces.end());
  std::sort(ordered.begin(), ordered.end(), [](VecSet a, VecSet b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;  // popcount 2^dim orders by dimension first
  });
  const int m = static_cast<int>(ordered.size());
  std::vector<std::pair<ElemId, ElemId>> covers;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (std::popcount(ordered[j]) == 2 * std::popcount(ordered[i]) &&
          (ordered[i] & ~ordered[j]) == 0) {
        covers.push_back({i, j});  // contained with dimension exactly one higher
      }
    }
  }
  return Lattice::from_covers(covers, m);
}

Lattice gen_chain(int length) {
  require_range("chain length", length, 0, 64);
  std::vector<std::pair<ElemId, ElemId>> covers;
  for (int i = 0; i < length; ++i) covers.push_back({i, i + 1});
  return Lattice::from_covers(covers, length + 1);
}

Lattice gen_grid(int length) {
  require_range("grid side length", length, 1, 16);
  const int side = length + 1;
  auto id = [side](int a, int b) { return a * side + b; };
  std::vector<std::pair<ElemId, ElemId>> covers;
  for (int a = 0; a < side; ++a) {
    for (int b = 0; b < side; ++b) {
      if (a + 1 < side) covers.push_back({id(a, b), id(a + 1, b)});
      if (b + 1 < side) covers.push_back({id(a, b), id(a, b + 1)});
    }
  }
  return Lattice::from_covers(covers, side * side);
}

SetFamily shelling_family(AntimatroidKind kind, int ground,
                          const std::vector<std::pair<int, int>>& relations) {
  require_range("ground size", ground, 1, 7);
  // Strict order as a bit matrix, transitively closed.
  std::vector<GroundMask> below(ground, 0);  // below[j] = elements strictly under j
  for (auto [a, b] : relations) {
    if (a < 0 || a >= ground || b < 0 || b >= ground || a == b) {
      fail(Errc::OutOfBounds, "bad relation (" + std::to_string(a) + ", " + std::to_string(b) +
                                  ") for ground size " + std::to_string(ground));
    }
    below[b] |= GroundMask{1} << a;
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (int j = 0; j < ground; ++j) {
      GroundMask acc = below[j];
      for (int i = 0; i < ground; ++i) {
        if (below[j] & (GroundMask{1} << i)) acc |= below[i];
      }
      if (acc != below[j]) {
        below[j] = acc;
        changed = true;
      }
    }
  }
  std::vector<GroundMask> above(ground, 0);
  for (int j = 0; j < ground; ++j) {
    for (int i = 0; i < ground; ++i) {
      if (below[j] & (GroundMask{1} << i)) above[i] |= GroundMask{1} << j;
    }
  }
  for (int j = 0; j < ground; ++j) {
    if (below[j] & (GroundMask{1} << j)) {
      fail(Errc::NotAPoset, "relation is cyclic at element " + std::to_string(j));
    }
  }

  // Feasible sets = removal prefixes: grow X by any element that is minimal (or, for double
  // shelling, maximal) among what remains. BFS over subsets, so accessibility holds by
  // construction and no characterization theorem is relied on.
  const GroundMask gm = (GroundMask{1} << ground) - 1u;
  std::set<GroundMask> feasible{0};
  std::vector<GroundMask> work{0};
  while (!work.empty()) {
    GroundMask x = work.back();
    work.pop_back();
    GroundMask remaining = gm & ~x;
    for (int e = 0; e < ground; ++e) {
      if (!(remaining & (GroundMask{1} << e))) continue;
      bool minimal = (below[e] & remaining) == 0;
      bool maximal = (above[e] & remaining) == 0;
      bool removable = (kind == AntimatroidKind::PosetShelling) ? minimal : (minimal || maximal);
      if (!removable) continue;
      GroundMask y = x | (GroundMask{1} << e);
      if (feasible.insert(y).second) work.push_back(y);
    }
  }
  return SetFamily::from_sets(ground, {feasible.begin(), feasible.end()});
}

SetFamily antimatroid_feasible_sets(AntimatroidKind kind, int ground, std::uint64_t seed) {
  require_range("ground size", ground, 1, 7);
  Lcg rng(seed);
  std::vector<std::pair<int, int>> relations;
  for (int i = 0; i < ground; ++i) {
    for (int j = i + 1; j < ground; ++j) {
      if (rng.coin()) relations.push_back({i, j});
    }
  }
  return shelling_family(kind, ground, relations);
}

Lattice lattice_from_family(const SetFamily& fam) {
  const int m = static_cast<int>(fam.sets.size());
  if (m == 0) fail(Errc::OutOfBounds, "family is empty");
  // Inclusion order, covers by transitive reduction: (i, j) is a cover when nothing sits
  // strictly between.
  std::vector<std::pair<ElemId, ElemId>> covers;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == j || (fam.sets[i] & ~fam.sets[j]) != 0) continue;
      bool direct = true;
      for (int k = 0; k < m && direct; ++k) {
        if (k == i || k == j) continue;
        if ((fam.sets[i] & ~fam.sets[k]) == 0 && (fam.sets[k] & ~fam.sets[j]) == 0 &&
            fam.sets[k] != fam.sets[i] && fam.sets[k] != fam.sets[j]) {
          direct = false;
        }
      }
      if (direct) covers.push_back({i, j});
    }
  }
  return Lattice::from_covers(covers, m);
}

Lattice gen_antimatroid_lattice(AntimatroidKind kind, int ground, std::uint64_t seed) {
  SetFamily fam = antimatroid_feasible_sets(kind, ground, seed);
  if (!is_antimatroid(fam)) {
    fail(Errc::AxiomViolation, "shelling produced a non-antimatroid family; this is a bug");
  }
  Lattice lat = lattice_from_family(fam);
  if (!is_semimodular(lat)) {
    fail(Errc::AxiomViolation,
         "antimatroid feasible-set lattice is not semimodular; this is a bug");
  }
  return lat;
}

Lattice load_lattice(const std::string& path) { return read_lattice_file(path); }

std::string GeneratorSpec::id() const {
  switch (family) {
    case Family::Boolean: return "boolean:" + std::to_string(parameter);
    case Family::Partition: return "partition:" + std::to_string(parameter);
    case Family::BinarySubspace: return "subspace:" + std::to_string(parameter);
    case Family::AntimatroidPoset:
      return "antimatroid-poset:" + std::to_string(parameter) + ":" + std::to_string(seed);
    case Family::AntimatroidShelling:
      return "antimatroid-shelling:" + std::to_string(parameter) + ":" + std::to_string(seed);
    case Family::Chain: return "chain:" + std::to_string(parameter);
    case Family::Product: return "product:" + std::to_string(parameter);
    case Family::FromFile: return path;
  }
  return "?";
}

GeneratorSpec parse_generator_spec(const std::string& text) {
  // File specs take the whole remainder as the path, colons and all.
  if (text.rfind("file:", 0) == 0) {
    GeneratorSpec spec;
    spec.family = GeneratorSpec::Family::FromFile;
    spec.path = text.substr(5);
    if (spec.path.empty()) {
      fail(Errc::ParseError, "expected file:PATH in generator spec '" + text + "'");
    }
    return spec;
  }
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t colon = text.find(':', start);
    if (colon == std::string::npos) {
      parts.push_back(text.substr(start));
      break;
    }
    parts.push_back(text.substr(start, colon - start));
    start = colon + 1;
  }
  if (parts.empty() || parts[0].empty()) {
    fail(Errc::ParseError, "empty generator spec");
  }
  GeneratorSpec spec;
  using F = GeneratorSpec::Family;
  const std::string& fam = parts[0];
  bool seeded = false;
  if (fam == "boolean") spec.family = F::Boolean;
  else if (fam == "partition") spec.family = F::Partition;
  else if (fam == "subspace") spec.family = F::BinarySubspace;
  else if (fam == "antimatroid-poset") { spec.family = F::AntimatroidPoset; seeded = true; }
  else if (fam == "antimatroid-shelling") { spec.family = F::AntimatroidShelling; seeded = true; }
  else if (fam == "chain") spec.family = F::Chain;
  else if (fam == "product") spec.family = F::Product;
  else {
    fail(Errc::ParseError, "unknown generator family '" + fam + "' in spec '" + text + "'");
  }

  auto parse_int = [&](const std::string& s, const char* what) {
    try {
      std::size_t used = 0;
      long long v = std::stoll(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      fail(Errc::ParseError,
           std::string("bad ") + what + " '" + s + "' in generator spec '" + text + "'");
    }
  };
  // Seeded families take family:param:seed, everything else family:param.
  if (parts.size() != (seeded ? 3u : 2u)) {
    fail(Errc::ParseError, "generator spec '" + text + "' has the wrong number of fields");
  }
  spec.parameter = static_cast<int>(parse_int(parts[1], "parameter"));
  if (seeded) {
    spec.seed = static_cast<std::uint64_t>(parse_int(parts[2], "seed"));
  }
  return spec;
}

Lattice realize(const GeneratorSpec& spec) {
  using F = GeneratorSpec::Family;
  switch (spec.family) {
    case F::Boolean: return gen_boolean(spec.parameter);
    case F::Partition: return gen_partition(spec.parameter);
    case F::BinarySubspace: return gen_binary_subspace(spec.parameter);
    case F::AntimatroidPoset:
      return gen_antimatroid_lattice(AntimatroidKind::PosetShelling, spec.parameter, spec.seed);
    case F::AntimatroidShelling:
      return gen_antimatroid_lattice(AntimatroidKind::DoubleShelling, spec.parameter, spec.seed);
    case F::Chain: return gen_chain(spec.parameter);
    case F::Product: return gen_grid(spec.parameter);
    case F::FromFile: return load_lattice(spec.path);
  }
  fail(Errc::ParseError, "unhandled generator family");
}

std::vector<GeneratorSpec> default_corpus() {
  std::vector<GeneratorSpec> out;
  for (int n = 1; n <= 4; ++n) out.push_back(parse_generator_spec("boolean:" + std::to_string(n)));
  for (int n = 2; n <= 4; ++n) {
    out.push_back(parse_generator_spec("partition:" + std::to_string(n)));
  }
  for (int d = 1; d <= 3; ++d) out.push_back(parse_generator_spec("subspace:" + std::to_string(d)));
  for (int i = 1; i <= 10; ++i) {
    const char* kind = (i % 2 == 1) ? "antimatroid-poset" : "antimatroid-shelling";
    int ground = 4 + (i - 1) % 3;
    out.push_back(parse_generator_spec(std::string(kind) + ":" + std::to_string(ground) + ":" +
                                       std::to_string(i)));
  }
  return out;
}

}  // namespace flaghull
