#include "flaghull/verify.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <set>
#include <unordered_map>

#include "flaghull/rng.hpp"

namespace flaghull {

long long VerificationReport::failures() const {
  long long total = 0;
  for (const CheckStat& c : checks) total += c.fail;
  if (!error.empty()) ++total;
  return total;
}

namespace {

// Flag counts small enough for an all-pairs distance matrix; beyond this the harness falls
// back to per-pair searches.
constexpr std::size_t kDenseDistanceLimit = 4096;

struct FlagContext {
  std::vector<Flag> flags;
  bool flags_sampled = false;  // enumeration blew the budget; flags are a uniform-ish sample
  bool dense = false;
  std::vector<std::vector<long long>> dist;  // dense mode only
};

FlagContext build_context(const Lattice& lat, const VerifyOptions& opt, bool need_distances) {
  FlagContext ctx;
  try {
    ctx.flags = enumerate_flags(lat, opt.flag_budget);
  } catch (const Error& e) {
    if (e.code() != Errc::FlagBudgetExceeded) throw;
    // Too many flags to list: fall back to a seeded near-uniform sample and per-pair
    // searches. Gallery searches past the budget still raise and are recorded.
    ctx.flags = sample_flags(lat, std::min(opt.flag_budget, kDenseDistanceLimit), opt.seed);
    ctx.flags_sampled = true;
  }
  if (!need_distances || ctx.flags_sampled) return ctx;
  if (ctx.flags.size() > kDenseDistanceLimit) return ctx;
  ctx.dense = true;

  struct VecHash {
    std::size_t operator()(const std::vector<ElemId>& v) const {
      std::size_t h = 1469598103934665603ull;
      for (ElemId e : v) {
        h ^= static_cast<std::size_t>(e) + 0x9e3779b9;
        h *= 1099511628211ull;
      }
      return h;
    }
  };
  std::unordered_map<std::vector<ElemId>, int, VecHash> index;
  for (std::size_t i = 0; i < ctx.flags.size(); ++i) {
    index.emplace(ctx.flags[i].elems, static_cast<int>(i));
  }
  std::vector<std::vector<int>> adj(ctx.flags.size());
  for (std::size_t i = 0; i < ctx.flags.size(); ++i) {
    for (const Flag& g : flag_neighbors(lat, ctx.flags[i])) {
      adj[i].push_back(index.at(g.elems));
    }
  }
  ctx.dist.assign(ctx.flags.size(), {});
  for (std::size_t s = 0; s < ctx.flags.size(); ++s) {
    auto& d = ctx.dist[s];
    d.assign(ctx.flags.size(), -1);
    d[s] = 0;
    std::deque<int> q{static_cast<int>(s)};
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (int w : adj[v]) {
        if (d[w] < 0) {
          d[w] = d[v] + 1;
          q.push_back(w);
        }
      }
    }
  }
  return ctx;
}

// Unordered pairs i < j over [0, count), exhaustively when they fit the budget, otherwise a
// seeded sample without replacement (Floyd), always in ascending pair order.
std::vector<std::pair<int, int>> make_sweep(std::size_t count, const VerifyOptions& opt,
                                            bool* sampled) {
  std::vector<std::pair<int, int>> pairs;
  const unsigned long long total =
      count < 2 ? 0 : static_cast<unsigned long long>(count) * (count - 1) / 2;
  *sampled = total > opt.pair_budget;
  if (!*sampled) {
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t j = i + 1; j < count; ++j) {
        pairs.push_back({static_cast<int>(i), static_cast<int>(j)});
      }
    }
    return pairs;
  }
  Lcg rng(opt.seed);
  std::set<unsigned long long> picked;
  for (unsigned long long j = total - opt.pair_budget; j < total; ++j) {
    unsigned long long t = rng.below(j + 1);
    picked.insert(picked.count(t) ? j : t);
  }
  // Linear index -> (i, j) with i < j; indices arrive sorted, so walk rows once.
  std::size_t row = 0;
  unsigned long long row_start = 0;
  for (unsigned long long r : picked) {
    while (r >= row_start + (count - 1 - row)) {
      row_start += count - 1 - row;
      ++row;
    }
    pairs.push_back({static_cast<int>(row), static_cast<int>(row + 1 + (r - row_start))});
  }
  return pairs;
}

struct SuiteRunner {
  const Lattice& lat;
  const VerifyOptions& opt;
  VerificationReport report;
  std::vector<CheckStat> checks;

  SuiteRunner(const Lattice& l, const VerifyOptions& o, const std::string& id,
              const std::string& suite)
      : lat(l), opt(o) {
    report.lattice_id = id;
    report.suite = suite;
    report.elements = lat.size();
    report.height = lat.height();
  }

  CheckStat& stat(const std::string& name) {
    for (CheckStat& c : checks) {
      if (c.name == name) return c;
    }
    checks.push_back(CheckStat{name, 0, 0, std::nullopt});
    return checks.back();
  }

  void tally(const std::string& name, bool ok, const Flag& c, const Flag& d,
             const std::string& detail) {
    CheckStat& s = stat(name);
    if (ok) {
      ++s.pass;
      return;
    }
    ++s.fail;
    if (!s.first_counterexample) {
      s.first_counterexample = Counterexample{c.elems, d.elems, detail};
    }
    if (!report.replay_covers) report.replay_covers = lat.cover_pairs();
  }

  VerificationReport finish(std::chrono::steady_clock::time_point started) {
    report.checks = std::move(checks);
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return std::move(report);
  }
};

void require_semimodular_input(const Lattice& lat) {
  if (!is_semimodular(lat)) {
    fail(Errc::NotSemimodular, "verification suites require a semimodular lattice");
  }
}

}  // namespace

VerificationReport verify_theorem_distance(const Lattice& lat, const VerifyOptions& opt,
                                           const std::string& lattice_id) {
  auto started = std::chrono::steady_clock::now();
  SuiteRunner run(lat, opt, lattice_id, "distance");
  require_semimodular_input(lat);
  // Names are pre-registered so a zero-pair lattice still reports every check.
  run.stat("distance_matches_inversions");
  run.stat("distance_symmetric");
  try {
    FlagContext ctx = build_context(lat, opt, /*need_distances=*/true);
    run.report.flag_count = static_cast<long long>(ctx.flags.size());
    bool sampled = false;
    auto sweep = make_sweep(ctx.flags.size(), opt, &sampled);
    run.report.sampled = sampled || ctx.flags_sampled;
    run.report.flag_pair_count = static_cast<long long>(sweep.size());
    for (auto [ci, di] : sweep) {
      const Flag& c = ctx.flags[ci];
      const Flag& d = ctx.flags[di];
      long long bfs = ctx.dense ? ctx.dist[ci][di]
                                : gallery_distance_bfs(lat, c, d, opt.flag_budget);
      long long inv_cd = jordan_holder(lat, c, d).inversions;
      long long inv_dc = jordan_holder(lat, d, c).inversions;
      run.tally("distance_matches_inversions", bfs >= 0 && bfs == inv_cd, c, d,
                "BFS distance " + std::to_string(bfs) + " vs inversion count " +
                    std::to_string(inv_cd));
      run.tally("distance_symmetric", inv_cd == inv_dc, c, d,
                "inversions " + std::to_string(inv_cd) + " vs reversed " +
                    std::to_string(inv_dc));
    }
  } catch (const Error& e) {
    run.report.error = e.what();
  }
  return run.finish(started);
}

VerificationReport verify_theorem_main(const Lattice& lat, const VerifyOptions& opt,
                                       const std::string& lattice_id) {
  auto started = std::chrono::steady_clock::now();
  SuiteRunner run(lat, opt, lattice_id, "main");
  require_semimodular_input(lat);
  run.stat("hull_family_axioms");
  run.stat("hull_flags_are_shortest_gallery_flags");
  run.stat("gallery_union_is_extracted_antimatroid");
  try {
    FlagContext ctx = build_context(lat, opt, /*need_distances=*/true);
    run.report.flag_count = static_cast<long long>(ctx.flags.size());
    bool sampled = false;
    auto sweep = make_sweep(ctx.flags.size(), opt, &sampled);
    run.report.sampled = sampled || ctx.flags_sampled;
    run.report.flag_pair_count = static_cast<long long>(sweep.size());
    for (auto [ci, di] : sweep) {
      const Flag& c = ctx.flags[ci];
      const Flag& d = ctx.flags[di];

      HullResult hull;
      bool hull_ok = false;
      std::string hull_err;
      try {
        hull = modular_convex_hull(lat, c, d);
        hull_ok = true;
      } catch (const Error& e) {
        hull_err = e.what();
      }

      SetFamily fam;
      bool fam_ok = false;
      if (!hull_ok) {
        run.tally("hull_family_axioms", false, c, d, hull_err);
      } else {
        try {
          fam = hull_as_family(lat, hull);
          fam_ok = true;
          run.tally("hull_family_axioms", true, c, d, "");
        } catch (const Error& e) {
          run.tally("hull_family_axioms", false, c, d, e.what());
        }
      }

      // The complete list of flags on at least one shortest gallery, from the distance
      // matrix when we have one and otherwise from a fresh two-sided search.  Either way
      // the list is exhaustive even when ctx.flags is only a sample.
      std::vector<Flag> gallery_flags;
      bool gallery_ok = false;
      if (hull_ok) {
        try {
          if (ctx.dense) {
            const long long d_cd = ctx.dist[ci][di];
            for (std::size_t f = 0; f < ctx.flags.size(); ++f) {
              if (ctx.dist[ci][f] >= 0 && ctx.dist[di][f] >= 0 &&
                  ctx.dist[ci][f] + ctx.dist[di][f] == d_cd) {
                gallery_flags.push_back(ctx.flags[f]);
              }
            }
          } else {
            gallery_flags = shortest_gallery_flags(lat, c, d, opt.flag_budget).flags;
          }
          gallery_ok = true;

          auto inside_hull = [&](const Flag& f) {
            for (ElemId e : f.elems) {
              if (!hull.members.test(e)) return false;
            }
            return true;
          };
          // Both inclusions: every shortest-gallery flag lies in the hull, and every flag we
          // know of that lies in the hull is on a shortest gallery.  With enumerated flags
          // this is exact equality; with sampled flags the second direction covers the
          // sample only.
          bool ok = true;
          for (const Flag& f : gallery_flags) {
            if (!inside_hull(f)) ok = false;
          }
          std::size_t known_in_hull = 0;
          for (const Flag& f : ctx.flags) {
            if (!inside_hull(f)) continue;
            ++known_in_hull;
            if (!std::binary_search(gallery_flags.begin(), gallery_flags.end(), f)) ok = false;
          }
          run.tally("hull_flags_are_shortest_gallery_flags", ok, c, d,
                    std::to_string(known_in_hull) + " hull flags vs " +
                        std::to_string(gallery_flags.size()) + " shortest-gallery flags");
        } catch (const Error& e) {
          run.tally("hull_flags_are_shortest_gallery_flags", false, c, d, e.what());
        }
      } else {
        run.tally("hull_flags_are_shortest_gallery_flags", false, c, d, hull_err);
      }

      if (hull_ok && fam_ok && gallery_ok) {
        try {
          SetFamily star = extract_antimatroid(fam);
          ElemSet united = lat.empty_set();
          for (const Flag& f : gallery_flags) {
            for (ElemId e : f.elems) united.set(e);
          }
          std::vector<GroundMask> images;
          bool mapped = true;
          for_each_in(united, [&](ElemId u) {
            if (!hull.members.test(u)) {
              mapped = false;
              return;
            }
            images.push_back(cap_cosupport(lat, hull, u));
          });
          SetFamily mapped_family =
              SetFamily::from_sets(fam.ground_size, std::move(images));
          run.tally("gallery_union_is_extracted_antimatroid",
                    mapped && mapped_family == star, c, d,
                    "gallery union maps to " + std::to_string(mapped_family.sets.size()) +
                        " sets, extracted antimatroid has " + std::to_string(star.sets.size()));
        } catch (const Error& e) {
          run.tally("gallery_union_is_extracted_antimatroid", false, c, d, e.what());
        }
      } else {
        run.tally("gallery_union_is_extracted_antimatroid", false, c, d,
                  !hull_ok      ? hull_err
                  : !fam_ok     ? "hull family failed its axioms"
                                : "shortest-gallery flag search failed");
      }
    }
  } catch (const Error& e) {
    run.report.error = e.what();
  }
  return run.finish(started);
}

VerificationReport verify_theorem_modular(const Lattice& lat, const VerifyOptions& opt,
                                          const std::string& lattice_id) {
  auto started = std::chrono::steady_clock::now();
  SuiteRunner run(lat, opt, lattice_id, "modular");
  if (!is_modular_lattice(lat)) {
    fail(Errc::NotModularLattice, "two-flag sublattice checks require a modular lattice");
  }
  run.stat("hull_equals_sublattice_closure");
  run.stat("closure_is_distributive");
  try {
    FlagContext ctx = build_context(lat, opt, /*need_distances=*/false);
    run.report.flag_count = static_cast<long long>(ctx.flags.size());
    bool sampled = false;
    auto sweep = make_sweep(ctx.flags.size(), opt, &sampled);
    run.report.sampled = sampled || ctx.flags_sampled;
    run.report.flag_pair_count = static_cast<long long>(sweep.size());
    for (auto [ci, di] : sweep) {
      const Flag& c = ctx.flags[ci];
      const Flag& d = ctx.flags[di];
      ElemSet seed = lat.empty_set();
      for (ElemId e : c.elems) seed.set(e);
      for (ElemId e : d.elems) seed.set(e);
      ElemSet closure = sublattice_closure(lat, seed);
      try {
        HullResult hull = modular_convex_hull(lat, c, d);
        run.tally("hull_equals_sublattice_closure", hull.members == closure, c, d,
                  "hull has " + std::to_string(hull.members.count()) +
                      " elements, sublattice closure " + std::to_string(closure.count()));
      } catch (const Error& e) {
        run.tally("hull_equals_sublattice_closure", false, c, d, e.what());
      }
      run.tally("closure_is_distributive", subset_is_distributive(lat, closure), c, d,
                "closure of the two flags violates distributivity");
    }
  } catch (const Error& e) {
    run.report.error = e.what();
  }
  return run.finish(started);
}

VerificationReport verify_lemmas(const Lattice& lat, const VerifyOptions& opt,
                                 const std::string& lattice_id) {
  auto started = std::chrono::steady_clock::now();
  SuiteRunner run(lat, opt, lattice_id, "lemmas");
  require_semimodular_input(lat);
  run.stat("peel_identity");
  run.stat("hull_join_closed");
  run.stat("recursion_equals_fixpoint");
  run.stat("rank_identity");
  run.stat("support_intersects_at_joins");
  try {
    FlagContext ctx = build_context(lat, opt, /*need_distances=*/false);
    run.report.flag_count = static_cast<long long>(ctx.flags.size());
    bool sampled = false;
    auto sweep = make_sweep(ctx.flags.size(), opt, &sampled);
    run.report.sampled = sampled || ctx.flags_sampled;
    run.report.flag_pair_count = static_cast<long long>(sweep.size());
    const int n = lat.height();
    for (auto [ci, di] : sweep) {
      const Flag& c = ctx.flags[ci];
      const Flag& d = ctx.flags[di];
      ElemSet seed = lat.empty_set();
      for (ElemId e : c.elems) seed.set(e);
      for (ElemId e : d.elems) seed.set(e);
      ElemSet fixpoint = modular_convex_closure(lat, seed);

      // One level peeled off by hand: push both flags above d_1, close, and fold the c_k
      // meets back in; must land exactly on the full hull.
      if (n >= 1) {
        const ElemId d1 = d.elems[1];
        int k = -1;
        for (int i = 0; i <= n; ++i) {
          if (!lat.leq(d1, c.elems[i])) k = i;
        }
        ElemSet upper_seed = lat.empty_set();
        for (int i = 0; i <= n; ++i) upper_seed.set(lat.join(c.elems[i], d1));
        for (int i = 1; i <= n; ++i) upper_seed.set(d.elems[i]);
        ElemSet base = modular_convex_closure(lat, upper_seed);
        ElemSet folded = base;
        const ElemId ck = c.elems[k];
        const ElemId ck1 = c.elems[k + 1];
        Interval iv = interval(lat, d1, ck1);
        for_each_in(base & iv.members, [&](ElemId q) {
          if (is_modular_pair_by_rank(lat, ck, q)) folded.set(lat.meet(ck, q));
        });
        run.tally("peel_identity", folded == fixpoint, c, d,
                  "peeled reconstruction has " + std::to_string(folded.count()) +
                      " elements, hull has " + std::to_string(fixpoint.count()));
      }

      bool join_closed = true;
      {
        std::vector<ElemId> elems;
        for_each_in(fixpoint, [&](ElemId v) { elems.push_back(v); });
        for (std::size_t i = 0; i < elems.size() && join_closed; ++i) {
          for (std::size_t j = i + 1; j < elems.size(); ++j) {
            if (!fixpoint.test(lat.join(elems[i], elems[j]))) {
              join_closed = false;
              break;
            }
          }
        }
      }
      run.tally("hull_join_closed", join_closed, c, d,
                "hull misses the join of two of its members");

      try {
        HullResult hull = modular_convex_hull(lat, c, d);
        run.tally("recursion_equals_fixpoint", hull.members == fixpoint, c, d,
                  "recursion produced " + std::to_string(hull.members.count()) +
                      " elements, fixpoint " + std::to_string(fixpoint.count()));

        bool ranks_ok = true;
        bool joins_ok = true;
        std::vector<ElemId> elems;
        for_each_in(hull.members, [&](ElemId v) { elems.push_back(v); });
        std::vector<GroundMask> support(elems.size());
        for (std::size_t i = 0; i < elems.size(); ++i) {
          support[i] = cap_support(lat, hull, elems[i]);
          if (lat.rank(elems[i]) != n - std::popcount(support[i])) ranks_ok = false;
        }
        for (std::size_t i = 0; i < elems.size() && joins_ok; ++i) {
          for (std::size_t j = i; j < elems.size(); ++j) {
            ElemId u = lat.join(elems[i], elems[j]);
            if (!hull.members.test(u)) {
              joins_ok = false;
              break;
            }
            if (cap_support(lat, hull, u) != (support[i] & support[j])) {
              joins_ok = false;
              break;
            }
          }
        }
        run.tally("rank_identity", ranks_ok, c, d,
                  "some hull member's rank differs from the level count above it");
        run.tally("support_intersects_at_joins", joins_ok, c, d,
                  "support of a join differs from the intersection of supports");
      } catch (const Error& e) {
        run.tally("recursion_equals_fixpoint", false, c, d, e.what());
        run.tally("rank_identity", false, c, d, e.what());
        run.tally("support_intersects_at_joins", false, c, d, e.what());
      }
    }
  } catch (const Error& e) {
    run.report.error = e.what();
  }
  return run.finish(started);
}

std::vector<VerificationReport> verify_corpus(const std::vector<GeneratorSpec>& corpus,
                                              const VerifyOptions& opt) {
  std::vector<VerificationReport> out;
  for (const GeneratorSpec& spec : corpus) {
    const std::string id = spec.id();
    Lattice lat = gen_chain(0);
    try {
      lat = realize(spec);
    } catch (const Error& e) {
      VerificationReport rep;
      rep.lattice_id = id;
      rep.suite = "all";
      rep.error = e.what();
      out.push_back(std::move(rep));
      continue;
    }
    if (!is_semimodular(lat)) {
      VerificationReport rep;
      rep.lattice_id = id;
      rep.suite = "all";
      rep.skipped = true;
      rep.skip_reason = "not semimodular";
      out.push_back(std::move(rep));
      continue;
    }
    out.push_back(verify_theorem_distance(lat, opt, id));
    out.push_back(verify_theorem_main(lat, opt, id));
    out.push_back(verify_lemmas(lat, opt, id));
    if (is_modular_lattice(lat)) {
      out.push_back(verify_theorem_modular(lat, opt, id));
    }
  }
  return out;
}

}  // namespace flaghull
