// Acceptance checklist for the whole project: nine exact, tolerance-zero criteria over the
// standard corpus (boolean cubes n<=4, partition lattices n<=4, binary subspace lattices d<=3,
// ten seeded antimatroid lattices with ground <=6). Prints one [PASS]/[FAIL] line per
// criterion and exits nonzero if any fail.
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "flaghull/family.hpp"
#include "flaghull/flags.hpp"
#include "flaghull/generators.hpp"
#include "flaghull/hull.hpp"
#include "flaghull/verify.hpp"

namespace fh = flaghull;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1fs", s);
  return buf;
}

bool all_criteria_ok = true;

void report(int number, bool ok, const std::string& text) {
  std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << number << ": " << text << "\n";
  if (!ok) all_criteria_ok = false;
}

long long fails_of(const fh::VerificationReport& rep, const std::string& check) {
  for (const fh::CheckStat& c : rep.checks) {
    if (c.name == check) return c.fail;
  }
  return 1;  // missing check counts as a failure
}

// Captured stdout plus exit code of one CLI invocation.
std::pair<int, std::string> run_cli(const std::string& args) {
  std::string cmd = std::string("\"") + FLAGHULL_CLI_PATH + "\" " + args;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, fh::Lattice>> corpus;
  for (const fh::GeneratorSpec& spec : fh::default_corpus()) {
    corpus.emplace_back(spec.id(), fh::realize(spec));
  }

  fh::VerifyOptions exhaustive;
  exhaustive.pair_budget = 1'000'000'000;  // larger than any corpus pair count: no sampling
  exhaustive.seed = 42;

  // 1. Gallery distance equals the inversion number of the permutation word, every flag pair
  //    of every corpus lattice, against the breadth-first search oracle.
  {
    auto start = Clock::now();
    bool ok = true;
    long long pairs = 0;
    for (const auto& [id, lat] : corpus) {
      fh::VerificationReport rep = fh::verify_theorem_distance(lat, exhaustive, id);
      ok = ok && rep.error.empty() && !rep.sampled && rep.failures() == 0;
      pairs += rep.flag_pair_count;
    }
    double el = seconds_since(start);
    ok = ok && el < 60.0;
    report(1, ok,
           "gallery distance equals inversion count on all " + std::to_string(pairs) +
               " corpus flag pairs (" + fmt_seconds(el) + ", limit 60s)");
  }

  // One lemma-suite pass per lattice backs criteria 2, 5 and 6.
  std::vector<fh::VerificationReport> lemma_reports;
  double lemma_seconds = 0.0;
  {
    auto start = Clock::now();
    for (const auto& [id, lat] : corpus) {
      lemma_reports.push_back(fh::verify_lemmas(lat, exhaustive, id));
    }
    lemma_seconds = seconds_since(start);
  }

  // 2. The level recursion and the join/meet fixpoint build identical hulls on every pair.
  {
    bool ok = lemma_seconds < 120.0;
    long long pairs = 0;
    for (const fh::VerificationReport& rep : lemma_reports) {
      ok = ok && rep.error.empty() && !rep.sampled &&
           fails_of(rep, "recursion_equals_fixpoint") == 0;
      pairs += rep.flag_pair_count;
    }
    report(2, ok,
           "recursive hull equals fixpoint hull on all " + std::to_string(pairs) +
               " corpus flag pairs (" + fmt_seconds(lemma_seconds) + ", limit 120s)");
  }

  // One main-suite pass per lattice backs criteria 3 and 4.
  std::vector<fh::VerificationReport> main_reports;
  for (const auto& [id, lat] : corpus) {
    main_reports.push_back(fh::verify_theorem_main(lat, exhaustive, id));
  }

  // 3. Every hull maps to a pre-antimatroid through an order isomorphism with matching ranks.
  {
    bool ok = true;
    for (const fh::VerificationReport& rep : main_reports) {
      ok = ok && rep.error.empty() && fails_of(rep, "hull_family_axioms") == 0;
    }
    report(3, ok, "every hull embeds as a rank-preserving pre-antimatroid (all corpus pairs)");
  }

  // 4. Hull flags are exactly the shortest-gallery flags, and the image of their union is the
  //    extracted antimatroid. Exhaustive where the lattice has at most 200 flags, plus the
  //    five-element partition lattice sampled at 500 pairs with seed 42.
  {
    bool ok = true;
    long long pairs = 0;
    int lattices = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      if (fh::count_flags(corpus[i].second) > 200) continue;
      const fh::VerificationReport& rep = main_reports[i];
      ok = ok && rep.error.empty() &&
           fails_of(rep, "hull_flags_are_shortest_gallery_flags") == 0 &&
           fails_of(rep, "gallery_union_is_extracted_antimatroid") == 0;
      pairs += rep.flag_pair_count;
      ++lattices;
    }
    fh::Lattice p5 = fh::gen_partition(5);
    fh::VerifyOptions sampled;
    sampled.pair_budget = 500;
    sampled.seed = 42;
    fh::VerificationReport rep5 = fh::verify_theorem_main(p5, sampled, "partition:5");
    ok = ok && rep5.error.empty() && rep5.sampled && rep5.flag_pair_count == 500 &&
         fails_of(rep5, "hull_flags_are_shortest_gallery_flags") == 0 &&
         fails_of(rep5, "gallery_union_is_extracted_antimatroid") == 0;
    report(4, ok,
           "hull flags = shortest-gallery flags and their union extracts the antimatroid (" +
               std::to_string(pairs) + " exhaustive pairs on " + std::to_string(lattices) +
               " lattices, 500 sampled pairs on partition:5)");
  }

  // 5. Rank and support identities: rank(u) = n - |support(u)| and supports intersect at joins.
  {
    bool ok = true;
    for (const fh::VerificationReport& rep : lemma_reports) {
      ok = ok && rep.error.empty() && fails_of(rep, "rank_identity") == 0 &&
           fails_of(rep, "support_intersects_at_joins") == 0;
    }
    report(5, ok, "rank and join-support identities hold for every hull element (all pairs)");
  }

  // 6. Every hull is join-closed.
  {
    bool ok = true;
    for (const fh::VerificationReport& rep : lemma_reports) {
      ok = ok && rep.error.empty() && fails_of(rep, "hull_join_closed") == 0;
    }
    report(6, ok, "every corpus hull is join-closed");
  }

  // 7. On modular inputs (boolean cubes n<=4, binary subspaces d<=3) the hull coincides with
  //    the generated sublattice and that sublattice passes the distributivity triple check.
  {
    bool ok = true;
    long long pairs = 0;
    for (const std::string& spec :
         {std::string("boolean:1"), std::string("boolean:2"), std::string("boolean:3"),
          std::string("boolean:4"), std::string("subspace:1"), std::string("subspace:2"),
          std::string("subspace:3")}) {
      fh::Lattice lat = fh::realize(fh::parse_generator_spec(spec));
      fh::VerificationReport rep = fh::verify_theorem_modular(lat, exhaustive, spec);
      ok = ok && rep.error.empty() && !rep.sampled &&
           fails_of(rep, "hull_equals_sublattice_closure") == 0 &&
           fails_of(rep, "closure_is_distributive") == 0;
      pairs += rep.flag_pair_count;
    }
    report(7, ok,
           "on modular inputs the hull is the generated sublattice and is distributive (" +
               std::to_string(pairs) + " pairs)");
  }

  // 8. Extraction: K* passes the antimatroid axioms for every family produced by the sweeps,
  //    and extraction is the identity on families that are already antimatroids.
  {
    bool ok = true;
    long long families = 0;
    try {
      for (const auto& [id, lat] : corpus) {
        std::vector<fh::Flag> flags = fh::enumerate_flags(lat);
        for (std::size_t i = 0; i < flags.size(); ++i) {
          for (std::size_t j = i; j < flags.size(); ++j) {
            fh::HullResult hull = fh::modular_convex_hull(lat, flags[i], flags[j]);
            fh::SetFamily fam = fh::hull_as_family(lat, hull);
            fh::SetFamily star = fh::extract_antimatroid(fam);
            ++families;
            if (!fh::is_antimatroid(star)) ok = false;
            if (fh::is_antimatroid(fam) && !(star == fam)) ok = false;
          }
        }
      }
    } catch (const fh::Error& e) {
      ok = false;
    }
    report(8, ok,
           "extracted antimatroids pass all axioms and fix antimatroid inputs (" +
               std::to_string(families) + " families)");
  }

  // 9. Determinism: the verification command, run twice with one fixed configuration, emits
  //    byte-identical reports.
  {
    const std::string args = "verify --budget-pairs 10000 --seed 42 2>/dev/null";
    auto [code1, out1] = run_cli(args);
    auto [code2, out2] = run_cli(args);
    bool ok = code1 == 0 && code2 == 0 && !out1.empty() && out1 == out2;
    report(9, ok,
           "two identical verification runs emit byte-identical reports (" +
               std::to_string(out1.size()) + " bytes)");
  }

  return all_criteria_ok ? 0 : 1;
}
