#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flaghull/flags.hpp"
#include "flaghull/generators.hpp"
#include "flaghull/hull.hpp"
#include "flaghull/lattice.hpp"

namespace flaghull {

struct VerifyOptions {
  std::size_t flag_budget = kDefaultFlagBudget;
  std::size_t pair_budget = 10'000;
  std::uint64_t seed = 42;
};

// Enough to replay a failure by hand: the two flags, what went wrong, and (copied into the
// report on first failure) the lattice itself.
struct Counterexample {
  std::vector<ElemId> flag_c;
  std::vector<ElemId> flag_d;
  std::string detail;
};

struct CheckStat {
  std::string name;
  long long pass = 0;
  long long fail = 0;
  std::optional<Counterexample> first_counterexample;
};

struct VerificationReport {
  std::string lattice_id;
  std::string suite;  // "distance" | "main" | "lemmas" | "modular" | "all"
  int elements = 0;
  int height = 0;
  long long flag_count = 0;
  long long flag_pair_count = 0;  // pairs actually swept
  bool sampled = false;           // pair sweep was sampled, not exhaustive
  std::vector<CheckStat> checks;
  double wall_seconds = 0;  // human summary only; never serialized into the canonical report
  bool skipped = false;
  std::string skip_reason;
  std::string error;  // base ParseError / budget failures that aborted the whole suite
  // Present as soon as any check failed, so the report alone reproduces the run.
  std::optional<std::vector<std::pair<ElemId, ElemId>>> replay_covers;

  long long failures() const;
};

// Shortest-gallery distance equals the inversion number of the Jordan-Holder permutation,
// checked per pair against the BFS oracle, both orientations' inversion counts included.
VerificationReport verify_theorem_distance(const Lattice& lat, const VerifyOptions& opt,
                                           const std::string& lattice_id = "");

// Per pair: the hull embeds as a pre-antimatroid (axioms + order isomorphism + rank identity),
// flags inside the hull are exactly the flags on shortest galleries, and the union of those
// flags maps onto the extracted antimatroid.
VerificationReport verify_theorem_main(const Lattice& lat, const VerifyOptions& opt,
                                       const std::string& lattice_id = "");

// Modular lattices only (throws NotModularLattice): the hull equals the plain sublattice
// closure of the two flags and that closure is distributive.
VerificationReport verify_theorem_modular(const Lattice& lat, const VerifyOptions& opt,
                                          const std::string& lattice_id = "");

// Structural identities behind the construction: the one-level peel-off identity, join
// closure of the hull, recursion-equals-fixpoint, the rank identity and the join/intersection
// identity of the embedding.
VerificationReport verify_lemmas(const Lattice& lat, const VerifyOptions& opt,
                                 const std::string& lattice_id = "");

// Runs every applicable suite over the corpus; non-semimodular entries are reported as skipped
// rather than failed, the modular suite runs only where it applies.
std::vector<VerificationReport> verify_corpus(const std::vector<GeneratorSpec>& corpus,
                                              const VerifyOptions& opt);

}  // namespace flaghull
