#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "flaghull/generators.hpp"
#include "flaghull/io.hpp"
#include "flaghull/verify.hpp"
#include "test_util.hpp"

namespace {

fh::VerifyOptions quick() {
  fh::VerifyOptions opt;
  return opt;
}

long long fails_of(const fh::VerificationReport& rep, const std::string& check) {
  for (const fh::CheckStat& c : rep.checks) {
    if (c.name == check) return c.fail;
  }
  return -1;  // check missing entirely
}

}  // namespace

TEST_CASE("distance suite on the three element cube") {
  fh::Lattice lat = fh::gen_boolean(3);
  fh::VerificationReport rep = fh::verify_theorem_distance(lat, quick(), "boolean:3");
  CHECK(rep.lattice_id == "boolean:3");
  CHECK(rep.suite == "distance");
  CHECK(rep.elements == 8);
  CHECK(rep.height == 3);
  CHECK(rep.flag_count == 6);
  CHECK(rep.flag_pair_count == 15);
  CHECK_FALSE(rep.sampled);
  CHECK(rep.error.empty());
  CHECK(rep.failures() == 0);
  REQUIRE(rep.checks.size() == 2);
  CHECK(fails_of(rep, "distance_matches_inversions") == 0);
  CHECK(fails_of(rep, "distance_symmetric") == 0);
  for (const fh::CheckStat& c : rep.checks) {
    CHECK(c.pass == 15);
    CHECK_FALSE(c.first_counterexample.has_value());
  }
}

TEST_CASE("main suite on the three element cube") {
  fh::Lattice lat = fh::gen_boolean(3);
  fh::VerificationReport rep = fh::verify_theorem_main(lat, quick(), "boolean:3");
  CHECK(rep.suite == "main");
  CHECK(rep.failures() == 0);
  CHECK(fails_of(rep, "hull_family_axioms") == 0);
  CHECK(fails_of(rep, "hull_flags_are_shortest_gallery_flags") == 0);
  CHECK(fails_of(rep, "gallery_union_is_extracted_antimatroid") == 0);
}

TEST_CASE("lemma suite on the partition lattice") {
  fh::Lattice lat = fh::gen_partition(4);
  fh::VerificationReport rep = fh::verify_lemmas(lat, quick(), "partition:4");
  CHECK(rep.suite == "lemmas");
  CHECK(rep.flag_count == 18);
  CHECK(rep.flag_pair_count == 153);
  CHECK(rep.failures() == 0);
  CHECK(fails_of(rep, "peel_identity") == 0);
  CHECK(fails_of(rep, "hull_join_closed") == 0);
  CHECK(fails_of(rep, "recursion_equals_fixpoint") == 0);
  CHECK(fails_of(rep, "rank_identity") == 0);
  CHECK(fails_of(rep, "support_intersects_at_joins") == 0);
}

TEST_CASE("modular suite accepts modular lattices only") {
  fh::VerificationReport rep =
      fh::verify_theorem_modular(fh::gen_boolean(3), quick(), "boolean:3");
  CHECK(rep.suite == "modular");
  CHECK(rep.failures() == 0);
  CHECK(fails_of(rep, "hull_equals_sublattice_closure") == 0);
  CHECK(fails_of(rep, "closure_is_distributive") == 0);

  CHECK(code_of([] {
          fh::verify_theorem_modular(fh::gen_partition(4), fh::VerifyOptions{}, "partition:4");
        }) == fh::Errc::NotModularLattice);
}

TEST_CASE("suites reject non-semimodular input") {
  CHECK(code_of([] {
          fh::verify_theorem_distance(pentagon(), fh::VerifyOptions{}, "pentagon");
        }) == fh::Errc::NotSemimodular);
}

TEST_CASE("pair sampling is bounded and deterministic") {
  fh::Lattice lat = fh::gen_partition(4);
  fh::VerifyOptions opt;
  opt.pair_budget = 10;
  fh::VerificationReport rep = fh::verify_lemmas(lat, opt, "partition:4");
  CHECK(rep.sampled);
  CHECK(rep.flag_pair_count == 10);
  CHECK(rep.failures() == 0);

  fh::VerificationReport again = fh::verify_lemmas(lat, opt, "partition:4");
  CHECK(fh::report_to_json(rep).dump() == fh::report_to_json(again).dump());

  fh::VerifyOptions other = opt;
  other.seed = 99;
  fh::VerificationReport shifted = fh::verify_lemmas(lat, other, "partition:4");
  CHECK(shifted.flag_pair_count == 10);
  CHECK(shifted.failures() == 0);
}

TEST_CASE("flag budget overflow falls back to sampling") {
  fh::Lattice lat = fh::gen_boolean(4);
  fh::VerifyOptions opt;
  opt.flag_budget = 10;

  // No distances needed: the lemma checks simply run on the sampled flags.
  fh::VerificationReport lem = fh::verify_lemmas(lat, opt, "boolean:4");
  CHECK(lem.sampled);
  CHECK(lem.flag_count <= 10);
  CHECK(lem.error.empty());
  CHECK(lem.failures() == 0);

  // Distance checks need gallery searches, and those hit the same budget.
  fh::VerificationReport dist = fh::verify_theorem_distance(lat, opt, "boolean:4");
  CHECK(dist.sampled);
  CHECK_FALSE(dist.error.empty());
  CHECK(dist.failures() >= 1);
}

TEST_CASE("corpus driver emits one report per suite") {
  std::vector<fh::GeneratorSpec> corpus = {fh::parse_generator_spec("chain:2"),
                                           fh::parse_generator_spec("boolean:2")};
  std::vector<fh::VerificationReport> reps = fh::verify_corpus(corpus, quick());
  REQUIRE(reps.size() == 8);  // both lattices are modular: four suites each
  CHECK(reps[0].lattice_id == "chain:2");
  CHECK(reps[0].suite == "distance");
  CHECK(reps[1].suite == "main");
  CHECK(reps[2].suite == "lemmas");
  CHECK(reps[3].suite == "modular");
  CHECK(reps[4].lattice_id == "boolean:2");
  for (const fh::VerificationReport& rep : reps) {
    CHECK(rep.failures() == 0);
    CHECK_FALSE(rep.skipped);
  }
}

TEST_CASE("corpus driver skips and reports bad inputs") {
  fh::Lattice n5 = pentagon();
  std::string path = "verify_test_pentagon.json";
  {
    std::ofstream out(path);
    out << fh::lattice_to_json(n5).dump(2);
  }
  std::vector<fh::GeneratorSpec> corpus = {fh::parse_generator_spec("file:" + path),
                                           fh::parse_generator_spec("file:no_such.json")};
  std::vector<fh::VerificationReport> reps = fh::verify_corpus(corpus, quick());
  REQUIRE(reps.size() == 2);
  CHECK(reps[0].skipped);
  CHECK(reps[0].skip_reason == "not semimodular");
  CHECK(reps[0].suite == "all");
  CHECK_FALSE(reps[1].skipped);
  CHECK_FALSE(reps[1].error.empty());
  CHECK(reps[1].failures() == 1);
  std::remove(path.c_str());
}

TEST_CASE("corpus reports serialize deterministically") {
  std::vector<fh::GeneratorSpec> corpus = {fh::parse_generator_spec("partition:4")};
  fh::VerifyOptions opt;
  opt.pair_budget = 50;
  std::vector<fh::VerificationReport> a = fh::verify_corpus(corpus, opt);
  std::vector<fh::VerificationReport> b = fh::verify_corpus(corpus, opt);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(fh::report_to_json(a[i]).dump() == fh::report_to_json(b[i]).dump());
  }
}
