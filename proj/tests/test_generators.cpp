#include <cstdio>
#include <fstream>
#include <vector>

#include "doctest.h"
#include "flaghull/flags.hpp"
#include "flaghull/generators.hpp"
#include "flaghull/io.hpp"
#include "test_util.hpp"

namespace {

// Writes text to a fresh temp file and returns its path.
std::string temp_file(const std::string& tag, const std::string& text) {
  std::string path = "gen_test_" + tag + ".json";
  std::ofstream out(path);
  out << text;
  return path;
}

}  // namespace

TEST_CASE("boolean cubes") {
  CHECK(fh::gen_boolean(1).size() == 2);
  fh::Lattice lat = fh::gen_boolean(4);
  CHECK(lat.size() == 16);
  CHECK(lat.height() == 4);
  CHECK(fh::is_semimodular(lat));
  CHECK(fh::is_modular_lattice(lat));
  // gen_boolean(2) and the hand-built diamond are the same lattice.
  CHECK(fh::gen_boolean(2).cover_pairs() == diamond().cover_pairs());
  CHECK(code_of([] { fh::gen_boolean(0); }) == fh::Errc::OutOfBounds);
  CHECK(code_of([] { fh::gen_boolean(7); }) == fh::Errc::OutOfBounds);
}

TEST_CASE("partition lattices have Bell many elements") {
  CHECK(fh::gen_partition(2).size() == 2);
  CHECK(fh::gen_partition(3).size() == 5);
  CHECK(fh::gen_partition(4).size() == 15);
  CHECK(fh::gen_partition(5).size() == 52);
  fh::Lattice p5 = fh::gen_partition(5);
  CHECK(p5.height() == 4);
  CHECK(fh::count_flags(p5) == 180);
  CHECK(fh::is_semimodular(p5));
  CHECK(code_of([] { fh::gen_partition(1); }) == fh::Errc::OutOfBounds);
  CHECK(code_of([] { fh::gen_partition(7); }) == fh::Errc::OutOfBounds);
}

TEST_CASE("binary subspace lattices") {
  CHECK(fh::gen_binary_subspace(1).size() == 2);
  fh::Lattice d2 = fh::gen_binary_subspace(2);
  CHECK(d2.size() == 5);  // three lines through the origin plus 0 and the plane
  CHECK(d2.covers_above(d2.bottom()).size() == 3);
  fh::Lattice d3 = fh::gen_binary_subspace(3);
  CHECK(d3.size() == 16);  // 1 + 7 + 7 + 1 subspaces by dimension
  CHECK(d3.height() == 3);
  CHECK(d3.covers_above(d3.bottom()).size() == 7);
  CHECK(fh::is_semimodular(d3));
  CHECK(fh::is_modular_lattice(d3));
  CHECK(code_of([] { fh::gen_binary_subspace(5); }) == fh::Errc::OutOfBounds);
}

TEST_CASE("chains and grids") {
  fh::Lattice chain = fh::gen_chain(4);
  CHECK(chain.size() == 5);
  CHECK(chain.height() == 4);
  CHECK(fh::count_flags(chain) == 1);
  fh::Lattice grid = fh::gen_grid(2);
  CHECK(grid.size() == 9);
  CHECK(grid.height() == 4);
  CHECK(fh::is_semimodular(grid));
  CHECK(fh::is_modular_lattice(grid));
}

TEST_CASE("shelling families over an explicit order") {
  // Order ideals of the chain 0 < 1 < 2 form a chain of four sets.
  fh::SetFamily ideals =
      fh::shelling_family(fh::AntimatroidKind::PosetShelling, 3, {{0, 1}, {1, 2}});
  CHECK(ideals.sets == std::vector<fh::GroundMask>{0b000, 0b001, 0b011, 0b111});
  CHECK(fh::is_antimatroid(ideals));

  // Removing from either end of the chain 0 < 1 < 2 reaches everything except the middle
  // singleton.
  fh::SetFamily ends =
      fh::shelling_family(fh::AntimatroidKind::DoubleShelling, 3, {{0, 1}, {1, 2}});
  CHECK(ends.sets == std::vector<fh::GroundMask>{0b000, 0b001, 0b100, 0b011, 0b101, 0b110,
                                                 0b111});
  CHECK(fh::is_antimatroid(ends));

  // An empty order lets every ordering through: the full power set.
  fh::SetFamily free = fh::shelling_family(fh::AntimatroidKind::PosetShelling, 3, {});
  CHECK(free.sets.size() == 8);

  CHECK(code_of([] {
          fh::shelling_family(fh::AntimatroidKind::PosetShelling, 3, {{0, 1}, {1, 0}});
        }) == fh::Errc::NotAPoset);
  CHECK(code_of([] {
          fh::shelling_family(fh::AntimatroidKind::PosetShelling, 3, {{0, 5}});
        }) == fh::Errc::OutOfBounds);
}

TEST_CASE("seeded antimatroid lattices are deterministic and semimodular") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    fh::SetFamily f1 =
        fh::antimatroid_feasible_sets(fh::AntimatroidKind::PosetShelling, 5, seed);
    fh::SetFamily f2 =
        fh::antimatroid_feasible_sets(fh::AntimatroidKind::PosetShelling, 5, seed);
    CHECK(f1 == f2);
    CHECK(fh::is_antimatroid(f1));

    fh::Lattice l1 = fh::gen_antimatroid_lattice(fh::AntimatroidKind::DoubleShelling, 5, seed);
    fh::Lattice l2 = fh::gen_antimatroid_lattice(fh::AntimatroidKind::DoubleShelling, 5, seed);
    CHECK(l1.cover_pairs() == l2.cover_pairs());
    CHECK(fh::is_semimodular(l1));
  }
  // Different seeds give different posets often enough to notice.
  fh::SetFamily a = fh::antimatroid_feasible_sets(fh::AntimatroidKind::PosetShelling, 6, 1);
  fh::SetFamily b = fh::antimatroid_feasible_sets(fh::AntimatroidKind::PosetShelling, 6, 2);
  CHECK(!(a == b));
}

TEST_CASE("lattice of a union closed family") {
  // {}, {1}, {1,2}, {2,3}, {1,2,3}: meets are the largest member inside the intersection.
  fh::SetFamily fam = fh::SetFamily::from_sets(3, {0b000, 0b001, 0b011, 0b110, 0b111});
  fh::Lattice lat = fh::lattice_from_family(fam);
  CHECK(lat.size() == 5);
  // ids follow the canonical family order: {} < {1} < {1,2} < {2,3} < {1,2,3}
  CHECK(lat.join(2, 3) == 4);
  CHECK(lat.meet(2, 3) == 0);  // intersection {2} is not a member; fall to {}
  CHECK(lat.meet(2, 1) == 1);
  CHECK_FALSE(fh::is_semimodular(lat));  // rank drops force a violation here
}

TEST_CASE("generator specs parse and realize") {
  fh::GeneratorSpec spec = fh::parse_generator_spec("boolean:3");
  CHECK(spec.family == fh::GeneratorSpec::Family::Boolean);
  CHECK(spec.parameter == 3);
  CHECK(spec.id() == "boolean:3");
  CHECK(fh::realize(spec).size() == 8);

  fh::GeneratorSpec pos = fh::parse_generator_spec("antimatroid-poset:5:7");
  CHECK(pos.family == fh::GeneratorSpec::Family::AntimatroidPoset);
  CHECK(pos.parameter == 5);
  CHECK(pos.seed == 7);
  CHECK(pos.id() == "antimatroid-poset:5:7");
  CHECK(fh::realize(pos).cover_pairs() ==
        fh::gen_antimatroid_lattice(fh::AntimatroidKind::PosetShelling, 5, 7).cover_pairs());

  CHECK(fh::parse_generator_spec("chain:4").id() == "chain:4");
  CHECK(fh::parse_generator_spec("product:2").id() == "product:2");
  CHECK(fh::realize(fh::parse_generator_spec("product:2")).size() == 9);
  CHECK(fh::parse_generator_spec("subspace:2").id() == "subspace:2");

  using fh::Errc;
  CHECK(code_of([] { fh::parse_generator_spec(""); }) == Errc::ParseError);
  CHECK(code_of([] { fh::parse_generator_spec("boolean"); }) == Errc::ParseError);
  CHECK(code_of([] { fh::parse_generator_spec("boolean:x"); }) == Errc::ParseError);
  CHECK(code_of([] { fh::parse_generator_spec("boolean:3:1"); }) == Errc::ParseError);
  CHECK(code_of([] { fh::parse_generator_spec("mystery:3"); }) == Errc::ParseError);
  CHECK(code_of([] { fh::parse_generator_spec("antimatroid-poset:5"); }) == Errc::ParseError);
}

TEST_CASE("file specs round trip through the interchange format") {
  fh::Lattice dia = diamond();
  std::string path = temp_file("diamond", fh::lattice_to_json(dia).dump(2));
  fh::GeneratorSpec spec = fh::parse_generator_spec("file:" + path);
  CHECK(spec.family == fh::GeneratorSpec::Family::FromFile);
  CHECK(spec.id() == path);
  fh::Lattice back = fh::realize(spec);
  CHECK(back.cover_pairs() == dia.cover_pairs());
  std::remove(path.c_str());
}

TEST_CASE("malformed lattice files fail with context") {
  using fh::Errc;
  std::string garbled = temp_file("garbled", "{ not json");
  CHECK(code_of([&] { fh::load_lattice(garbled); }) == Errc::ParseError);
  std::remove(garbled.c_str());

  std::string missing = temp_file("missing", R"({"covers": []})");
  CHECK(code_of([&] { fh::load_lattice(missing); }) == Errc::ParseError);
  std::remove(missing.c_str());

  std::string badpair = temp_file("badpair", R"({"elements": 2, "covers": [[0]]})");
  CHECK(code_of([&] { fh::load_lattice(badpair); }) == Errc::ParseError);
  std::remove(badpair.c_str());

  std::string cyclic = temp_file("cyclic", R"({"elements": 2, "covers": [[0,1],[1,0]]})");
  CHECK(code_of([&] { fh::load_lattice(cyclic); }) == Errc::NotAPoset);
  std::remove(cyclic.c_str());

  CHECK(code_of([] { fh::load_lattice("no_such_file_anywhere.json"); }) == Errc::ParseError);
}

TEST_CASE("default corpus is fixed and fully semimodular") {
  std::vector<fh::GeneratorSpec> corpus = fh::default_corpus();
  REQUIRE(corpus.size() == 20);
  CHECK(corpus[0].id() == "boolean:1");
  CHECK(corpus[3].id() == "boolean:4");
  CHECK(corpus[4].id() == "partition:2");
  CHECK(corpus[7].id() == "subspace:1");
  CHECK(corpus[10].id() == "antimatroid-poset:4:1");
  CHECK(corpus[11].id() == "antimatroid-shelling:5:2");
  CHECK(corpus[12].id() == "antimatroid-poset:6:3");
  CHECK(corpus[19].id() == "antimatroid-shelling:4:10");
  for (const fh::GeneratorSpec& spec : corpus) {
    fh::Lattice lat = fh::realize(spec);
    CHECK(lat.size() >= 2);
    CHECK(fh::is_semimodular(lat));
  }
}
