// Command line front end: validate lattices, compute two-flag hulls and gallery distances,
// run the verification suites, render Hasse diagrams. Every command writes deterministic bytes
// to stdout (or --out); progress and timings go to stderr.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "flaghull/family.hpp"
#include "flaghull/flags.hpp"
#include "flaghull/generators.hpp"
#include "flaghull/hull.hpp"
#include "flaghull/io.hpp"
#include "flaghull/lattice.hpp"
#include "flaghull/verify.hpp"

namespace fh = flaghull;

namespace {

struct CommonOpts {
  std::string input_path;
  std::string gen_spec;
  std::string format = "text";
  std::string out_path;
  std::size_t budget_flags = fh::kDefaultFlagBudget;
  std::size_t budget_pairs = 10'000;
  std::uint64_t seed = 42;
};

void add_source_opts(CLI::App* cmd, CommonOpts& o) {
  auto* input = cmd->add_option("--input", o.input_path, "lattice interchange file");
  auto* gen = cmd->add_option("--gen", o.gen_spec,
                              "generator spec family:param[:seed], e.g. boolean:3");
  input->excludes(gen);
  gen->excludes(input);
}

void add_budget_opts(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--budget-flags", o.budget_flags, "cap on enumerated flags");
  cmd->add_option("--budget-pairs", o.budget_pairs, "cap on swept flag pairs");
  cmd->add_option("--seed", o.seed, "seed for sampling decisions");
}

fh::Lattice load_single(const CommonOpts& o) {
  if (!o.input_path.empty()) return fh::load_lattice(o.input_path);
  if (!o.gen_spec.empty()) return fh::realize(fh::parse_generator_spec(o.gen_spec));
  fh::fail(fh::Errc::ParseError, "exactly one of --input or --gen is required");
}

std::string source_id(const CommonOpts& o) {
  return o.input_path.empty() ? o.gen_spec : o.input_path;
}

std::vector<fh::ElemId> parse_id_list(const std::string& text) {
  std::vector<fh::ElemId> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      fh::fail(fh::Errc::ParseError, "bad element id '" + tok + "' in flag list '" + text + "'");
    }
  }
  if (out.empty()) fh::fail(fh::Errc::ParseError, "empty flag list");
  return out;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) fh::fail(fh::Errc::ParseError, out_path + ": cannot open for writing");
  f << text;
}

std::string sets_line(const fh::SetFamily& fam) {
  std::string line;
  for (std::size_t i = 0; i < fam.sets.size(); ++i) {
    if (i) line += " ";
    line += fh::set_to_string(fam.sets[i], fam.ground_size);
  }
  return line;
}

int run_check(const CommonOpts& o) {
  fh::Lattice lat = load_single(o);
  const bool semi = fh::is_semimodular(lat);
  const bool modular = fh::is_modular_lattice(lat);
  const std::uint64_t nflags = fh::count_flags(lat);
  const bool over = nflags > o.budget_flags;
  std::string flag_text =
      over ? (">" + std::to_string(o.budget_flags)) : std::to_string(nflags);
  if (o.format == "structured") {
    fh::Json doc{{"command", "check"},
                 {"input", source_id(o)},
                 {"elements", lat.size()},
                 {"height", lat.height()},
                 {"flags", fh::Json()},
                 {"semimodular", semi},
                 {"modular", modular}};
    // Exact counts stay numeric; only the over-budget marker is text.
    if (over) doc["flags"] = flag_text;
    else doc["flags"] = nflags;
    emit(doc.dump(2) + "\n", o.out_path);
  } else {
    std::ostringstream out;
    out << "elements: " << lat.size() << "\n"
        << "height: " << lat.height() << "\n"
        << "flags: " << flag_text << "\n"
        << "semimodular: " << (semi ? "yes" : "no") << "\n"
        << "modular: " << (modular ? "yes" : "no") << "\n";
    emit(out.str(), o.out_path);
  }
  return 0;
}

int run_hull(const CommonOpts& o, const std::string& cflag, const std::string& dflag) {
  fh::Lattice lat = load_single(o);
  fh::Flag c = fh::make_flag(lat, parse_id_list(cflag));
  fh::Flag d = fh::make_flag(lat, parse_id_list(dflag));
  fh::HullResult hull = fh::modular_convex_hull(lat, c, d);
  fh::SetFamily fam = fh::hull_as_family(lat, hull);
  fh::SetFamily star = fh::extract_antimatroid(fam);

  if (o.format == "graph-description") {
    emit(fh::render_dot_subposet(lat, hull.members, "hull"), o.out_path);
    return 0;
  }
  std::vector<int> sigma1;  // 1-based for output
  for (int v : hull.sigma.perm) sigma1.push_back(v + 1);
  std::vector<fh::ElemId> members;
  fh::for_each_in(hull.members, [&](fh::ElemId v) { members.push_back(v); });

  if (o.format == "structured") {
    fh::Json doc{{"command", "hull"},
                 {"input", source_id(o)},
                 {"flag_c", fh::flag_to_json(c)},
                 {"flag_d", fh::flag_to_json(d)},
                 {"sigma", sigma1},
                 {"inversions", hull.sigma.inversions},
                 {"caps", hull.caps},
                 {"cap_covers", hull.cap_covers},
                 {"hull", members},
                 {"preantimatroid", fh::family_to_json(fam)},
                 {"antimatroid", fh::family_to_json(star)}};
    emit(doc.dump(2) + "\n", o.out_path);
    return 0;
  }
  std::ostringstream out;
  auto join_ints = [](const auto& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += " ";
      s += std::to_string(v[i]);
    }
    return s;
  };
  out << "sigma: " << join_ints(sigma1) << "\n"
      << "inversions: " << hull.sigma.inversions << "\n"
      << "caps: " << join_ints(hull.caps) << "\n"
      << "cap_covers: " << join_ints(hull.cap_covers) << "\n"
      << "hull: " << join_ints(members) << "\n"
      << "preantimatroid: " << sets_line(fam) << "\n"
      << "antimatroid: " << sets_line(star) << "\n";
  emit(out.str(), o.out_path);
  return 0;
}

int run_distance(const CommonOpts& o, const std::string& cflag, const std::string& dflag,
                 bool witness) {
  fh::Lattice lat = load_single(o);
  if (!fh::is_semimodular(lat)) {
    fh::fail(fh::Errc::NotSemimodular, "gallery distance requires a semimodular lattice");
  }
  fh::Flag c = fh::make_flag(lat, parse_id_list(cflag));
  fh::Flag d = fh::make_flag(lat, parse_id_list(dflag));
  const long long dist = fh::flag_distance(lat, c, d);
  fh::Gallery gallery;
  if (witness) {
    gallery = fh::shortest_gallery_witness(lat, c, d, o.budget_flags);
    if (static_cast<long long>(gallery.flags.size()) != dist + 1) {
      fh::fail(fh::Errc::AxiomViolation,
               "witness gallery length " + std::to_string(gallery.flags.size() - 1) +
                   " does not match distance " + std::to_string(dist));
    }
  }
  if (o.format == "structured") {
    fh::Json doc{{"command", "distance"},
                 {"input", source_id(o)},
                 {"flag_c", fh::flag_to_json(c)},
                 {"flag_d", fh::flag_to_json(d)},
                 {"distance", dist}};
    if (witness) {
      fh::Json w = fh::Json::array();
      for (const fh::Flag& f : gallery.flags) w.push_back(fh::flag_to_json(f));
      doc["witness"] = w;
    }
    emit(doc.dump(2) + "\n", o.out_path);
    return 0;
  }
  std::ostringstream out;
  out << "distance: " << dist << "\n";
  if (witness) {
    for (const fh::Flag& f : gallery.flags) {
      std::string line;
      for (std::size_t i = 0; i < f.elems.size(); ++i) {
        if (i) line += ",";
        line += std::to_string(f.elems[i]);
      }
      out << "gallery: " << line << "\n";
    }
  }
  emit(out.str(), o.out_path);
  return 0;
}

int run_verify(const CommonOpts& o, const std::vector<std::string>& gens,
               const std::vector<std::string>& files) {
  std::vector<fh::GeneratorSpec> corpus;
  for (const std::string& g : gens) corpus.push_back(fh::parse_generator_spec(g));
  for (const std::string& f : files) {
    fh::GeneratorSpec spec;
    spec.family = fh::GeneratorSpec::Family::FromFile;
    spec.path = f;
    corpus.push_back(spec);
  }
  if (corpus.empty()) corpus = fh::default_corpus();

  fh::VerifyOptions vopt;
  vopt.flag_budget = o.budget_flags;
  vopt.pair_budget = o.budget_pairs;
  vopt.seed = o.seed;
  std::vector<fh::VerificationReport> reports = fh::verify_corpus(corpus, vopt);

  long long failures = 0;
  bool had_input_error = false;
  double wall = 0;
  for (const auto& r : reports) {
    failures += r.failures();
    wall += r.wall_seconds;
    if (!r.error.empty()) had_input_error = true;
    std::cerr << "# " << r.lattice_id << " " << r.suite;
    if (r.skipped) {
      std::cerr << " skipped: " << r.skip_reason;
    } else {
      std::cerr << " (" << r.wall_seconds << "s)";
    }
    std::cerr << "\n";
  }
  std::cerr << "# total wall time " << wall << "s\n";

  if (o.format == "text") {
    std::ostringstream out;
    for (const auto& r : reports) {
      if (r.skipped) {
        out << r.lattice_id << " " << r.suite << " skipped: " << r.skip_reason << "\n";
        continue;
      }
      if (!r.error.empty() && r.checks.empty()) {
        out << r.lattice_id << " " << r.suite << " error: " << r.error << "\n";
        continue;
      }
      long long pass = 0, failed = 0;
      for (const auto& chk : r.checks) {
        pass += chk.pass;
        failed += chk.fail;
      }
      out << r.lattice_id << " " << r.suite << " pairs=" << r.flag_pair_count
          << (r.sampled ? " (sampled)" : "") << " pass=" << pass << " fail=" << failed << "\n";
    }
    out << "total failures: " << failures << "\n";
    emit(out.str(), o.out_path);
  } else {
    fh::Json docs = fh::Json::array();
    for (const auto& r : reports) docs.push_back(fh::report_to_json(r));
    fh::Json doc{{"command", "verify"},
                 {"options",
                  fh::Json{{"flag_budget", vopt.flag_budget},
                           {"pair_budget", vopt.pair_budget},
                           {"seed", vopt.seed}}},
                 {"reports", docs},
                 {"total_failures", failures}};
    emit(doc.dump(2) + "\n", o.out_path);
  }
  if (had_input_error) return 2;
  return failures > 0 ? 1 : 0;
}

int run_render(const CommonOpts& o, const std::string& what, const std::string& cflag,
               const std::string& dflag) {
  fh::Lattice lat = load_single(o);
  if (what == "lattice") {
    emit(fh::render_dot_lattice(lat), o.out_path);
    return 0;
  }
  if (cflag.empty() || dflag.empty()) {
    fh::fail(fh::Errc::ParseError, "--what " + what + " requires --flag-c and --flag-d");
  }
  fh::Flag c = fh::make_flag(lat, parse_id_list(cflag));
  fh::Flag d = fh::make_flag(lat, parse_id_list(dflag));
  fh::HullResult hull = fh::modular_convex_hull(lat, c, d);
  if (what == "hull") {
    emit(fh::render_dot_subposet(lat, hull.members, "hull"), o.out_path);
    return 0;
  }
  fh::SetFamily fam = fh::hull_as_family(lat, hull);
  if (what == "family") {
    emit(fh::render_dot_family(fam, "preantimatroid"), o.out_path);
    return 0;
  }
  emit(fh::render_dot_family(fh::extract_antimatroid(fam), "antimatroid"), o.out_path);
  return 0;
}

int run_export(const CommonOpts& o, const std::string& corpus_dir) {
  if (!corpus_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(corpus_dir, ec);
    if (ec) {
      fh::fail(fh::Errc::ParseError,
               corpus_dir + ": cannot create directory (" + ec.message() + ")");
    }
    for (const fh::GeneratorSpec& spec : fh::default_corpus()) {
      std::string name = spec.id();
      for (char& ch : name) {
        if (ch == ':') ch = '_';
      }
      fh::write_lattice_file(fh::realize(spec), corpus_dir + "/" + name + ".json");
    }
    return 0;
  }
  if (o.gen_spec.empty() || o.out_path.empty()) {
    fh::fail(fh::Errc::ParseError, "export needs --gen and --out, or --corpus DIR");
  }
  fh::write_lattice_file(fh::realize(fh::parse_generator_spec(o.gen_spec)), o.out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-flag modular convex hulls in semimodular lattices"};
  app.require_subcommand(1);

  CommonOpts check_o, hull_o, dist_o, verify_o, render_o, export_o;
  std::string hull_c, hull_d, dist_c, dist_d, render_c, render_d;
  bool witness = false;
  std::string render_what = "lattice";
  std::vector<std::string> verify_gens, verify_files;
  std::string export_corpus_dir;

  CLI::App* check = app.add_subcommand("check", "validate a lattice and print its shape");
  add_source_opts(check, check_o);
  add_budget_opts(check, check_o);
  check->add_option("--format", check_o.format, "text|structured")
      ->check(CLI::IsMember({"text", "structured"}));
  check->add_option("--out", check_o.out_path, "write output here instead of stdout");

  CLI::App* hull = app.add_subcommand("hull", "modular convex hull of two flags");
  add_source_opts(hull, hull_o);
  add_budget_opts(hull, hull_o);
  hull->add_option("--flag-c", hull_c, "comma-separated element ids, bottom to top")
      ->required();
  hull->add_option("--flag-d", hull_d, "comma-separated element ids, bottom to top")
      ->required();
  hull->add_option("--format", hull_o.format, "text|structured|graph-description")
      ->check(CLI::IsMember({"text", "structured", "graph-description"}));
  hull->add_option("--out", hull_o.out_path, "write output here instead of stdout");

  CLI::App* distance = app.add_subcommand("distance", "shortest gallery distance of two flags");
  add_source_opts(distance, dist_o);
  add_budget_opts(distance, dist_o);
  distance->add_option("--flag-c", dist_c, "comma-separated element ids, bottom to top")
      ->required();
  distance->add_option("--flag-d", dist_d, "comma-separated element ids, bottom to top")
      ->required();
  distance->add_flag("--witness", witness, "print one shortest gallery");
  distance->add_option("--format", dist_o.format, "text|structured")
      ->check(CLI::IsMember({"text", "structured"}));
  distance->add_option("--out", dist_o.out_path, "write output here instead of stdout");

  CLI::App* verify = app.add_subcommand("verify", "run the verification suites over a corpus");
  verify->add_option("--gen", verify_gens, "generator spec, repeatable")->take_all();
  verify->add_option("--input", verify_files, "lattice file, repeatable")->take_all();
  add_budget_opts(verify, verify_o);
  verify_o.format = "structured";
  verify->add_option("--format", verify_o.format, "text|structured")
      ->check(CLI::IsMember({"text", "structured"}));
  verify->add_option("--out", verify_o.out_path, "write the report here instead of stdout");

  CLI::App* render = app.add_subcommand("render", "graph description (DOT) output");
  add_source_opts(render, render_o);
  render->add_option("--what", render_what, "lattice|hull|family|antimatroid")
      ->check(CLI::IsMember({"lattice", "hull", "family", "antimatroid"}));
  render->add_option("--flag-c", render_c, "needed for hull/family/antimatroid");
  render->add_option("--flag-d", render_d, "needed for hull/family/antimatroid");
  render->add_option("--out", render_o.out_path, "write output here instead of stdout");

  CLI::App* exp = app.add_subcommand("export", "write generated lattices as interchange files");
  exp->add_option("--gen", export_o.gen_spec, "generator spec");
  exp->add_option("--out", export_o.out_path, "target file");
  exp->add_option("--corpus", export_corpus_dir, "write the whole default corpus into DIR");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*check) return run_check(check_o);
    if (*hull) return run_hull(hull_o, hull_c, hull_d);
    if (*distance) return run_distance(dist_o, dist_c, dist_d, witness);
    if (*verify) return run_verify(verify_o, verify_gens, verify_files);
    if (*render) return run_render(render_o, render_what, render_c, render_d);
    if (*exp) return run_export(export_o, export_corpus_dir);
  } catch (const fh::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
