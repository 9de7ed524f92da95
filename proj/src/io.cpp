#include "flaghull/io.hpp"

#include <fstream>
#include <sstream>

namespace flaghull {
namespace {

[[noreturn]] void parse_fail(const std::string& origin, const std::string& what) {
  fail(Errc::ParseError, origin + ": " + what);
}

}  // namespace

Lattice lattice_from_json_text(const std::string& text, const std::string& origin) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    parse_fail(origin, e.what());
  }
  if (!doc.is_object()) parse_fail(origin, "top level must be an object");
  if (!doc.contains("elements")) parse_fail(origin, "missing field 'elements'");
  if (!doc["elements"].is_number_integer()) {
    parse_fail(origin, "field 'elements' must be an integer");
  }
  if (!doc.contains("covers")) parse_fail(origin, "missing field 'covers'");
  if (!doc["covers"].is_array()) parse_fail(origin, "field 'covers' must be an array");
  const int elements = doc["elements"].get<int>();
  std::vector<std::pair<ElemId, ElemId>> covers;
  std::size_t idx = 0;
  for (const auto& item : doc["covers"]) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number_integer() ||
        !item[1].is_number_integer()) {
      parse_fail(origin, "covers[" + std::to_string(idx) +
                             "] must be a [lower, upper] pair of integers");
    }
    covers.push_back({item[0].get<int>(), item[1].get<int>()});
    ++idx;
  }
  try {
    return Lattice::from_covers(covers, elements);
  } catch (const Error& e) {
    // Re-tag with the origin so a corpus run names the guilty file.
    throw Error(e.code(), origin + ": " + e.what());
  }
}

Lattice read_lattice_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::ParseError, path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return lattice_from_json_text(buf.str(), path);
}

Json lattice_to_json(const Lattice& lat) {
  Json covers = Json::array();
  for (auto [a, b] : lat.cover_pairs()) covers.push_back(Json::array({a, b}));
  return Json{{"elements", lat.size()}, {"covers", covers}};
}

void write_lattice_file(const Lattice& lat, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(Errc::ParseError, path + ": cannot open file for writing");
  out << lattice_to_json(lat).dump(2) << "\n";
}

Json family_to_json(const SetFamily& fam) {
  Json arr = Json::array();
  for (GroundMask s : fam.sets) {
    Json members = Json::array();
    for (int e = 0; e < fam.ground_size; ++e) {
      if (s & (GroundMask{1} << e)) members.push_back(e + 1);
    }
    arr.push_back(members);
  }
  return arr;
}

Json flag_to_json(const Flag& f) {
  Json arr = Json::array();
  for (ElemId e : f.elems) arr.push_back(e);
  return arr;
}

std::string render_dot_lattice(const Lattice& lat, const std::string& graph_name) {
  std::ostringstream out;
  out << "digraph " << graph_name << " {\n";
  out << "  rankdir=BT;\n";
  out << "  node [shape=circle];\n";
  for (ElemId v = 0; v < lat.size(); ++v) {
    out << "  n" << v << " [label=\"" << v << "\"];\n";
  }
  for (auto [a, b] : lat.cover_pairs()) {
    out << "  n" << a << " -> n" << b << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string render_dot_subposet(const Lattice& lat, const ElemSet& members,
                                const std::string& graph_name) {
  std::vector<ElemId> elems;
  for_each_in(members, [&](ElemId v) { elems.push_back(v); });
  std::ostringstream out;
  out << "digraph " << graph_name << " {\n";
  out << "  rankdir=BT;\n";
  out << "  node [shape=circle];\n";
  for (ElemId v : elems) out << "  n" << v << " [label=\"" << v << "\"];\n";
  for (ElemId a : elems) {
    for (ElemId b : elems) {
      if (a == b || !lat.leq(a, b)) continue;
      bool direct = true;
      for (ElemId c : elems) {
        if (c != a && c != b && lat.leq(a, c) && lat.leq(c, b)) {
          direct = false;
          break;
        }
      }
      if (direct) out << "  n" << a << " -> n" << b << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string render_dot_family(const SetFamily& fam, const std::string& graph_name) {
  std::ostringstream out;
  out << "digraph " << graph_name << " {\n";
  out << "  rankdir=BT;\n";
  out << "  node [shape=box];\n";
  for (std::size_t i = 0; i < fam.sets.size(); ++i) {
    out << "  s" << i << " [label=\"" << set_to_string(fam.sets[i], fam.ground_size)
        << "\"];\n";
  }
  for (std::size_t i = 0; i < fam.sets.size(); ++i) {
    for (std::size_t j = 0; j < fam.sets.size(); ++j) {
      if (i == j) continue;
      GroundMask a = fam.sets[i], b = fam.sets[j];
      if ((a & ~b) != 0 || a == b) continue;
      bool direct = true;
      for (std::size_t k = 0; k < fam.sets.size() && direct; ++k) {
        if (k == i || k == j) continue;
        GroundMask c = fam.sets[k];
        if ((a & ~c) == 0 && (c & ~b) == 0 && c != a && c != b) direct = false;
      }
      if (direct) out << "  s" << i << " -> s" << j << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

Json report_to_json(const VerificationReport& report) {
  Json checks = Json::array();
  for (const CheckStat& c : report.checks) {
    Json entry{{"name", c.name}, {"pass", c.pass}, {"fail", c.fail}};
    if (c.first_counterexample) {
      const Counterexample& ce = *c.first_counterexample;
      entry["first_counterexample"] = Json{
          {"flag_c", ce.flag_c}, {"flag_d", ce.flag_d}, {"detail", ce.detail}};
    }
    checks.push_back(entry);
  }
  Json out{{"lattice", report.lattice_id}, {"suite", report.suite}};
  if (report.skipped) {
    out["skipped"] = report.skip_reason;
    return out;
  }
  if (!report.error.empty() && report.checks.empty()) {
    out["error"] = report.error;
    return out;
  }
  out["elements"] = report.elements;
  out["height"] = report.height;
  out["flags"] = report.flag_count;
  out["pairs"] = report.flag_pair_count;
  out["sampled"] = report.sampled;
  if (!report.error.empty()) out["error"] = report.error;
  out["checks"] = checks;
  if (report.replay_covers) {
    Json covers = Json::array();
    for (auto [a, b] : *report.replay_covers) covers.push_back(Json::array({a, b}));
    out["replay"] = Json{{"elements", report.elements}, {"covers", covers}};
  }
  return out;
}

}  // namespace flaghull
