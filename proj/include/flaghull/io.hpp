#pragma once

#include <string>

#include "json.hpp"

#include "flaghull/family.hpp"
#include "flaghull/hull.hpp"
#include "flaghull/lattice.hpp"
#include "flaghull/verify.hpp"

namespace flaghull {

using Json = nlohmann::ordered_json;

// Lattice interchange format, a JSON document:
//   { "elements": <count>, "covers": [[lower, upper], ...] }
// Anything structurally off throws ParseError naming the file and field; cover-relation
// problems surface as the usual construction errors with the offending pair in the message.
Lattice read_lattice_file(const std::string& path);
Lattice lattice_from_json_text(const std::string& text, const std::string& origin);
Json lattice_to_json(const Lattice& lat);
void write_lattice_file(const Lattice& lat, const std::string& path);

// Families as arrays of 1-based member lists, e.g. [[], [1], [1,2]]; canonical order.
Json family_to_json(const SetFamily& fam);

Json flag_to_json(const Flag& f);

// Graph-description output (DOT). Node order and edge order are fixed, so output is
// byte-stable for a given input.
std::string render_dot_lattice(const Lattice& lat, const std::string& graph_name = "lattice");
// Hasse diagram of the order restricted to members (transitive reduction, not inherited covers).
std::string render_dot_subposet(const Lattice& lat, const ElemSet& members,
                                const std::string& graph_name);
std::string render_dot_family(const SetFamily& fam, const std::string& graph_name = "family");

Json report_to_json(const VerificationReport& report);

}  // namespace flaghull
