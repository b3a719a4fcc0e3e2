#pragma once

// Text and JSON formats: triangulation files, group tables, cocycle files,
// and the JSON documents the command-line tool emits.

#include "dw/cochain.hpp"
#include "dw/group.hpp"
#include "dw/pachner.hpp"
#include "dw/statesum.hpp"
#include "dw/triangulation.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace dw {

using json = nlohmann::json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("FileNotFound", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace detail {

inline Error syntax_error(std::size_t line, std::size_t column, const std::string& what) {
  return Error("SyntaxError", "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what);
}

struct Token {
  std::string text;
  std::size_t column;
};

inline std::vector<Token> tokenize_line(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && line[i] != '#' && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({std::string(line.substr(start, i - start)), start + 1});
  }
  return out;
}

inline std::uint64_t parse_index(const Token& tok, std::size_t line) {
  if (tok.text.empty() || tok.text.size() > 9 ||
      !std::all_of(tok.text.begin(), tok.text.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw syntax_error(line, tok.column, "expected a non-negative integer, got '" + tok.text + "'");
  return std::stoull(tok.text);
}

inline Triangulation triangulation_from_json(const json& j) {
  if (!j.is_object() || !j.contains("tets") || !j["tets"].is_array())
    throw Error("SyntaxError", "JSON triangulation needs a \"tets\" array");
  if (j.contains("dim") && j["dim"] != 3) throw Error("SyntaxError", "only dim 3 is supported");
  std::vector<Tet> tets;
  std::size_t max_vertex = 0;
  for (const auto& t : j["tets"]) {
    if (!t.is_array() || t.size() != 4) throw Error("SyntaxError", "each tet must be an array of 4 vertex indices");
    Tet tet{};
    for (std::size_t i = 0; i < 4; ++i) {
      if (!t[i].is_number_unsigned()) throw Error("SyntaxError", "vertex indices must be non-negative integers");
      tet[i] = t[i].get<Vertex>();
      max_vertex = std::max<std::size_t>(max_vertex, tet[i]);
    }
    tets.push_back(tet);
  }
  std::size_t a = max_vertex + 1;
  if (j.contains("vertices")) {
    if (!j["vertices"].is_number_unsigned()) throw Error("SyntaxError", "\"vertices\" must be a non-negative integer");
    a = j["vertices"].get<std::size_t>();
  }
  return Triangulation::from_tets(a, std::move(tets));
}

}  // namespace detail

/// Parses the text format
///
///     dim 3
///     vertices <a>
///     tet v0 v1 v2 v3      (one line per tetrahedron, 0-based)
///
/// with `#` comments and free whitespace, or a JSON object with "tets"
/// (and optionally "vertices"). The result is fully validated.
inline Triangulation parse_triangulation(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw Error("SyntaxError", e.what());
    }
    return detail::triangulation_from_json(j);
  }

  enum class Expect { Dim, Vertices, Tets } state = Expect::Dim;
  std::size_t vertex_count = 0;
  std::vector<Tet> tets;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const auto toks = detail::tokenize_line(line);
    if (toks.empty()) continue;
    const detail::Token& head = toks[0];
    switch (state) {
      case Expect::Dim:
        if (head.text != "dim") throw detail::syntax_error(line_no, head.column, "expected 'dim 3'");
        if (toks.size() != 2) throw detail::syntax_error(line_no, head.column, "'dim' takes one argument");
        if (detail::parse_index(toks[1], line_no) != 3)
          throw detail::syntax_error(line_no, toks[1].column, "only dim 3 is supported");
        state = Expect::Vertices;
        break;
      case Expect::Vertices:
        if (head.text != "vertices") throw detail::syntax_error(line_no, head.column, "expected 'vertices <a>'");
        if (toks.size() != 2) throw detail::syntax_error(line_no, head.column, "'vertices' takes one argument");
        vertex_count = detail::parse_index(toks[1], line_no);
        state = Expect::Tets;
        break;
      case Expect::Tets: {
        if (head.text != "tet") throw detail::syntax_error(line_no, head.column, "expected 'tet v0 v1 v2 v3'");
        if (toks.size() != 5)
          throw detail::syntax_error(line_no, head.column, "'tet' takes exactly four vertex indices");
        Tet tet{};
        for (std::size_t i = 0; i < 4; ++i) {
          const auto v = detail::parse_index(toks[i + 1], line_no);
          if (v >= vertex_count)
            throw detail::syntax_error(line_no, toks[i + 1].column,
                                       "vertex " + std::to_string(v) + " out of range for " +
                                           std::to_string(vertex_count) + " vertices");
          tet[i] = static_cast<Vertex>(v);
        }
        tets.push_back(tet);
        break;
      }
    }
  }
  if (state == Expect::Dim) throw detail::syntax_error(line_no, 1, "missing 'dim 3' header");
  if (state == Expect::Vertices) throw detail::syntax_error(line_no, 1, "missing 'vertices' line");
  return Triangulation::from_tets(vertex_count, std::move(tets));
}

inline Triangulation load_triangulation(const std::string& path) { return parse_triangulation(read_file(path)); }

// ---- groups ----

inline json group_to_json(const FiniteGroup& g) {
  return {{"order", g.order()}, {"table", g.table()}, {"names", g.names()}};
}

inline FiniteGroup group_from_json(const json& j) {
  if (j.is_string()) {
    if (auto g = builtin_group(j.get<std::string>())) return *g;
    throw Error("InvalidGroup", "unknown built-in group '" + j.get<std::string>() + "'");
  }
  if (!j.is_object() || !j.contains("table")) throw Error("InvalidGroup", "group JSON needs a \"table\"");
  std::vector<std::vector<Element>> table;
  try {
    table = j["table"].get<std::vector<std::vector<Element>>>();
  } catch (const json::exception& e) {
    throw Error("InvalidTable", std::string("table must be a square array of indices: ") + e.what());
  }
  if (j.contains("order") && j["order"] != table.size())
    throw Error("InvalidTable", "\"order\" disagrees with the table size");
  std::vector<std::string> names;
  if (j.contains("names")) names = j["names"].get<std::vector<std::string>>();
  return FiniteGroup::from_table(table, std::move(names));
}

/// "Z<n>", "S3", or a path to a group JSON file.
inline FiniteGroup resolve_group(const std::string& spec) {
  if (auto g = builtin_group(spec)) return *g;
  json j;
  try {
    j = json::parse(read_file(spec));
  } catch (const json::parse_error& e) {
    throw Error("SyntaxError", spec + ": " + e.what());
  }
  return group_from_json(j);
}

// ---- cocycles ----

inline json cochain_to_json(const Cochain& c) {
  return {{"group", group_to_json(c.group())},
          {"modulus", c.modulus()},
          {"degree", c.degree()},
          {"values", c.values()}};
}

inline Cochain cochain_from_json(const json& j) {
  for (const char* key : {"group", "modulus", "degree", "values"})
    if (!j.contains(key)) throw Error("InvalidCochain", std::string("cocycle JSON is missing \"") + key + "\"");
  try {
    return Cochain(group_from_json(j["group"]), j["modulus"].get<std::size_t>(), j["degree"].get<std::size_t>(),
                   j["values"].get<std::vector<Residue>>());
  } catch (const json::exception& e) {
    throw Error("InvalidCochain", e.what());
  }
}

/// Catalog names "trivial", "carry:n:p", "product:Z2", or a path to a
/// cocycle JSON file. `modulus` of 0 means "the natural one": |G| for the
/// trivial cocycle, n for carry:n:p, 2 for product:Z2.
inline Cochain resolve_cocycle(const std::string& spec, const FiniteGroup& g, std::size_t modulus = 0) {
  auto require_modulus = [&](std::size_t natural) {
    if (modulus != 0 && modulus != natural)
      throw Error("GroupMismatch", "cocycle '" + spec + "' has coefficients mod " + std::to_string(natural) +
                                       ", not mod " + std::to_string(modulus));
  };
  if (spec == "trivial") return trivial_cochain(g, modulus ? modulus : g.order(), 3);
  if (spec == "product:Z2") {
    if (as_cyclic(g) != std::optional<std::size_t>(2))
      throw Error("GroupMismatch", "product:Z2 is defined on Z2 only");
    require_modulus(2);
    return product_z2_cocycle();
  }
  if (spec.rfind("carry:", 0) == 0) {
    const auto colon = spec.find(':', 6);
    std::size_t n = 0;
    long long p = 0;
    try {
      if (colon == std::string::npos) throw std::invalid_argument("missing p");
      std::size_t used = 0;
      n = std::stoul(spec.substr(6, colon - 6), &used);
      if (used != colon - 6) throw std::invalid_argument("n");
      const std::string ps = spec.substr(colon + 1);
      p = std::stoll(ps, &used);
      if (used != ps.size()) throw std::invalid_argument("p");
    } catch (const std::exception&) {
      throw Error("InvalidCochain", "expected carry:<n>:<p>, got '" + spec + "'");
    }
    if (n == 0) throw Error("InvalidCochain", "carry cocycle needs n >= 1");
    if (as_cyclic(g) != std::optional<std::size_t>(n))
      throw Error("GroupMismatch", "carry:" + std::to_string(n) + ":p is defined on Z" + std::to_string(n) + " only");
    require_modulus(n);
    return carry_cocycle(n, p);
  }
  json j;
  try {
    j = json::parse(read_file(spec));
  } catch (const json::parse_error& e) {
    throw Error("SyntaxError", spec + ": " + e.what());
  }
  Cochain c = cochain_from_json(j);
  if (!(c.group() == g)) throw Error("GroupMismatch", "cocycle file is over a different group");
  require_modulus(c.modulus());
  return c;
}

// ---- results ----

inline json rationals_to_json(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& r : v) a.push_back(to_string(r));
  return a;
}

inline json integer_to_json(const Integer& n) {
  if (n >= 0 && n <= Integer(std::numeric_limits<std::uint64_t>::max())) return n.convert_to<std::uint64_t>();
  return n.str();
}

inline json complex_to_json(std::complex<double> z) {
  auto clean = [](double x) { return std::abs(x) < 1e-12 ? 0.0 : x; };
  return json::array({clean(z.real()), clean(z.imag())});
}

inline json invariant_to_json(const InvariantValue& v) {
  return {{"z_cyclotomic", rationals_to_json(v.z.coefficients())},
          {"modulus", v.z.modulus()},
          {"z_complex_approx", complex_to_json(v.z.to_complex())},
          {"colorings", integer_to_json(v.coloring_count)},
          {"vertices", v.vertex_count},
          {"group_order", v.group_order}};
}

inline json site_to_json(const MoveSite& s) {
  return {{"kind", std::string(to_string(s.kind))}, {"center", s.center}, {"tets", s.tets}};
}

inline json fuzz_report_to_json(const FuzzReport& r) {
  json trace = json::array();
  for (const auto& s : r.trace)
    trace.push_back({{"step", s.step},
                     {"move", site_to_json(s.site)},
                     {"vertices", s.vertices},
                     {"tets", s.tets},
                     {"equal", s.equal}});
  json out = {{"status", r.pass ? "PASS" : "FAIL"},
              {"seed", r.seed},
              {"moves", r.moves_requested},
              {"moves_applied", r.trace.size()},
              {"reference", {{"z_cyclotomic", rationals_to_json(r.reference.coefficients())},
                             {"modulus", r.reference.modulus()},
                             {"z_complex_approx", complex_to_json(r.reference.to_complex())}}},
              {"trace", trace}};
  if (r.failure) {
    const auto& f = *r.failure;
    out["failure"] = {{"step", f.step},
                      {"move", site_to_json(f.site)},
                      {"before", f.before},
                      {"after", f.after},
                      {"z_before", rationals_to_json(f.z_before.coefficients())},
                      {"z_after", rationals_to_json(f.z_after.coefficients())}};
  }
  return out;
}

}  // namespace dw
