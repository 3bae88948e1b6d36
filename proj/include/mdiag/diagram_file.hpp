#pragma once

// Plain-text diagram lists:
//
//   # comment
//   system A4
//   mode binary            (optional; default counting)
//   diagram d1 = [0,1,0,1]

#include <cctype>
#include <charconv>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mdiag/error.hpp"
#include "mdiag/marked_diagram.hpp"
#include "mdiag/root_system.hpp"

namespace mdiag {

struct NamedDiagram {
  std::string name;
  MarkedDiagram diagram;
};

struct DiagramFile {
  RootSystemPtr system;
  DiagramMode mode = DiagramMode::counting;
  std::vector<NamedDiagram> entries;

  std::vector<MarkedDiagram> diagrams() const {
    std::vector<MarkedDiagram> out;
    for (const auto& e : entries) out.push_back(e.diagram);
    return out;
  }
  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& e : entries) out.push_back(e.name);
    return out;
  }
};

namespace detail {

inline std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline bool valid_name(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-' && c != '.') return false;
  }
  return true;
}

/// Splits off the first whitespace-delimited word.
inline std::pair<std::string_view, std::string_view> first_word(std::string_view s) {
  s = strip(s);
  std::size_t k = 0;
  while (k < s.size() && !std::isspace(static_cast<unsigned char>(s[k]))) ++k;
  return {s.substr(0, k), strip(s.substr(k))};
}

inline std::vector<Coeff> parse_entries(std::string_view s, int line) {
  s = strip(s);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') throw ParseError(line, "expected [k1,...,kr]");
  s = s.substr(1, s.size() - 2);
  std::vector<Coeff> out;
  if (strip(s).empty()) return out;
  for (;;) {
    const auto comma = s.find(',');
    const auto tok = strip(s.substr(0, comma));
    Coeff v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw ParseError(line, "malformed integer '" + std::string(tok) + "'");
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace detail

inline DiagramFile parse_diagram_file(std::string_view text) {
  DiagramFile f;
  std::set<std::string> seen;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  bool mode_allowed = true;
  while (std::getline(in, raw)) {
    ++line;
    const auto s = detail::strip(raw);
    if (s.empty() || s.front() == '#') continue;
    const auto [kw, rest] = detail::first_word(s);
    if (!f.system) {
      if (kw != "system") throw ParseError(line, "expected 'system <TYPE><rank>'");
      try {
        f.system = build_root_system(rest);
      } catch (const Error& e) {
        throw ParseError(line, e.what());
      }
      continue;
    }
    if (kw == "mode") {
      if (!mode_allowed) throw ParseError(line, "'mode' must precede the diagrams");
      if (rest == "binary") {
        f.mode = DiagramMode::binary;
      } else if (rest == "counting") {
        f.mode = DiagramMode::counting;
      } else {
        throw ParseError(line, "unknown mode '" + std::string(rest) + "'");
      }
      mode_allowed = false;
      continue;
    }
    if (kw != "diagram") throw ParseError(line, "expected 'diagram <name> = [...]'");
    mode_allowed = false;
    const auto eq = rest.find('=');
    if (eq == std::string_view::npos) throw ParseError(line, "missing '='");
    const std::string name(detail::strip(rest.substr(0, eq)));
    if (!detail::valid_name(name)) throw ParseError(line, "invalid diagram name '" + name + "'");
    if (!seen.insert(name).second) throw ParseError(line, "duplicate diagram name '" + name + "'");
    auto coeffs = detail::parse_entries(rest.substr(eq + 1), line);
    if (coeffs.size() != static_cast<std::size_t>(f.system->rank())) {
      throw ParseError(line, "rank mismatch: " + std::to_string(coeffs.size()) + " entries for " + f.system->label());
    }
    try {
      f.entries.push_back({name, MarkedDiagram(f.system, std::move(coeffs), f.mode)});
    } catch (const Error& e) {
      throw ParseError(line, e.what());
    }
  }
  if (!f.system) throw ParseError(line == 0 ? 1 : line, "missing 'system' line");
  return f;
}

inline std::string emit_diagram_file(const DiagramFile& f) {
  std::string out = "system " + f.system->label() + "\n";
  if (f.mode == DiagramMode::binary) out += "mode binary\n";
  for (const auto& e : f.entries) out += "diagram " + e.name + " = " + e.diagram.str() + "\n";
  return out;
}

}  // namespace mdiag
