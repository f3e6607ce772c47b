#pragma once

#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "core.hpp"
#include "problems.hpp"
#include "reduction.hpp"

namespace srap {

struct ParseError : Error {
  ParseError(int line, int column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line(line),
        column(column) {}
  int line;
  int column;
};

struct Solution {
  std::optional<Cost> cost;
  std::vector<std::pair<int, int>> links;
};

namespace detail {

struct Token {
  std::string text;
  int column = 0;
};

struct Directive {
  int line = 0;
  std::vector<Token> tokens;
};

inline std::vector<Directive> tokenize(std::istream& in) {
  std::vector<Directive> out;
  std::string raw;
  for (int line = 1; std::getline(in, raw); ++line) {
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    Directive d{line, {}};
    for (std::size_t i = 0; i < raw.size();) {
      if (std::isspace(static_cast<unsigned char>(raw[i]))) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
      d.tokens.push_back({raw.substr(i, j - i), static_cast<int>(i) + 1});
      i = j;
    }
    if (!d.tokens.empty()) out.push_back(std::move(d));
  }
  return out;
}

class Reader {
 public:
  Reader(std::istream& in, const std::string& header) : lines_(tokenize(in)) {
    if (lines_.empty()) throw ParseError(1, 1, "empty input, expected '" + header + " 1'");
    const Directive& d = lines_[0];
    if (d.tokens[0].text != header) throw ParseError(d.line, d.tokens[0].column, "expected header '" + header + "'");
    arity(d, 1);
    if (integer(d, 1) != 1) throw ParseError(d.line, d.tokens[1].column, "unsupported format version");
  }

  const std::vector<Directive>& lines() const { return lines_; }

  static void arity(const Directive& d, std::size_t args) {
    if (d.tokens.size() != args + 1) {
      int col = d.tokens.size() > args + 1 ? d.tokens[args + 1].column : d.tokens.back().column;
      throw ParseError(d.line, col, "'" + d.tokens[0].text + "' takes " + std::to_string(args) + " argument(s)");
    }
  }
  static long long integer(const Directive& d, std::size_t idx) {
    const Token& t = d.tokens.at(idx);
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(t.text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != t.text.size() || t.text.empty()) throw ParseError(d.line, t.column, "expected an integer, got '" + t.text + "'");
    return v;
  }
  static int small(const Directive& d, std::size_t idx) {
    long long v = integer(d, idx);
    if (v < -(1LL << 30) || v > (1LL << 30)) throw ParseError(d.line, d.tokens[idx].column, "integer out of range");
    return static_cast<int>(v);
  }
  [[noreturn]] static void unknown(const Directive& d) {
    throw ParseError(d.line, d.tokens[0].column, "unknown directive '" + d.tokens[0].text + "'");
  }
  static void once(const Directive& d, bool& seen) {
    if (seen) throw ParseError(d.line, d.tokens[0].column, "repeated directive '" + d.tokens[0].text + "'");
    seen = true;
  }

 private:
  std::vector<Directive> lines_;
};

inline Link parse_link(const Directive& d) {
  Reader::arity(d, 3);
  return {Reader::small(d, 1), Reader::small(d, 2), Reader::integer(d, 3)};
}

inline std::vector<int> parse_id_list(const Directive& d) {
  if (d.tokens.size() < 2) throw ParseError(d.line, d.tokens[0].column, "missing count");
  int count = Reader::small(d, 1);
  if (count < 0 || static_cast<std::size_t>(count) + 2 != d.tokens.size())
    throw ParseError(d.line, d.tokens[1].column, "count does not match the number of ids");
  std::vector<int> ids;
  for (int i = 0; i < count; ++i) ids.push_back(Reader::small(d, 2 + i));
  return ids;
}

template <class Build>
auto with_location(const Directive& at, Build&& build) {
  try {
    return build();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(at.line, 1, e.what());
  }
}

}  // namespace detail

inline SrapInstance parse_srap(std::istream& in) {
  detail::Reader r(in, "srap");
  std::optional<int> n, m;
  std::vector<int> terminals;
  std::vector<Link> links;
  bool seen_ring = false, seen_outside = false, seen_terminals = false;
  for (std::size_t i = 1; i < r.lines().size(); ++i) {
    const auto& d = r.lines()[i];
    const std::string& key = d.tokens[0].text;
    if (key == "ring") {
      detail::Reader::once(d, seen_ring);
      detail::Reader::arity(d, 1);
      n = detail::Reader::small(d, 1);
    } else if (key == "outside") {
      detail::Reader::once(d, seen_outside);
      detail::Reader::arity(d, 1);
      m = detail::Reader::small(d, 1);
    } else if (key == "terminals") {
      detail::Reader::once(d, seen_terminals);
      terminals = detail::parse_id_list(d);
    } else if (key == "link") {
      links.push_back(detail::parse_link(d));
    } else {
      detail::Reader::unknown(d);
    }
  }
  const auto& last = r.lines().back();
  if (!n) throw ParseError(last.line, 1, "missing 'ring'");
  if (!seen_terminals) throw ParseError(last.line, 1, "missing 'terminals'");
  return detail::with_location(last, [&] { return SrapInstance(*n, m.value_or(0), terminals, links); });
}

inline ScapInstance parse_scap(std::istream& in) {
  detail::Reader r(in, "scap");
  ScapInstance s;
  bool seen_vertices = false, seen_terminals = false;
  for (std::size_t i = 1; i < r.lines().size(); ++i) {
    const auto& d = r.lines()[i];
    const std::string& key = d.tokens[0].text;
    if (key == "vertices") {
      detail::Reader::once(d, seen_vertices);
      detail::Reader::arity(d, 1);
      s.vertex_count = detail::Reader::small(d, 1);
    } else if (key == "terminals") {
      detail::Reader::once(d, seen_terminals);
      s.terminals = detail::parse_id_list(d);
    } else if (key == "edge") {
      detail::Reader::arity(d, 2);
      s.edges.emplace_back(detail::Reader::small(d, 1), detail::Reader::small(d, 2));
    } else if (key == "link") {
      s.links.push_back(detail::parse_link(d));
    } else {
      detail::Reader::unknown(d);
    }
  }
  const auto& last = r.lines().back();
  if (!seen_vertices) throw ParseError(last.line, 1, "missing 'vertices'");
  if (!seen_terminals) throw ParseError(last.line, 1, "missing 'terminals'");
  detail::with_location(last, [&] {
    validate(s);
    return 0;
  });
  return s;
}

inline SagInstance parse_sag(std::istream& in) {
  detail::Reader r(in, "sag");
  SagInstance s;
  bool seen_k = false, seen_h = false, seen_extra = false;
  for (std::size_t i = 1; i < r.lines().size(); ++i) {
    const auto& d = r.lines()[i];
    const std::string& key = d.tokens[0].text;
    if (key == "k") {
      detail::Reader::once(d, seen_k);
      detail::Reader::arity(d, 1);
      s.k = detail::Reader::small(d, 1);
    } else if (key == "h_vertices") {
      detail::Reader::once(d, seen_h);
      detail::Reader::arity(d, 1);
      s.h_vertices = detail::Reader::small(d, 1);
    } else if (key == "extra_vertices") {
      detail::Reader::once(d, seen_extra);
      detail::Reader::arity(d, 1);
      s.extra_vertices = detail::Reader::small(d, 1);
    } else if (key == "edge") {
      detail::Reader::arity(d, 2);
      s.edges.emplace_back(detail::Reader::small(d, 1), detail::Reader::small(d, 2));
    } else if (key == "link") {
      s.links.push_back(detail::parse_link(d));
    } else {
      detail::Reader::unknown(d);
    }
  }
  const auto& last = r.lines().back();
  if (!seen_k) throw ParseError(last.line, 1, "missing 'k'");
  if (!seen_h) throw ParseError(last.line, 1, "missing 'h_vertices'");
  detail::with_location(last, [&] {
    validate(s);
    return 0;
  });
  return s;
}

inline Solution parse_solution(std::istream& in) {
  detail::Reader r(in, "solution");
  Solution sol;
  bool seen_cost = false;
  for (std::size_t i = 1; i < r.lines().size(); ++i) {
    const auto& d = r.lines()[i];
    const std::string& key = d.tokens[0].text;
    if (key == "cost") {
      detail::Reader::once(d, seen_cost);
      detail::Reader::arity(d, 1);
      sol.cost = detail::Reader::integer(d, 1);
    } else if (key == "link") {
      detail::Reader::arity(d, 2);
      sol.links.emplace_back(detail::Reader::small(d, 1), detail::Reader::small(d, 2));
    } else {
      detail::Reader::unknown(d);
    }
  }
  return sol;
}

inline LiftData parse_lift(std::istream& in) {
  detail::Reader r(in, "lift");
  LiftData lift;
  bool seen_kind = false, seen_k = false;
  for (std::size_t i = 1; i < r.lines().size(); ++i) {
    const auto& d = r.lines()[i];
    const std::string& key = d.tokens[0].text;
    if (key == "kind") {
      detail::Reader::once(d, seen_kind);
      detail::Reader::arity(d, 1);
      const std::string& v = d.tokens[1].text;
      if (v != "scap" && v != "sag") throw ParseError(d.line, d.tokens[1].column, "kind must be scap or sag");
      lift.kind = v == "scap" ? LiftKind::scap : LiftKind::sag;
    } else if (key == "k") {
      detail::Reader::once(d, seen_k);
      detail::Reader::arity(d, 1);
      lift.k = detail::Reader::small(d, 1);
    } else if (key == "origin") {
      detail::Reader::arity(d, 1);
      lift.origin.push_back(detail::Reader::small(d, 1));
    } else {
      detail::Reader::unknown(d);
    }
  }
  return lift;
}

template <class Parse>
auto parse_string(const std::string& text, Parse parse) {
  std::istringstream in(text);
  return parse(in);
}

inline std::string serialize(const SrapInstance& inst) {
  std::ostringstream out;
  out << "srap 1\nring " << inst.ring_size() << "\noutside " << inst.outside_count() << "\nterminals "
      << inst.terminals().size();
  for (int t : inst.terminals()) out << ' ' << t;
  out << '\n';
  for (const Link& l : inst.links()) out << "link " << l.u << ' ' << l.v << ' ' << l.cost << '\n';
  return out.str();
}

inline std::string serialize(const ScapInstance& s) {
  std::ostringstream out;
  out << "scap 1\nvertices " << s.vertex_count << "\nterminals " << s.terminals.size();
  for (int t : s.terminals) out << ' ' << t;
  out << '\n';
  for (auto [a, b] : s.edges) out << "edge " << a << ' ' << b << '\n';
  for (const Link& l : s.links) out << "link " << l.u << ' ' << l.v << ' ' << l.cost << '\n';
  return out.str();
}

inline std::string serialize(const SagInstance& s) {
  std::ostringstream out;
  out << "sag 1\nk " << s.k << "\nh_vertices " << s.h_vertices << "\nextra_vertices " << s.extra_vertices << '\n';
  for (auto [a, b] : s.edges) out << "edge " << a << ' ' << b << '\n';
  for (const Link& l : s.links) out << "link " << l.u << ' ' << l.v << ' ' << l.cost << '\n';
  return out.str();
}

inline std::string serialize_solution(const std::vector<Link>& links, const std::vector<int>& chosen) {
  std::ostringstream out;
  out << "solution 1\ncost " << links_cost(links, chosen) << '\n';
  for (int id : chosen) out << "link " << links[id].u << ' ' << links[id].v << '\n';
  return out.str();
}

inline std::string serialize(const LiftData& lift) {
  std::ostringstream out;
  out << "lift 1\nkind " << (lift.kind == LiftKind::scap ? "scap" : "sag") << "\nk " << lift.k << '\n';
  for (int o : lift.origin) out << "origin " << o << '\n';
  return out.str();
}

// Link indices named by a solution; every pair must be a link of the instance.
inline std::vector<int> resolve_solution(const std::vector<Link>& links, const Solution& sol) {
  std::map<std::pair<int, int>, int> index;
  for (int i = 0; i < static_cast<int>(links.size()); ++i) index[std::minmax(links[i].u, links[i].v)] = i;
  std::vector<int> out;
  for (auto [a, b] : sol.links) {
    auto it = index.find(std::minmax(a, b));
    if (it == index.end()) throw Error("solution names a non-link {" + std::to_string(a) + "," + std::to_string(b) + "}");
    out.push_back(it->second);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (sol.cost && *sol.cost != links_cost(links, out)) throw Error("solution cost does not match its links");
  return out;
}

}  // namespace srap
