#pragma once

#include "torusspace/specseq.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace torusspace {

// Malformed input; the message carries file and line.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

inline long long parse_int(const std::string& t, const std::string& where) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(t, &used);
  } catch (const std::exception&) {
    throw InputError(where + ": expected an integer, got '" + t + "'");
  }
  if (used != t.size()) throw InputError(where + ": expected an integer, got '" + t + "'");
  return v;
}

inline std::vector<long long> parse_list(const std::string& t, const std::string& where) {
  std::vector<long long> out;
  if (t == "-") return out;
  std::stringstream ss(t);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(parse_int(item, where));
  return out;
}

// non-comment, non-blank lines with their 1-based numbers
inline std::vector<std::pair<int, std::string>> content_lines(std::istream& in) {
  std::vector<std::pair<int, std::string>> out;
  int no = 0;
  for (std::string line; std::getline(in, line);) {
    ++no;
    auto h = line.find('#');
    if (h != std::string::npos) line = line.substr(0, h);
    line = trim(line);
    if (!line.empty()) out.emplace_back(no, line);
  }
  return out;
}

inline std::ifstream open_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  return in;
}

}  // namespace detail

// simplicial-poset v1: "id rank v1,v2,... c1,c2,..." with "-" for an empty list
inline std::vector<CoverRow> parse_cover_table(std::istream& in, const std::string& name = "<poset>") {
  auto lines = detail::content_lines(in);
  if (lines.empty() || lines[0].second != "simplicial-poset v1")
    throw InputError(name + ": missing header 'simplicial-poset v1'");
  std::vector<CoverRow> rows;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    std::string where = name + ":" + std::to_string(lines[k].first);
    auto tok = detail::split_ws(lines[k].second);
    if (tok.size() != 4) throw InputError(where + ": expected 'id rank vertex_set covers', got " + std::to_string(tok.size()) + " fields");
    CoverRow r;
    r.id = detail::parse_int(tok[0], where);
    long long rk = detail::parse_int(tok[1], where);
    if (rk < 0 || rk > 30) throw InputError(where + ": rank out of range");
    r.rank = static_cast<int>(rk);
    for (auto v : detail::parse_list(tok[2], where)) r.vertices.push_back(static_cast<int>(v));
    r.covers = detail::parse_list(tok[3], where);
    rows.push_back(std::move(r));
  }
  return rows;
}

// facets v1: one whitespace-separated vertex list per line
inline std::vector<VertexSet> parse_facets(std::istream& in, const std::string& name = "<facets>") {
  auto lines = detail::content_lines(in);
  if (lines.empty() || lines[0].second != "facets v1") throw InputError(name + ": missing header 'facets v1'");
  std::vector<VertexSet> out;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    std::string where = name + ":" + std::to_string(lines[k].first);
    VertexSet f;
    for (const auto& t : detail::split_ws(lines[k].second)) f.push_back(static_cast<int>(detail::parse_int(t, where)));
    std::sort(f.begin(), f.end());
    if (std::adjacent_find(f.begin(), f.end()) != f.end()) throw InputError(where + ": repeated vertex in facet");
    out.push_back(std::move(f));
  }
  if (out.empty()) throw InputError(name + ": no facets");
  return out;
}

// charmap v1 n=<n>: "vertex_id: n integers"
inline CharacteristicMap parse_charmap(std::istream& in, const std::string& name = "<charmap>") {
  auto lines = detail::content_lines(in);
  if (lines.empty()) throw InputError(name + ": empty file");
  auto head = detail::split_ws(lines[0].second);
  if (head.size() != 3 || head[0] != "charmap" || head[1] != "v1" || head[2].rfind("n=", 0) != 0)
    throw InputError(name + ":" + std::to_string(lines[0].first) + ": expected header 'charmap v1 n=<n>'");
  CharacteristicMap l;
  long long n = detail::parse_int(head[2].substr(2), name + ":" + std::to_string(lines[0].first));
  if (n < 1 || n > 20) throw InputError(name + ": n out of range");
  l.n = static_cast<int>(n);
  for (std::size_t k = 1; k < lines.size(); ++k) {
    std::string where = name + ":" + std::to_string(lines[k].first);
    auto colon = lines[k].second.find(':');
    if (colon == std::string::npos) throw InputError(where + ": expected 'vertex_id: integers'");
    int v = static_cast<int>(detail::parse_int(detail::trim(lines[k].second.substr(0, colon)), where));
    auto tok = detail::split_ws(lines[k].second.substr(colon + 1));
    if (static_cast<long long>(tok.size()) != n) throw InputError(where + ": expected " + std::to_string(n) + " integers");
    if (l.rows.count(v)) throw InputError(where + ": vertex " + std::to_string(v) + " listed twice");
    for (const auto& t : tok) {
      Integer x;
      try {
        x = Integer(t);
      } catch (const std::exception&) {
        throw InputError(where + ": expected an integer, got '" + t + "'");
      }
      l.rows[v].push_back(x);
    }
  }
  return l;
}

inline ManifoldProfile parse_profile(std::istream& in, const std::string& name = "<profile>") {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw InputError(name + ": invalid JSON: " + e.what());
  }
  ManifoldProfile p;
  try {
    p.n = j.at("n").get<int>();
    p.bQ = j.at("bQ").get<std::vector<long long>>();
    p.bQrel = j.at("bQrel").get<std::vector<long long>>();
    p.rank_delta = j.at("rank_delta").get<std::vector<long long>>();
  } catch (const std::exception& e) {
    throw InputError(name + ": profile needs integer fields n, bQ, bQrel, rank_delta (" + e.what() + ")");
  }
  p.source = "user";
  return p;
}

inline std::string charmap_to_text(const CharacteristicMap& l) {
  std::string s = "charmap v1 n=" + std::to_string(l.n) + "\n";
  for (const auto& [v, r] : l.rows) {
    s += std::to_string(v) + ":";
    for (const auto& x : r) s += " " + x.str();
    s += "\n";
  }
  return s;
}

inline std::string cover_table_to_text(const SimplicialPoset& s) {
  auto list = [](const auto& v) {
    if (v.empty()) return std::string("-");
    std::string o;
    for (std::size_t i = 0; i < v.size(); ++i) o += (i ? "," : "") + std::to_string(v[i]);
    return o;
  };
  std::string out = "simplicial-poset v1\n";
  for (std::size_t x = 0; x < s.size(); ++x) {
    int xi = static_cast<int>(x);
    out += std::to_string(x) + " " + std::to_string(s.rank(xi)) + " " + list(s.vertices(xi)) + " " + list(s.covers(xi)) + "\n";
  }
  return out;
}

// Standard characteristic maps for the presets; nullopt for anything else.
inline std::optional<CharacteristicMap> standard_charmap(const std::string& preset_name, const SimplicialPoset& s) {
  int n = s.max_rank();
  std::map<int, std::vector<long long>> rows;
  auto head = preset_name.substr(0, preset_name.find('('));
  if (head == "boundary_of_simplex") {
    for (int v = 1; v <= n; ++v) {
      std::vector<long long> r(static_cast<std::size_t>(n), 0);
      r[static_cast<std::size_t>(v - 1)] = 1;
      rows[v] = r;
    }
    rows[n + 1] = std::vector<long long>(static_cast<std::size_t>(n), 1);
  } else if (head == "cross_polytope_boundary" || head == "octahedron") {
    for (int v = 1; v <= n; ++v) {
      std::vector<long long> r(static_cast<std::size_t>(n), 0);
      r[static_cast<std::size_t>(v - 1)] = 1;
      rows[v] = r;
      r[static_cast<std::size_t>(v - 1)] = -1;
      rows[v + n] = r;
    }
  } else if (head == "digon_cycle") {
    for (int v : s.vertex_labels()) rows[v] = v % 2 ? std::vector<long long>{1, 0} : std::vector<long long>{0, 1};
  } else if (head == "torus_7") {
    // valid over Q and F_3; no map is valid over F_2 (every vertex pair is an edge)
    rows = {{1, {1, 0, 0}}, {2, {0, 1, 0}}, {3, {0, 1, 1}}, {4, {0, 0, 1}}, {5, {1, 0, 1}}, {6, {1, 1, 1}}, {7, {1, 2, 0}}};
  } else {
    return std::nullopt;
  }
  return make_charmap(n, rows);
}

}  // namespace torusspace
