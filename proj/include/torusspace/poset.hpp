#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace torusspace {

using VertexSet = std::vector<int>;

class PosetError : public std::runtime_error {
 public:
  explicit PosetError(const std::vector<std::string>& problems)
      : std::runtime_error(join(problems)), problems_(problems) {}
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& p : v) s += (s.empty() ? "" : "; ") + p;
    return s;
  }
  std::vector<std::string> problems_;
};

struct CoverRow {
  long long id = 0;
  int rank = 0;
  VertexSet vertices;
  std::vector<long long> covers;
};

struct PosetDiagnostics {
  bool valid = true;
  bool pure = true;
  int dim = -1;
  std::size_t maximal_count = 0;
  std::vector<std::string> errors;
};

struct SubposetMask {
  std::vector<bool> member;
  bool closed_downward = false;
  std::size_t count() const { return static_cast<std::size_t>(std::count(member.begin(), member.end(), true)); }
};

inline std::string format_set(const VertexSet& v) {
  if (v.empty()) return "{}";
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

namespace detail {

inline std::vector<std::string> check_cover_rows(const std::vector<CoverRow>& rows) {
  std::vector<std::string> err;
  std::map<long long, std::size_t> at;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (!at.emplace(rows[k].id, k).second) err.push_back("duplicate id " + std::to_string(rows[k].id));
  }
  if (!err.empty()) return err;

  auto empty_it = at.find(0);
  if (empty_it == at.end() || rows[empty_it->second].rank != 0 || !rows[empty_it->second].vertices.empty())
    err.push_back("missing minimal element: id 0 must have rank 0 and empty vertex set");
  std::map<int, long long> atom_label;
  for (const auto& r : rows) {
    std::string where = "element " + std::to_string(r.id);
    if (r.rank < 0) err.push_back(where + ": negative rank");
    if (r.rank == 0 && r.id != 0) err.push_back(where + ": second element of rank 0");
    VertexSet v = r.vertices;
    std::sort(v.begin(), v.end());
    if (std::adjacent_find(v.begin(), v.end()) != v.end()) err.push_back(where + ": repeated vertex");
    if (static_cast<int>(v.size()) != r.rank) err.push_back(where + ": |vertex_set| != rank");
    if (r.rank == 1 && v.size() == 1) {
      auto [it, fresh] = atom_label.emplace(v[0], r.id);
      if (!fresh) err.push_back(where + ": vertex label " + std::to_string(v[0]) + " already used by element " + std::to_string(it->second));
    }
    if (static_cast<int>(r.covers.size()) != r.rank)
      err.push_back(where + ": covers " + std::to_string(r.covers.size()) + " elements, expected " + std::to_string(r.rank) + " (lower interval not boolean)");
    std::set<VertexSet> seen;
    for (auto c : r.covers) {
      auto it = at.find(c);
      if (it == at.end()) {
        err.push_back(where + ": covers unknown id " + std::to_string(c));
        continue;
      }
      const auto& lo = rows[it->second];
      VertexSet lv = lo.vertices;
      std::sort(lv.begin(), lv.end());
      if (lo.rank != r.rank - 1 || !std::includes(v.begin(), v.end(), lv.begin(), lv.end()))
        err.push_back(where + ": non-graded cover of " + std::to_string(c));
      if (!seen.insert(lv).second) err.push_back(where + ": two covered elements share vertex set " + format_set(lv));
    }
  }
  return err;
}

}  // namespace detail

class SimplicialPoset {
 public:
  SimplicialPoset() = default;

  static SimplicialPoset from_facets(const std::vector<VertexSet>& facets) {
    if (facets.empty()) throw PosetError({"facet list is empty"});
    std::set<VertexSet> faces;
    for (std::size_t k = 0; k < facets.size(); ++k) {
      VertexSet f = facets[k];
      std::sort(f.begin(), f.end());
      if (f.empty()) throw PosetError({"facet " + std::to_string(k) + " is empty"});
      if (std::adjacent_find(f.begin(), f.end()) != f.end())
        throw PosetError({"facet " + std::to_string(k) + " repeats a vertex"});
      if (f.size() > 20) throw PosetError({"facet " + std::to_string(k) + " too large"});
      for (std::uint32_t mask = 0; mask < (1u << f.size()); ++mask) {
        VertexSet s;
        for (std::size_t i = 0; i < f.size(); ++i)
          if (mask >> i & 1u) s.push_back(f[i]);
        faces.insert(std::move(s));
      }
    }
    std::vector<VertexSet> ordered(faces.begin(), faces.end());
    std::stable_sort(ordered.begin(), ordered.end(), [](const VertexSet& a, const VertexSet& b) { return a.size() < b.size(); });
    std::map<VertexSet, long long> id;
    for (std::size_t k = 0; k < ordered.size(); ++k) id[ordered[k]] = static_cast<long long>(k);
    std::vector<CoverRow> rows;
    for (std::size_t k = 0; k < ordered.size(); ++k) {
      CoverRow r{static_cast<long long>(k), static_cast<int>(ordered[k].size()), ordered[k], {}};
      for (std::size_t i = 0; i < ordered[k].size(); ++i) {
        VertexSet s = ordered[k];
        s.erase(s.begin() + static_cast<long>(i));
        r.covers.push_back(id.at(s));
      }
      rows.push_back(std::move(r));
    }
    return from_cover_table(rows);
  }

  // Ids are reassigned densely, ordered by (rank, vertex set, input id).
  static SimplicialPoset from_cover_table(const std::vector<CoverRow>& rows) {
    auto err = detail::check_cover_rows(rows);
    if (!err.empty()) throw PosetError(err);

    std::vector<std::size_t> order(rows.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::vector<VertexSet> sorted_vs(rows.size());
    for (std::size_t k = 0; k < rows.size(); ++k) {
      sorted_vs[k] = rows[k].vertices;
      std::sort(sorted_vs[k].begin(), sorted_vs[k].end());
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (rows[a].rank != rows[b].rank) return rows[a].rank < rows[b].rank;
      if (sorted_vs[a] != sorted_vs[b]) return sorted_vs[a] < sorted_vs[b];
      return rows[a].id < rows[b].id;
    });
    std::map<long long, int> dense;
    for (std::size_t k = 0; k < order.size(); ++k) dense[rows[order[k]].id] = static_cast<int>(k);

    SimplicialPoset s;
    s.rank_.resize(rows.size());
    s.vertices_.resize(rows.size());
    s.covers_.resize(rows.size());
    s.covered_by_.resize(rows.size());
    s.source_id_.resize(rows.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
      const auto& r = rows[order[k]];
      s.rank_[k] = r.rank;
      s.vertices_[k] = sorted_vs[order[k]];
      s.source_id_[k] = r.id;
      for (auto c : r.covers) s.covers_[k].push_back(dense.at(c));
      std::sort(s.covers_[k].begin(), s.covers_[k].end());
    }
    s.finalize();
    return s;
  }

  std::size_t size() const { return rank_.size(); }
  int rank(int x) const { return rank_.at(x); }
  int dim_of(int x) const { return rank_.at(x) - 1; }
  const VertexSet& vertices(int x) const { return vertices_.at(x); }
  const std::vector<int>& covers(int x) const { return covers_.at(x); }
  const std::vector<int>& covered_by(int x) const { return covered_by_.at(x); }
  long long source_id(int x) const { return source_id_.at(x); }
  int max_rank() const { return static_cast<int>(by_rank_.size()) - 1; }
  int dim() const { return max_rank() - 1; }
  const std::vector<int>& of_rank(int r) const {
    static const std::vector<int> none;
    return (r >= 0 && r < static_cast<int>(by_rank_.size())) ? by_rank_[r] : none;
  }
  const std::vector<int>& vertex_labels() const { return labels_; }
  int atom(int label) const {
    auto it = atom_of_.find(label);
    return it == atom_of_.end() ? -1 : it->second;
  }

  std::vector<int> maximal_elements() const {
    std::vector<int> m;
    for (std::size_t x = 0; x < size(); ++x)
      if (covered_by_[x].empty()) m.push_back(static_cast<int>(x));
    return m;
  }
  bool is_pure() const {
    for (int m : maximal_elements())
      if (rank_[m] != max_rank()) return false;
    return true;
  }

  // The element below `top` with the given vertex set, or -1.
  int face_of(int top, const VertexSet& subset) const {
    const auto& v = vertices_.at(top);
    std::uint32_t mask = 0;
    for (int w : subset) {
      auto it = std::lower_bound(v.begin(), v.end(), w);
      if (it == v.end() || *it != w) return -1;
      mask |= 1u << (it - v.begin());
    }
    return lower_[top][mask];
  }

  bool leq(int a, int b) const {
    if (rank_.at(a) > rank_.at(b)) return false;
    return face_of(b, vertices_[a]) == a;
  }

  // all elements >= x, ascending id
  std::vector<int> upper_set(int x) const {
    std::vector<bool> seen(size(), false);
    std::vector<int> stack{x}, out;
    seen[x] = true;
    while (!stack.empty()) {
      int y = stack.back();
      stack.pop_back();
      out.push_back(y);
      for (int z : covered_by_[y])
        if (!seen[z]) { seen[z] = true; stack.push_back(z); }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // every lower interval of size 2^rank, the square condition, graded covers
  PosetDiagnostics validate() const {
    PosetDiagnostics d;
    for (std::size_t x = 0; x < size(); ++x) {
      int r = rank_[x];
      std::set<VertexSet> below;
      for (int y : lower_[x]) {
        if (y < 0) { d.errors.push_back("element " + std::to_string(x) + ": lower interval has a hole"); break; }
        below.insert(vertices_[y]);
      }
      if (below.size() != (std::size_t{1} << r))
        d.errors.push_back("element " + std::to_string(x) + ": lower interval is not boolean");
      for (int c : covers_[x])
        if (rank_[c] != r - 1) d.errors.push_back("element " + std::to_string(x) + ": non-graded cover");
      // I <2 J: exactly two intermediates
      for (int c : covers_[x])
        for (int cc : covers_[c]) {
          int mids = 0;
          for (int m : covers_[x])
            if (std::find(covers_[m].begin(), covers_[m].end(), cc) != covers_[m].end()) ++mids;
          if (mids != 2)
            d.errors.push_back("interval [" + std::to_string(cc) + "," + std::to_string(x) + "] has " + std::to_string(mids) + " intermediate elements");
        }
    }
    if (size() == 0 || rank_[0] != 0 || !vertices_[0].empty()) d.errors.push_back("missing minimal element");
    d.valid = d.errors.empty();
    d.pure = is_pure();
    d.dim = dim();
    d.maximal_count = maximal_elements().size();
    return d;
  }

 private:
  void finalize() {
    const std::size_t n = size();
    int top = 0;
    for (std::size_t x = 0; x < n; ++x) top = std::max(top, rank_[x]);
    by_rank_.assign(top + 1, {});
    for (std::size_t x = 0; x < n; ++x) {
      by_rank_[rank_[x]].push_back(static_cast<int>(x));
      for (int c : covers_[x]) covered_by_[c].push_back(static_cast<int>(x));
      if (rank_[x] == 1) {
        atom_of_[vertices_[x][0]] = static_cast<int>(x);
        labels_.push_back(vertices_[x][0]);
      }
    }
    std::sort(labels_.begin(), labels_.end());
    for (auto& v : covered_by_) std::sort(v.begin(), v.end());

    // lower_[x][mask]: element below x with vertex positions `mask`
    lower_.assign(n, {});
    std::vector<std::string> err;
    for (std::size_t x = 0; x < n; ++x) {  // ids are rank-sorted
      int r = rank_[x];
      lower_[x].assign(std::size_t{1} << r, -1);
      lower_[x][(1u << r) - 1] = static_cast<int>(x);
      for (int c : covers_[x]) {
        const auto& vx = vertices_[x];
        const auto& vc = vertices_[c];
        int p = 0;
        while (p < static_cast<int>(vc.size()) && vc[p] == vx[p]) ++p;  // missing position
        for (std::uint32_t cm = 0; cm < lower_[c].size(); ++cm) {
          std::uint32_t low = cm & ((1u << p) - 1);
          std::uint32_t high = (cm >> p) << (p + 1);
          std::uint32_t xm = low | high;
          int y = lower_[c][cm];
          if (lower_[x][xm] == -1) lower_[x][xm] = y;
          else if (lower_[x][xm] != y)
            err.push_back("element " + std::to_string(source_id_[x]) + ": lower interval not boolean (two faces with vertex set " + format_set(vertices_[y]) + ")");
        }
      }
      for (int y : lower_[x])
        if (y == -1) {
          err.push_back("element " + std::to_string(source_id_[x]) + ": lower interval not boolean");
          break;
        }
    }
    if (!err.empty()) throw PosetError(err);
  }

  std::vector<int> rank_;
  std::vector<VertexSet> vertices_;
  std::vector<std::vector<int>> covers_, covered_by_, by_rank_, lower_;
  std::vector<long long> source_id_;
  std::map<int, int> atom_of_;
  std::vector<int> labels_;
};

inline PosetDiagnostics validate(const SimplicialPoset& s) { return s.validate(); }

inline PosetDiagnostics validate_cover_table(const std::vector<CoverRow>& rows) {
  PosetDiagnostics d;
  d.errors = detail::check_cover_rows(rows);
  if (d.errors.empty()) {
    try {
      return SimplicialPoset::from_cover_table(rows).validate();
    } catch (const PosetError& e) {
      d.errors = e.problems();
    }
  }
  d.valid = false;
  return d;
}

// [J:I] for I <1 J. Sign is (-1)^{#{w in J : w > v}} with v the added vertex,
// so adding the largest vertex gives +1.
inline int incidence_number(const SimplicialPoset& s, int j, int i) {
  const auto& c = s.covers(j);
  if (!std::binary_search(c.begin(), c.end(), i))
    throw std::invalid_argument("incidence_number: " + std::to_string(i) + " is not covered by " + std::to_string(j));
  const auto& vj = s.vertices(j);
  const auto& vi = s.vertices(i);
  std::size_t p = 0;
  while (p < vi.size() && vi[p] == vj[p]) ++p;
  std::size_t greater = vj.size() - 1 - p;
  return greater % 2 == 0 ? 1 : -1;
}

// {J >= I} regraded, atoms of the link labelled by their id in S.
// source_id of a link element is its id in S, except the base which is 0.
inline SimplicialPoset link(const SimplicialPoset& s, int i) {
  auto up = s.upper_set(i);
  std::vector<bool> in(s.size(), false);
  for (int x : up) in[x] = true;
  const auto& vi = s.vertices(i);
  std::vector<CoverRow> rows;
  for (int x : up) {
    CoverRow r;
    r.id = x == i ? 0 : x;  // only the base can be 0 in S
    r.rank = s.rank(x) - s.rank(i);
    for (int v : s.vertices(x)) {
      if (std::binary_search(vi.begin(), vi.end(), v)) continue;
      VertexSet w = vi;
      w.insert(std::upper_bound(w.begin(), w.end(), v), v);
      r.vertices.push_back(s.face_of(x, w));
    }
    std::sort(r.vertices.begin(), r.vertices.end());
    for (int c : s.covers(x))
      if (in[c]) r.covers.push_back(c == i ? 0 : c);
    rows.push_back(std::move(r));
  }
  return SimplicialPoset::from_cover_table(rows);
}

// id in S of a link element (inverse of the relabelling in link())
inline int link_origin(const SimplicialPoset& lk, int x, int base) {
  long long src = lk.source_id(x);
  return src == 0 ? base : static_cast<int>(src);
}

inline SubposetMask complement_of_link(const SimplicialPoset& s, int j) {
  if (j == 0) throw std::invalid_argument("complement_of_link: J must be nonempty");
  SubposetMask m;
  m.member.assign(s.size(), true);
  for (int x : s.upper_set(j)) m.member[x] = false;
  m.closed_downward = true;
  for (std::size_t x = 0; x < s.size() && m.closed_downward; ++x)
    if (m.member[x])
      for (int c : s.covers(static_cast<int>(x)))
        if (!m.member[c]) m.closed_downward = false;
  return m;
}

inline bool is_closed_downward(const SimplicialPoset& s, const SubposetMask& m) {
  for (std::size_t x = 0; x < s.size(); ++x)
    if (m.member[x])
      for (int c : s.covers(static_cast<int>(x)))
        if (!m.member[c]) return false;
  return true;
}

// (f_{-1}, f_0, ..., f_{n-1})
inline std::vector<long long> face_counts(const SimplicialPoset& s) {
  if (!s.is_pure()) throw PosetError({"face_counts: poset is not pure"});
  std::vector<long long> f;
  for (int r = 0; r <= s.max_rank(); ++r) f.push_back(static_cast<long long>(s.of_rank(r).size()));
  return f;
}

// ---- presets ----

inline SimplicialPoset boundary_of_simplex(int d) {
  if (d < 1) throw std::invalid_argument("boundary_of_simplex needs d >= 1");
  std::vector<VertexSet> facets;
  for (int skip = 1; skip <= d + 1; ++skip) {
    VertexSet f;
    for (int v = 1; v <= d + 1; ++v)
      if (v != skip) f.push_back(v);
    facets.push_back(f);
  }
  return SimplicialPoset::from_facets(facets);
}

// vertices i and i+n are opposite
inline SimplicialPoset cross_polytope_boundary(int n) {
  if (n < 1 || n > 12) throw std::invalid_argument("cross_polytope_boundary needs 1 <= n <= 12");
  std::vector<VertexSet> facets;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    VertexSet f;
    for (int i = 0; i < n; ++i) f.push_back((mask >> i & 1u) ? i + 1 + n : i + 1);
    facets.push_back(f);
  }
  return SimplicialPoset::from_facets(facets);
}

// c components, each two vertices joined by two parallel edges
inline SimplicialPoset digon_cycle(int c) {
  if (c < 1) throw std::invalid_argument("digon_cycle needs c >= 1");
  std::vector<CoverRow> rows{{0, 0, {}, {}}};
  long long id = 1;
  for (int k = 0; k < c; ++k) {
    int a = 2 * k + 1, b = 2 * k + 2;
    long long va = id++, vb = id++;
    rows.push_back({va, 1, {a}, {0}});
    rows.push_back({vb, 1, {b}, {0}});
    rows.push_back({id++, 2, {a, b}, {va, vb}});
    rows.push_back({id++, 2, {a, b}, {va, vb}});
  }
  return SimplicialPoset::from_cover_table(rows);
}

// Moebius' 7-vertex torus: triangles {i,i+1,i+3}, {i,i+2,i+3} mod 7
inline SimplicialPoset torus_7() {
  std::vector<VertexSet> facets;
  for (int i = 0; i < 7; ++i) {
    facets.push_back({i % 7 + 1, (i + 1) % 7 + 1, (i + 3) % 7 + 1});
    facets.push_back({i % 7 + 1, (i + 2) % 7 + 1, (i + 3) % 7 + 1});
  }
  return SimplicialPoset::from_facets(facets);
}

// "torus_7", "boundary_of_simplex(3)", "octahedron", ...
inline SimplicialPoset preset(const std::string& name) {
  auto open = name.find('(');
  std::string head = name.substr(0, open);
  int arg = 0;
  if (open != std::string::npos) {
    auto close = name.find(')', open);
    if (close == std::string::npos || close != name.size() - 1) throw std::invalid_argument("malformed preset: " + name);
    try {
      arg = std::stoi(name.substr(open + 1, close - open - 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed preset argument: " + name);
    }
  }
  if (head == "torus_7" && open == std::string::npos) return torus_7();
  if (head == "octahedron" && open == std::string::npos) return cross_polytope_boundary(3);
  if (open != std::string::npos) {
    if (head == "boundary_of_simplex") return boundary_of_simplex(arg);
    if (head == "cross_polytope_boundary") return cross_polytope_boundary(arg);
    if (head == "digon_cycle") return digon_cycle(arg);
  }
  throw std::invalid_argument("unknown preset: " + name);
}

}  // namespace torusspace
