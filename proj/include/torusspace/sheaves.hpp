#pragma once

#include "torusspace/complexes.hpp"

#include <map>
#include <memory>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace torusspace {

using PosetRef = std::shared_ptr<const SimplicialPoset>;

// Restrictions live on covers only: key (I, J) with I <1 J, matrix dim J x dim I.
template <class F>
class CellularSheaf {
 public:
  CellularSheaf() = default;
  CellularSheaf(F field, PosetRef base, std::vector<std::size_t> stalks, std::map<std::pair<int, int>, Matrix<F>> maps,
                bool include_empty)
      : field_(std::move(field)), base_(std::move(base)), stalks_(std::move(stalks)), maps_(std::move(maps)),
        include_empty_(include_empty) {
    const auto& s = *base_;
    if (stalks_.size() != s.size()) throw std::invalid_argument("sheaf: one stalk per element");
    for (std::size_t j = 0; j < s.size(); ++j)
      for (int i : s.covers(static_cast<int>(j))) {
        auto key = std::make_pair(i, static_cast<int>(j));
        auto it = maps_.find(key);
        if (it == maps_.end()) {
          maps_.emplace(key, Matrix<F>(field_, stalks_[j], stalks_[i]));
        } else if (it->second.rows() != stalks_[j] || it->second.cols() != stalks_[i]) {
          throw std::invalid_argument("sheaf: restriction shape on cover " + std::to_string(i) + "<" + std::to_string(j));
        }
      }
    if (maps_.size() != cover_count(s)) throw std::invalid_argument("sheaf: restriction given on a non-cover");
    check_functorial();
  }

  const F& field() const { return field_; }
  const SimplicialPoset& base() const { return *base_; }
  const PosetRef& base_ref() const { return base_; }
  bool include_empty() const { return include_empty_; }
  std::size_t stalk(int i) const { return stalks_.at(i); }
  const std::vector<std::size_t>& stalks() const { return stalks_; }
  const Matrix<F>& restriction(int i, int j) const { return maps_.at({i, j}); }
  const std::map<std::pair<int, int>, Matrix<F>>& restrictions() const { return maps_; }

  // A(I <= J) along one saturated chain
  Matrix<F> restriction_along(int i, int j) const {
    const auto& s = *base_;
    if (!s.leq(i, j)) throw std::invalid_argument("restriction_along: not comparable");
    Matrix<F> m = Matrix<F>::identity(field_, stalks_[i]);
    int cur = i;
    VertexSet have = s.vertices(i);
    for (int v : s.vertices(j)) {
      if (std::binary_search(s.vertices(i).begin(), s.vertices(i).end(), v)) continue;
      have.insert(std::upper_bound(have.begin(), have.end(), v), v);
      int next = s.face_of(j, have);
      m = restriction(cur, next) * m;
      cur = next;
    }
    return m;
  }

 private:
  static std::size_t cover_count(const SimplicialPoset& s) {
    std::size_t c = 0;
    for (std::size_t x = 0; x < s.size(); ++x) c += s.covers(static_cast<int>(x)).size();
    return c;
  }

  void check_functorial() const {
    const auto& s = *base_;
    for (std::size_t j = 0; j < s.size(); ++j)
      for (int m : s.covers(static_cast<int>(j)))
        for (int i : s.covers(m)) {
          // the other intermediate element
          for (int m2 : s.covers(static_cast<int>(j))) {
            if (m2 <= m) continue;
            const auto& c2 = s.covers(m2);
            if (!std::binary_search(c2.begin(), c2.end(), i)) continue;
            auto a = restriction(m, static_cast<int>(j)) * restriction(i, m);
            auto b = restriction(m2, static_cast<int>(j)) * restriction(i, m2);
            if (a != b)
              throw std::logic_error("sheaf not functorial on interval [" + std::to_string(i) + "," + std::to_string(j) + "]");
          }
        }
  }

  F field_{};
  PosetRef base_;
  std::vector<std::size_t> stalks_;
  std::map<std::pair<int, int>, Matrix<F>> maps_;
  bool include_empty_ = true;
};

// Corestrictions on covers: key (I', I) with I' <1 I, matrix dim I' x dim I.
template <class F>
class CellularCosheaf {
 public:
  CellularCosheaf() = default;
  CellularCosheaf(F field, PosetRef base, std::vector<std::size_t> stalks, std::map<std::pair<int, int>, Matrix<F>> maps)
      : field_(std::move(field)), base_(std::move(base)), stalks_(std::move(stalks)), maps_(std::move(maps)) {
    const auto& s = *base_;
    if (stalks_.size() != s.size()) throw std::invalid_argument("cosheaf: one stalk per element");
    for (std::size_t j = 0; j < s.size(); ++j)
      for (int i : s.covers(static_cast<int>(j))) {
        auto key = std::make_pair(i, static_cast<int>(j));
        auto it = maps_.find(key);
        if (it == maps_.end()) maps_.emplace(key, Matrix<F>(field_, stalks_[i], stalks_[j]));
        else if (it->second.rows() != stalks_[i] || it->second.cols() != stalks_[j])
          throw std::invalid_argument("cosheaf: corestriction shape");
      }
    for (std::size_t j = 0; j < s.size(); ++j)
      for (int m : s.covers(static_cast<int>(j)))
        for (int i : s.covers(m))
          for (int m2 : s.covers(static_cast<int>(j))) {
            if (m2 <= m || !std::binary_search(s.covers(m2).begin(), s.covers(m2).end(), i)) continue;
            auto a = corestriction(i, m) * corestriction(m, static_cast<int>(j));
            auto b = corestriction(i, m2) * corestriction(m2, static_cast<int>(j));
            if (a != b) throw std::logic_error("cosheaf not functorial");
          }
  }

  const F& field() const { return field_; }
  const SimplicialPoset& base() const { return *base_; }
  std::size_t stalk(int i) const { return stalks_.at(i); }
  const std::vector<std::size_t>& stalks() const { return stalks_; }
  const Matrix<F>& corestriction(int lower, int upper) const { return maps_.at({lower, upper}); }

 private:
  F field_{};
  PosetRef base_;
  std::vector<std::size_t> stalks_;
  std::map<std::pair<int, int>, Matrix<F>> maps_;
};

// Cochains C^i = sum over dim I = i of A(I), stored as a chain complex in
// degree -i so the homology code applies unchanged.
template <class F>
struct SheafCochains {
  ChainComplex<F> complex;
  int lo = -1, hi = -1;                // cochain degrees
  std::vector<std::size_t> offset;     // per element, inside its degree
  std::vector<std::size_t> used_stalk; // 0 at the empty element when truncated

  std::size_t dim(int i) const { return complex.dim(-i); }
  Matrix<F> d(int i) const { return complex.differential(-i); }  // C^i -> C^{i+1}
};

template <class F>
SheafCochains<F> sheaf_cochains(const CellularSheaf<F>& a, bool truncated) {
  const auto& s = a.base();
  const F& k = a.field();
  SheafCochains<F> out;
  out.lo = -1;
  out.hi = s.max_rank() - 1;
  out.offset.assign(s.size(), 0);
  out.used_stalk = a.stalks();
  if (truncated || !a.include_empty()) out.used_stalk[0] = 0;
  std::vector<std::size_t> dims(static_cast<std::size_t>(out.hi - out.lo + 1), 0);
  for (int r = 0; r <= s.max_rank(); ++r)
    for (int x : s.of_rank(r)) {
      out.offset[x] = dims[r];
      dims[r] += out.used_stalk[x];
    }
  // chain degrees -hi .. 1 ; chain degree c holds cochain degree -c
  std::vector<std::size_t> cdims;
  std::vector<Matrix<F>> cd;
  for (int c = -out.hi; c <= -out.lo; ++c) {
    int i = -c;  // cochain degree; outgoing d^i: C^i -> C^{i+1}
    std::size_t here = dims[i + 1];
    std::size_t next = (i + 1 <= out.hi) ? dims[i + 2] : 0;
    Matrix<F> m(k, c == -out.hi ? 0 : next, here);
    if (c != -out.hi)
      for (int x : s.of_rank(i + 1))
        for (int y : s.covered_by(x)) {
          const auto& r = a.restriction(x, y);
          if (out.used_stalk[x] == 0 || out.used_stalk[y] == 0) continue;
          auto sign = k.from_int(incidence_number(s, y, x));
          for (std::size_t p = 0; p < r.rows(); ++p)
            for (std::size_t q = 0; q < r.cols(); ++q)
              if (!k.is_zero(r(p, q))) m(out.offset[y] + p, out.offset[x] + q) = k.mul(sign, r(p, q));
        }
    cdims.push_back(here);
    cd.push_back(std::move(m));
  }
  out.complex = ChainComplex<F>(k, -out.hi, std::move(cdims), std::move(cd));
  return out;
}

// dims of H^i for i = -1 .. n-1
template <class F>
std::vector<std::size_t> sheaf_cohomology(const CellularSheaf<F>& a, bool truncated) {
  auto c = sheaf_cochains(a, truncated);
  auto h = homology_dims(c.complex);  // chain degrees -hi .. 1
  std::vector<std::size_t> out;
  for (int i = c.lo; i <= c.hi; ++i) out.push_back(h[static_cast<std::size_t>(-i - c.complex.min_degree())]);
  return out;
}

template <class F>
ChainComplex<F> cosheaf_chains(const CellularCosheaf<F>& c) {
  const auto& s = c.base();
  const F& k = c.field();
  int lo = -1, hi = s.max_rank() - 1;
  std::vector<std::size_t> offset(s.size(), 0), dims(static_cast<std::size_t>(hi - lo + 1), 0);
  for (int r = 0; r <= s.max_rank(); ++r)
    for (int x : s.of_rank(r)) {
      offset[x] = dims[r];
      dims[r] += c.stalk(x);
    }
  std::vector<Matrix<F>> d;
  for (int i = lo; i <= hi; ++i) {
    Matrix<F> m(k, i == lo ? 0 : dims[i], dims[i + 1]);
    if (i > lo)
      for (int x : s.of_rank(i + 1))
        for (int y : s.covers(x)) {
          const auto& r = c.corestriction(y, x);
          auto sign = k.from_int(incidence_number(s, x, y));
          for (std::size_t p = 0; p < r.rows(); ++p)
            for (std::size_t q = 0; q < r.cols(); ++q)
              if (!k.is_zero(r(p, q))) m(offset[y] + p, offset[x] + q) = k.mul(sign, r(p, q));
        }
    d.push_back(std::move(m));
  }
  return ChainComplex<F>(k, lo, std::move(dims), std::move(d));
}

// dims of H_i for i = -1 .. n-1
template <class F>
std::vector<std::size_t> cosheaf_homology(const CellularCosheaf<F>& c) {
  return homology_dims(cosheaf_chains(c));
}

// ---- standard sheaves ----

template <class F>
CellularSheaf<F> constant_sheaf(const F& k, PosetRef s, std::size_t w) {
  std::vector<std::size_t> stalks(s->size(), w);
  stalks[0] = 0;
  std::map<std::pair<int, int>, Matrix<F>> maps;
  for (std::size_t j = 1; j < s->size(); ++j)
    for (int i : s->covers(static_cast<int>(j)))
      if (i != 0) maps.emplace(std::make_pair(i, static_cast<int>(j)), Matrix<F>::identity(k, w));
  return CellularSheaf<F>(k, s, std::move(stalks), std::move(maps), true);
}

template <class F>
CellularSheaf<F> upper_set_sheaf(const F& k, PosetRef s, int base, std::size_t w) {
  std::vector<std::size_t> stalks(s->size(), 0);
  for (int x : s->upper_set(base)) stalks[x] = w;
  std::map<std::pair<int, int>, Matrix<F>> maps;
  for (std::size_t j = 0; j < s->size(); ++j)
    for (int i : s->covers(static_cast<int>(j)))
      if (stalks[i] && stalks[j]) maps.emplace(std::make_pair(i, static_cast<int>(j)), Matrix<F>::identity(k, w));
  return CellularSheaf<F>(k, s, std::move(stalks), std::move(maps), true);
}

// loc_i(J) = H_i(S, S \ lk J); at the empty element this is the reduced
// homology of S. Restrictions are induced by the quotient projections.
template <class F>
CellularSheaf<F> local_homology_sheaf(const F& k, PosetRef sp, int i, bool include_empty) {
  const auto& s = *sp;
  std::vector<ChainComplex<F>> cx(s.size());
  std::vector<HomologyGroup<F>> hg(s.size());
  std::vector<std::size_t> stalks(s.size(), 0);
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (j == 0 && !include_empty) continue;
    cx[j] = star_relative_complex(k, s, static_cast<int>(j));
    hg[j] = homology_at(k, cx[j].dim(i), cx[j].differential(i + 1), cx[j].differential(i));
    stalks[j] = hg[j].dim;
  }
  auto projection = [&](int a, int b, int deg) {
    const auto& la = cx[a].labels(deg);
    const auto& lb = cx[b].labels(deg);
    Matrix<F> m(k, lb.size(), la.size());
    for (std::size_t c = 0; c < la.size(); ++c) {
      auto it = std::lower_bound(lb.begin(), lb.end(), la[c]);
      if (it != lb.end() && *it == la[c]) m(static_cast<std::size_t>(it - lb.begin()), c) = k.one();
    }
    return m;
  };
  std::map<std::pair<int, int>, Matrix<F>> maps;
  for (std::size_t j = 0; j < s.size(); ++j)
    for (int a : s.covers(static_cast<int>(j))) {
      if (stalks[a] == 0 || stalks[j] == 0) continue;
      int b = static_cast<int>(j);
      for (int deg : {i, i + 1})
        if (projection(a, b, deg - 1) * cx[a].differential(deg) != cx[b].differential(deg) * projection(a, b, deg))
          throw std::logic_error("local homology: projection is not a chain map");
      maps.emplace(std::make_pair(a, b), induced_quotient_map(projection(a, b, i), hg[a].quotient, hg[b].quotient));
    }
  return CellularSheaf<F>(k, sp, std::move(stalks), std::move(maps), include_empty);
}

// structure sheaf h0 = loc_{n-1}
template <class F>
CellularSheaf<F> structure_sheaf(const F& k, PosetRef s, bool include_empty) {
  if (!s->is_pure()) throw PosetError({"structure sheaf needs a pure poset"});
  return local_homology_sheaf(k, s, s->max_rank() - 1, include_empty);
}

template <class F>
CellularSheaf<F> tensor(const CellularSheaf<F>& a, const CellularSheaf<F>& b) {
  if (&a.base() != &b.base()) throw std::invalid_argument("tensor: sheaves over different posets");
  const auto& s = a.base();
  std::vector<std::size_t> stalks(s.size());
  for (std::size_t x = 0; x < s.size(); ++x) stalks[x] = a.stalk(static_cast<int>(x)) * b.stalk(static_cast<int>(x));
  std::map<std::pair<int, int>, Matrix<F>> maps;
  for (const auto& [key, m] : a.restrictions()) maps.emplace(key, m.kron(b.restriction(key.first, key.second)));
  return CellularSheaf<F>(a.field(), a.base_ref(), std::move(stalks), std::move(maps), a.include_empty() && b.include_empty());
}

template <class F>
struct Constancy {
  bool is_constant = false;
  std::vector<typename F::Element> epsilon;  // per element; slot 0 unused
  std::vector<int> witness;                  // offending elements / cycle
  std::string reason;
};

// Units eps with eps_J * A(I<J) * eps_I^{-1} = 1, propagated over a
// spanning forest of the cover graph on the nonempty elements.
template <class F>
Constancy<F> constancy_check(const CellularSheaf<F>& a, bool truncated) {
  const auto& s = a.base();
  const F& k = a.field();
  Constancy<F> out;
  out.epsilon.assign(s.size(), k.one());
  if (!truncated && a.include_empty() && a.stalk(0) != 0) {
    out.witness = {0};
    out.reason = "nonzero stalk at the empty element";
    return out;
  }
  for (std::size_t x = 1; x < s.size(); ++x)
    if (a.stalk(static_cast<int>(x)) != 1) {
      out.witness = {static_cast<int>(x)};
      out.reason = "stalk of dimension " + std::to_string(a.stalk(static_cast<int>(x))) + " at element " + std::to_string(x);
      return out;
    }
  std::vector<int> parent(s.size(), -2), depth(s.size(), 0);
  auto path_to_root = [&](int x) {
    std::vector<int> p{x};
    while (parent[x] >= 0) { x = parent[x]; p.push_back(x); }
    return p;
  };
  auto cycle = [&](int x, int y) {
    auto px = path_to_root(x), py = path_to_root(y);
    std::vector<int> c;
    std::size_t ix = px.size(), iy = py.size();
    while (ix > 0 && iy > 0 && px[ix - 1] == py[iy - 1]) { --ix; --iy; }
    for (std::size_t t = 0; t <= ix && t < px.size(); ++t) c.push_back(px[t]);
    for (std::size_t t = iy; t-- > 0;) c.push_back(py[t]);
    return c;
  };
  for (std::size_t root = 1; root < s.size(); ++root) {
    if (parent[root] != -2) continue;
    parent[root] = -1;
    std::queue<int> q;
    q.push(static_cast<int>(root));
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      std::vector<std::pair<int, bool>> nbrs;  // (element, x is lower)
      for (int y : s.covered_by(x)) nbrs.emplace_back(y, true);
      for (int y : s.covers(x))
        if (y != 0) nbrs.emplace_back(y, false);
      for (auto [y, up] : nbrs) {
        int lo = up ? x : y, hi = up ? y : x;
        auto r = a.restriction(lo, hi)(0, 0);
        if (k.is_zero(r)) {
          out.witness = {lo, hi};
          out.reason = "zero restriction " + std::to_string(lo) + "<" + std::to_string(hi);
          return out;
        }
        if (parent[y] == -2) {
          parent[y] = x;
          depth[y] = depth[x] + 1;
          out.epsilon[y] = up ? k.div(out.epsilon[x], r) : k.mul(out.epsilon[x], r);
          q.push(y);
        } else if (!k.equal(k.mul(out.epsilon[hi], r), out.epsilon[lo])) {
          out.witness = cycle(lo, hi);
          out.reason = "inconsistent orientation around a cycle";
          return out;
        }
      }
    }
  }
  out.is_constant = true;
  return out;
}

}  // namespace torusspace
