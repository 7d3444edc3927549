#pragma once

#include "torusspace/matrix.hpp"
#include "torusspace/poset.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace torusspace {

// Chain complex C_lo ... C_hi with d_i : C_i -> C_{i-1}. Also used for
// cochain complexes by the sheaf code, which just reads degrees backwards.
template <class F>
class ChainComplex {
 public:
  ChainComplex() = default;

  // d[k] is the differential out of degree lo + k; d[0] must have 0 rows.
  ChainComplex(F field, int lo, std::vector<std::size_t> dims, std::vector<Matrix<F>> d,
               std::vector<std::vector<int>> labels = {})
      : field_(std::move(field)), lo_(lo), dims_(std::move(dims)), d_(std::move(d)), labels_(std::move(labels)) {
    if (d_.size() != dims_.size()) throw std::invalid_argument("chain complex: one differential per degree");
    for (std::size_t k = 0; k < dims_.size(); ++k) {
      std::size_t below = k == 0 ? 0 : dims_[k - 1];
      if (d_[k].rows() != below || d_[k].cols() != dims_[k]) throw std::invalid_argument("chain complex: differential shape");
    }
    for (std::size_t k = 1; k < dims_.size(); ++k)
      if (!(d_[k - 1] * d_[k]).is_zero())
        throw std::logic_error("chain complex: d^2 != 0 at degree " + std::to_string(lo_ + static_cast<int>(k)));
  }

  const F& field() const { return field_; }
  int min_degree() const { return lo_; }
  int max_degree() const { return lo_ + static_cast<int>(dims_.size()) - 1; }
  bool in_range(int i) const { return i >= lo_ && i <= max_degree(); }
  std::size_t dim(int i) const { return in_range(i) ? dims_[i - lo_] : 0; }

  Matrix<F> differential(int i) const {
    if (in_range(i)) return d_[i - lo_];
    return Matrix<F>(field_, dim(i - 1), dim(i));
  }
  // generator labels in degree i (poset element ids for cellular complexes)
  const std::vector<int>& labels(int i) const {
    static const std::vector<int> none;
    if (!in_range(i) || labels_.empty()) return none;
    return labels_[i - lo_];
  }

 private:
  F field_{};
  int lo_ = 0;
  std::vector<std::size_t> dims_;
  std::vector<Matrix<F>> d_;
  std::vector<std::vector<int>> labels_;
};

template <class F>
struct HomologyGroup {
  std::size_t dim = 0;
  QuotientSpace<F> quotient;  // cycles modulo boundaries
  const Matrix<F>& representatives() const { return quotient.representatives(); }
};

template <class F>
struct HomologyProfile {
  int min_degree = 0;
  std::vector<HomologyGroup<F>> groups;

  int max_degree() const { return min_degree + static_cast<int>(groups.size()) - 1; }
  std::size_t dim(int i) const {
    if (i < min_degree || i > max_degree()) return 0;
    return groups[i - min_degree].dim;
  }
  const HomologyGroup<F>& at(int i) const { return groups.at(i - min_degree); }
  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> v;
    for (const auto& g : groups) v.push_back(g.dim);
    return v;
  }
};

// ker(outgoing) / im(incoming) on a space of dimension n
template <class F>
HomologyGroup<F> homology_at(const F& field, std::size_t n, const Matrix<F>& incoming, const Matrix<F>& outgoing) {
  SubspaceBasis<F> cycles{n, outgoing.rows() == 0 ? Matrix<F>::identity(field, n) : kernel_basis(outgoing)};
  SubspaceBasis<F> bounds = incoming.cols() == 0 ? zero_space(field, n) : column_span(incoming);
  HomologyGroup<F> g;
  g.quotient = QuotientSpace<F>(cycles, bounds);
  g.dim = g.quotient.dim();
  return g;
}

template <class F>
HomologyProfile<F> homology(const ChainComplex<F>& c) {
  HomologyProfile<F> h;
  h.min_degree = c.min_degree();
  for (int i = c.min_degree(); i <= c.max_degree(); ++i)
    h.groups.push_back(homology_at(c.field(), c.dim(i), c.differential(i + 1), c.differential(i)));
  return h;
}

// ranks only
template <class F>
std::vector<std::size_t> homology_dims(const ChainComplex<F>& c) {
  std::vector<std::size_t> ranks;
  for (int i = c.min_degree(); i <= c.max_degree() + 1; ++i) ranks.push_back(rank(c.differential(i)));
  std::vector<std::size_t> out;
  for (int i = c.min_degree(); i <= c.max_degree(); ++i) {
    std::size_t k = static_cast<std::size_t>(i - c.min_degree());
    out.push_back(c.dim(i) - ranks[k] - ranks[k + 1]);
  }
  return out;
}

// Degreewise maps src -> dst; missing degrees are zero.
template <class F>
struct ChainMap {
  std::map<int, Matrix<F>> components;
};

template <class F>
Matrix<F> chain_map_component(const ChainMap<F>& f, const ChainComplex<F>& src, const ChainComplex<F>& dst, int i) {
  auto it = f.components.find(i);
  if (it != f.components.end()) {
    if (it->second.rows() != dst.dim(i) || it->second.cols() != src.dim(i))
      throw std::invalid_argument("chain map: component shape at degree " + std::to_string(i));
    return it->second;
  }
  return Matrix<F>(src.field(), dst.dim(i), src.dim(i));
}

template <class F>
std::map<int, Matrix<F>> induced_map(const ChainMap<F>& f, const ChainComplex<F>& src, const ChainComplex<F>& dst,
                                     const HomologyProfile<F>& hsrc, const HomologyProfile<F>& hdst) {
  int lo = std::min(src.min_degree(), dst.min_degree());
  int hi = std::max(src.max_degree(), dst.max_degree());
  for (int i = lo; i <= hi + 1; ++i) {
    auto left = chain_map_component(f, src, dst, i - 1) * src.differential(i);
    auto right = dst.differential(i) * chain_map_component(f, src, dst, i);
    if (left != right) throw std::invalid_argument("induced_map: not a chain map at degree " + std::to_string(i));
  }
  std::map<int, Matrix<F>> out;
  for (int i = lo; i <= hi; ++i) {
    std::size_t a = hsrc.dim(i), b = hdst.dim(i);
    if (a == 0 || b == 0) {
      out.emplace(i, Matrix<F>(src.field(), b, a));
      continue;
    }
    out.emplace(i, induced_quotient_map(chain_map_component(f, src, dst, i), hsrc.at(i).quotient, hdst.at(i).quotient));
  }
  return out;
}

// Cellular complex on the elements flagged in `generators`, degree = rank-1
// shifted down by `shift`. d(J) = sum over covered I of [J:I] I.
template <class F>
ChainComplex<F> poset_chain_complex(const F& field, const SimplicialPoset& s, const std::vector<bool>& generators, int shift = 0) {
  int lo = 1 << 30, hi = -(1 << 30);
  for (std::size_t x = 0; x < s.size(); ++x)
    if (generators[x]) {
      lo = std::min(lo, s.rank(static_cast<int>(x)) - 1 - shift);
      hi = std::max(hi, s.rank(static_cast<int>(x)) - 1 - shift);
    }
  if (lo > hi) { lo = 0; hi = -1; }
  std::vector<std::vector<int>> labels(static_cast<std::size_t>(hi - lo + 1));
  std::vector<int> index(s.size(), -1);
  for (std::size_t x = 0; x < s.size(); ++x)
    if (generators[x]) {
      auto& l = labels[s.rank(static_cast<int>(x)) - 1 - shift - lo];
      index[x] = static_cast<int>(l.size());
      l.push_back(static_cast<int>(x));
    }
  std::vector<std::size_t> dims;
  std::vector<Matrix<F>> d;
  for (int i = lo; i <= hi; ++i) {
    const auto& here = labels[i - lo];
    std::size_t below = i == lo ? 0 : labels[i - 1 - lo].size();
    Matrix<F> m(field, below, here.size());
    if (i > lo)
      for (std::size_t c = 0; c < here.size(); ++c)
        for (int y : s.covers(here[c]))
          if (generators[y]) m(static_cast<std::size_t>(index[y]), c) = field.from_int(incidence_number(s, here[c], y));
    dims.push_back(here.size());
    d.push_back(std::move(m));
  }
  return ChainComplex<F>(field, lo, std::move(dims), std::move(d), std::move(labels));
}

template <class F>
ChainComplex<F> cellular_chain_complex(const F& field, const SimplicialPoset& s, const std::optional<SubposetMask>& relative_to,
                                       bool reduced) {
  std::vector<bool> gens(s.size(), true);
  if (relative_to) {
    if (relative_to->member.size() != s.size()) throw std::invalid_argument("mask size mismatch");
    if (!is_closed_downward(s, *relative_to)) throw std::invalid_argument("relative mask is not closed downward");
    for (std::size_t x = 0; x < s.size(); ++x)
      if (relative_to->member[x]) gens[x] = false;
  }
  if (!reduced) gens[0] = false;
  return poset_chain_complex(field, s, gens);
}

// C(S, S \ lk I): generators are the elements >= I
template <class F>
ChainComplex<F> star_relative_complex(const F& field, const SimplicialPoset& s, int i, int shift = 0) {
  std::vector<bool> gens(s.size(), false);
  for (int x : s.upper_set(i)) gens[x] = true;
  return poset_chain_complex(field, s, gens, shift);
}

// reduced homology dims of lk I, indexed from degree -1
template <class F>
std::vector<std::size_t> link_reduced_homology(const F& field, const SimplicialPoset& s, int i) {
  auto c = star_relative_complex(field, s, i, s.rank(i));
  auto h = homology_dims(c);
  std::vector<std::size_t> out(static_cast<std::size_t>(std::max(0, s.max_rank() - s.rank(i) + 1)), 0);
  for (int deg = c.min_degree(); deg <= c.max_degree(); ++deg) out[deg + 1] = h[deg - c.min_degree()];
  return out;
}

struct LinkFailure {
  int element = 0;
  VertexSet vertices;
  int degree = 0;
  std::size_t dim = 0;
};

struct Classification {
  bool pure = false;
  bool buchsbaum = false;
  bool cohen_macaulay = false;
  std::vector<LinkFailure> failures;         // I != 0
  std::vector<LinkFailure> global_failures;  // I = 0
  std::vector<std::vector<std::size_t>> link_homology;  // per element, from degree -1
};

template <class F>
Classification classify(const F& field, const SimplicialPoset& s) {
  Classification c;
  c.pure = s.is_pure();
  if (!c.pure) return c;
  int n = s.max_rank();
  for (std::size_t x = 0; x < s.size(); ++x) {
    int xi = static_cast<int>(x);
    auto h = link_reduced_homology(field, s, xi);
    for (std::size_t k = 0; k < h.size(); ++k) {
      int deg = static_cast<int>(k) - 1;
      if (h[k] == 0 || deg == n - 1 - s.rank(xi)) continue;
      LinkFailure f{xi, s.vertices(xi), deg, h[k]};
      (x == 0 ? c.global_failures : c.failures).push_back(f);
    }
    c.link_homology.push_back(std::move(h));
  }
  c.buchsbaum = c.failures.empty();
  c.cohen_macaulay = c.buchsbaum && c.global_failures.empty();
  return c;
}

inline long long euler_characteristic(const SimplicialPoset& s) {
  long long chi = 0;
  for (int r = 1; r <= s.max_rank(); ++r) chi += (r % 2 == 1 ? 1 : -1) * static_cast<long long>(s.of_rank(r).size());
  return chi;
}

// Order complex of S minus the minimum; chains listed by increasing rank.
template <class F>
ChainComplex<F> order_complex(const F& field, const SimplicialPoset& s, bool reduced) {
  std::vector<std::vector<int>> above(s.size());
  for (std::size_t x = 1; x < s.size(); ++x)
    for (int y : s.upper_set(static_cast<int>(x)))
      if (y != static_cast<int>(x)) above[x].push_back(y);
  std::vector<std::map<std::vector<int>, std::size_t>> chains(static_cast<std::size_t>(s.max_rank() + 1));
  std::vector<int> cur;
  auto grow = [&](auto&& self, int last) -> void {
    auto& level = chains[cur.size()];
    level.emplace(cur, level.size());
    for (int y : above[last]) {
      cur.push_back(y);
      self(self, y);
      cur.pop_back();
    }
  };
  if (reduced) chains[0].emplace(std::vector<int>{}, 0);
  for (std::size_t x = 1; x < s.size(); ++x) {
    cur = {static_cast<int>(x)};
    grow(grow, static_cast<int>(x));
  }
  // maps were filled in DFS order; renumber by sorted key for determinism
  for (auto& level : chains) {
    std::size_t k = 0;
    for (auto& kv : level) kv.second = k++;
  }
  int lo = reduced ? -1 : 0;
  int hi = s.max_rank() - 1;
  std::vector<std::size_t> dims;
  std::vector<Matrix<F>> d;
  for (int deg = lo; deg <= hi; ++deg) {
    const auto& here = chains[static_cast<std::size_t>(deg + 1)];
    std::size_t below = deg == lo ? 0 : chains[static_cast<std::size_t>(deg)].size();
    Matrix<F> m(field, below, here.size());
    if (deg > lo)
      for (const auto& [ch, col] : here)
        for (std::size_t k = 0; k < ch.size(); ++k) {
          std::vector<int> face = ch;
          face.erase(face.begin() + static_cast<long>(k));
          m(chains[static_cast<std::size_t>(deg)].at(face), col) = field.from_int(k % 2 == 0 ? 1 : -1);
        }
    dims.push_back(here.size());
    d.push_back(std::move(m));
  }
  return ChainComplex<F>(field, lo, std::move(dims), std::move(d));
}

template <class F>
HomologyProfile<F> order_complex_homology(const F& field, const SimplicialPoset& s, bool reduced = true) {
  return homology(order_complex(field, s, reduced));
}

}  // namespace torusspace
