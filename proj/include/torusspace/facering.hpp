#pragma once

#include "torusspace/specseq.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace torusspace {

struct RelationOptions {
  std::map<std::uint32_t, int> sgn_flip;  // A mask -> -1 flips C_{A,I} for every I
  bool flip_orientation = false;
};

struct RowLabel {
  int type = 1;      // 1 or 2
  int element = 0;   // J for type 1; cohomology class index for type 2 (and for J = empty rows)
  std::uint32_t a = 0;
  bool from_empty = false;
};

template <class F>
struct DegreeRelations {
  int d = 0;  // face ring degree |I|
  int q = 0;  // border position n - d
  std::vector<int> generators;  // element ids of rank d (d = 0: one slot per H_n(Q,dQ) basis vector)
  Matrix<F> type1, type2;       // rows x generators
  std::vector<RowLabel> type1_labels, type2_labels;
  // type-2 data: the h0 cochains (loc basis) in cochain degree n-1-q and the incoming coboundary
  std::vector<std::vector<typename F::Element>> cochains;
  Matrix<F> coboundary;
};

template <class F>
struct RelationSystem {
  F field;
  PosetRef poset;
  CharacteristicMap lambda;
  ManifoldProfile profile;
  RelationOptions options;
  std::vector<typename F::Element> epsilon;  // trivialization of h0, per element
  std::vector<DegreeRelations<F>> degrees;   // index d = 0 .. n

  typename F::Element coefficient(const VertexSet& vs, std::uint32_t a) const {
    auto c = field.from_integer(coefficient_CAI_integer(lambda, vs, a));
    auto it = options.sgn_flip.find(a);
    if (it != options.sgn_flip.end() && it->second < 0) c = field.neg(c);
    return c;
  }

  // sum_I B_I C_{A,I} [X_I], B read from a loc-basis cochain through epsilon
  std::vector<typename F::Element> type2_row_raw(const std::vector<int>& generators, const std::vector<typename F::Element>& cochain,
                                                 std::uint32_t a) const {
    std::vector<typename F::Element> row(generators.size(), field.zero());
    for (std::size_t g = 0; g < generators.size(); ++g) {
      if (field.is_zero(cochain[g])) continue;
      int el = generators[g];
      auto b = field.mul(epsilon[static_cast<std::size_t>(el)], cochain[g]);
      if (options.flip_orientation) b = field.neg(b);
      row[g] = field.mul(b, coefficient(poset->vertices(el), a));
    }
    return row;
  }
  std::vector<typename F::Element> type2_row(int d, const std::vector<typename F::Element>& cochain, std::uint32_t a) const {
    return type2_row_raw(degrees[static_cast<std::size_t>(d)].generators, cochain, a);
  }
};

struct FaceRingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class F>
Matrix<F> rows_to_matrix(const F& k, std::size_t cols, const std::vector<std::vector<typename F::Element>>& rows) {
  Matrix<F> m(k, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  return m;
}

// the first r classes of im delta_{q+1} as cocycles of the truncated h0 complex, cochain degree n-1-q
template <class F>
std::vector<std::vector<typename F::Element>> image_delta_cocycles(const F& k, const SheafCochains<F>& cc, const SimplicialPoset& s,
                                                                   int q, long long r) {
  int n = s.max_rank();
  int i = n - 1 - q;
  int c = -i;
  auto hg = homology_at(k, cc.complex.dim(c), cc.complex.differential(c + 1), cc.complex.differential(c));
  Matrix<F> reps = hg.representatives();
  if (q == 0) {
    // reduced part: kernel of the augmentation over maximal cells
    Matrix<F> aug(k, 1, cc.dim(i));
    for (int x : s.of_rank(n)) aug(0, cc.offset[x]) = k.one();
    if (!(aug * cc.complex.differential(c + 1)).is_zero()) throw FaceRingError("augmentation does not vanish on coboundaries");
    reps = reps * kernel_basis(aug * reps);
  }
  if (static_cast<long long>(reps.cols()) < r)
    throw FaceRingError("profile asks for rank delta_" + std::to_string(q + 1) + "=" + std::to_string(r) + " but only " +
                        std::to_string(reps.cols()) + " classes exist");
  std::vector<std::vector<typename F::Element>> out;
  for (long long t = 0; t < r; ++t) out.push_back(reps.column(static_cast<std::size_t>(t)));
  return out;
}

template <class F>
RelationSystem<F> relation_system(const F& k, PosetRef sp, const CharacteristicMap& l, const ManifoldProfile& prof,
                                  RelationOptions opt = {}) {
  const auto& s = *sp;
  require_valid(k, s, l);
  int n = l.n;
  auto h0 = structure_sheaf(k, sp, false);
  auto cons = constancy_check(h0, true);
  if (!cons.is_constant) throw FaceRingError("S is not an orientable homology manifold over " + k.name() + ": " + cons.reason);
  RelationSystem<F> R{k, sp, l, prof, std::move(opt), cons.epsilon, {}};
  ExteriorAlgebra ext(n);
  auto cc = sheaf_cochains(h0, true);

  for (int d = 0; d <= n; ++d) {
    DegreeRelations<F> deg;
    deg.d = d;
    deg.q = n - d;
    int q = n - d;
    if (d == 0) deg.generators.assign(static_cast<std::size_t>(prof.rel(n)), 0);
    else deg.generators = s.of_rank(d);
    std::map<int, std::size_t> pos;
    for (std::size_t g = 0; g < deg.generators.size(); ++g) pos[deg.generators[g]] = g;
    std::size_t ng = deg.generators.size();
    std::vector<std::vector<typename F::Element>> t1, t2;

    if (d >= 2) {
      for (int j : s.of_rank(d - 1))
        for (auto a : ext.subsets(q)) {
          std::vector<typename F::Element> row(ng, k.zero());
          for (int i : s.covered_by(j))
            row[pos.at(i)] = k.mul(k.from_int(incidence_number(s, i, j)), R.coefficient(s.vertices(i), a));
          t1.push_back(row);
          deg.type1_labels.push_back({1, j, a, false});
        }
    } else if (d == 1) {
      // J = empty: classes of H_n(Q,dQ) hitting H_{n-1}(dQ), restricted to vertices
      auto full = structure_sheaf(k, sp, true);
      long long r = prof.delta(n);
      if (r > static_cast<long long>(full.stalk(0))) throw FaceRingError("rank delta_n exceeds dim H~_{n-1}(S)");
      for (long long t = 0; t < r; ++t) {
        std::vector<typename F::Element> cochain(ng, k.zero());
        for (int v : deg.generators) cochain[pos.at(v)] = full.restriction(0, v)(0, static_cast<std::size_t>(t));
        for (auto a : ext.subsets(q)) {
          t1.push_back(R.type2_row_raw(deg.generators, cochain, a));
          deg.type1_labels.push_back({1, static_cast<int>(t), a, true});
        }
      }
    }

    if (q <= n - 2 && d >= 1) {
      deg.cochains = image_delta_cocycles(k, cc, s, q, prof.delta(q + 1));
      deg.coboundary = cc.complex.differential(-(n - 1 - q) + 1);
      for (std::size_t t = 0; t < deg.cochains.size(); ++t)
        for (auto a : ext.subsets(q)) {
          t2.push_back(R.type2_row_raw(deg.generators, deg.cochains[t], a));
          deg.type2_labels.push_back({2, static_cast<int>(t), a, false});
        }
    }
    deg.type1 = rows_to_matrix(k, ng, t1);
    deg.type2 = rows_to_matrix(k, ng, t2);
    R.degrees.push_back(std::move(deg));
  }
  return R;
}

struct QuotientRanks {
  std::vector<long long> generators, rank_type1, rank_all, quotient;  // per d
};

template <class F>
QuotientRanks graded_quotient_rank(const RelationSystem<F>& R, bool include_type2, bool include_empty_rows = true) {
  QuotientRanks out;
  const F& k = R.field;
  for (const auto& deg : R.degrees) {
    std::size_t ng = deg.generators.size();
    Matrix<F> t1 = deg.type1;
    if (!include_empty_rows) {
      std::vector<std::vector<typename F::Element>> keep;
      for (std::size_t i = 0; i < t1.rows(); ++i)
        if (!deg.type1_labels[i].from_empty) keep.push_back(t1.row(i));
      t1 = rows_to_matrix(k, ng, keep);
    }
    long long r1 = static_cast<long long>(rank(t1));
    long long ra = include_type2 ? static_cast<long long>(rank(vcat(t1, deg.type2))) : r1;
    out.generators.push_back(static_cast<long long>(ng));
    out.rank_type1.push_back(r1);
    out.rank_all.push_back(ra);
    out.quotient.push_back(static_cast<long long>(ng) - ra);
  }
  return out;
}

template <class F>
struct KernelGenerators {
  int d = 0;
  std::vector<RowLabel> labels;
  std::vector<std::vector<typename F::Element>> vectors;  // coordinates in the type-1 quotient
  std::size_t quotient_dim = 0;
  bool independent = true;
};

template <class F>
QuotientSpace<F> type1_quotient(const RelationSystem<F>& R, int d) {
  const auto& deg = R.degrees[static_cast<std::size_t>(d)];
  std::size_t ng = deg.generators.size();
  return QuotientSpace<F>(whole_space(R.field, ng), column_span(deg.type1.transpose()));
}

template <class F>
std::vector<KernelGenerators<F>> kernel_generators(const RelationSystem<F>& R) {
  std::vector<KernelGenerators<F>> out;
  for (const auto& deg : R.degrees) {
    if (deg.type2.rows() == 0) continue;
    KernelGenerators<F> kg;
    kg.d = deg.d;
    kg.labels = deg.type2_labels;
    auto quo = type1_quotient(R, deg.d);
    kg.quotient_dim = quo.dim();
    std::vector<std::vector<typename F::Element>> cols;
    for (std::size_t i = 0; i < deg.type2.rows(); ++i) {
      auto c = quo.coordinates(deg.type2.row(i));
      if (!c) throw std::logic_error("kernel generator outside the generator space");
      cols.push_back(*c);
    }
    kg.vectors = cols;
    kg.independent = rank(Matrix<F>::from_columns(R.field, quo.dim(), cols)) == cols.size();
    out.push_back(std::move(kg));
  }
  return out;
}

// Degree-one socle test of each kernel generator: v_i * L' = 0 in k[S]/Theta for every vertex i.
// Needs a simplicial complex (one element per vertex set).
struct SocleEntry {
  int d = 0;
  RowLabel label;
  bool in_socle = false;
  std::vector<int> nonzero_vertices;
};

struct SocleReport {
  bool applicable = true;
  std::string reason;
  std::vector<SocleEntry> entries;
};

template <class F>
SocleReport socle_report(const RelationSystem<F>& R) {
  const F& k = R.field;
  const auto& s = *R.poset;
  int n = s.max_rank();
  SocleReport rep;
  std::map<VertexSet, int> by_set;
  for (std::size_t x = 0; x < s.size(); ++x)
    if (!by_set.emplace(s.vertices(static_cast<int>(x)), static_cast<int>(x)).second) {
      rep.applicable = false;
      rep.reason = "parallel faces present; degree-one reduction is implemented for simplicial complexes only";
      return rep;
    }
  auto face = [&](VertexSet vs) -> int {
    std::sort(vs.begin(), vs.end());
    auto it = by_set.find(vs);
    return it == by_set.end() ? -1 : it->second;
  };
  auto maximal = s.maximal_elements();
  // v_i * v_I as a vector over the degree |I|+1 generators
  auto multiply = [&](int i, int el, std::vector<typename F::Element>& out, const typename F::Element& coef,
                      const std::map<int, std::size_t>& pos) {
    const auto& vs = s.vertices(el);
    if (!std::binary_search(vs.begin(), vs.end(), i)) {
      VertexSet w = vs;
      w.push_back(i);
      int f = face(w);
      if (f >= 0) out[pos.at(f)] = k.add(out[pos.at(f)], coef);
      return;
    }
    int m = -1;
    for (int x : maximal)
      if (s.leq(el, x)) { m = x; break; }
    const auto& mv = s.vertices(m);
    auto lam = charmap_rows(k, R.lambda, mv);  // n x n
    auto inv = rref(hcat(lam, Matrix<F>::identity(k, static_cast<std::size_t>(n)))).reduced;
    std::size_t ipos = static_cast<std::size_t>(std::lower_bound(mv.begin(), mv.end(), i) - mv.begin());
    std::vector<typename F::Element> c(static_cast<std::size_t>(n));
    for (std::size_t r = 0; r < static_cast<std::size_t>(n); ++r) c[r] = inv(r, static_cast<std::size_t>(n) + ipos);
    for (int j : s.vertex_labels()) {
      if (std::binary_search(mv.begin(), mv.end(), j)) continue;
      VertexSet w = vs;
      w.push_back(j);
      int f = face(w);
      if (f < 0) continue;
      auto dot = k.zero();
      const auto& row = R.lambda.row(j);
      for (std::size_t t = 0; t < c.size(); ++t) dot = k.add(dot, k.mul(k.from_integer(row[t]), c[t]));
      out[pos.at(f)] = k.sub(out[pos.at(f)], k.mul(coef, dot));
    }
  };
  for (const auto& deg : R.degrees) {
    if (deg.type2.rows() == 0) continue;
    int d = deg.d;
    for (std::size_t r = 0; r < deg.type2.rows(); ++r) {
      SocleEntry e{d, deg.type2_labels[r], true, {}};
      if (d < n) {
        const auto& up = R.degrees[static_cast<std::size_t>(d + 1)];
        std::map<int, std::size_t> pos;
        for (std::size_t g = 0; g < up.generators.size(); ++g) pos[up.generators[g]] = g;
        std::size_t base = rank(up.type1);
        for (int i : s.vertex_labels()) {
          std::vector<typename F::Element> prod(up.generators.size(), k.zero());
          for (std::size_t g = 0; g < deg.generators.size(); ++g)
            if (!k.is_zero(deg.type2(r, g))) multiply(i, deg.generators[g], prod, deg.type2(r, g), pos);
          Matrix<F> one = rows_to_matrix(k, up.generators.size(), {prod});
          if (rank(vcat(up.type1, one)) != base) {
            e.in_socle = false;
            e.nonzero_vertices.push_back(i);
          }
        }
      }
      rep.entries.push_back(e);
    }
  }
  return rep;
}

}  // namespace torusspace
