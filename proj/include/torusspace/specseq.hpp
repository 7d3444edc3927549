#pragma once

#include "torusspace/facevec.hpp"
#include "torusspace/torusalg.hpp"

#include <map>
#include <string>
#include <vector>

namespace torusspace {

struct ManifoldProfile {
  int n = 0;
  std::vector<long long> bQ;          // b_0(Q) .. b_n(Q)
  std::vector<long long> bQrel;       // b_0(Q,dQ) .. b_n(Q,dQ)
  std::vector<long long> rank_delta;  // rank delta_1 .. rank delta_n
  std::string source = "user";

  long long delta(int i) const {
    return i >= 1 && i <= n ? rank_delta[static_cast<std::size_t>(i - 1)] : 0;
  }
  long long rel(int i) const { return i >= 0 && i <= n ? bQrel[static_cast<std::size_t>(i)] : 0; }
  long long abs(int i) const { return i >= 0 && i <= n ? bQ[static_cast<std::size_t>(i)] : 0; }
};

inline ManifoldProfile cone_profile(const FaceVectors& v) {
  ManifoldProfile p;
  p.n = v.n;
  p.source = "cone";
  p.bQ.assign(static_cast<std::size_t>(v.n) + 1, 0);
  p.bQ[0] = 1;
  for (int i = 0; i <= v.n; ++i) p.bQrel.push_back(i >= 1 ? v.bt[static_cast<std::size_t>(i - 1)] : 0);
  for (int i = 1; i <= v.n; ++i) p.rank_delta.push_back(v.bt[static_cast<std::size_t>(i - 1)]);
  return p;
}

// unreduced Betti numbers of |S| = dQ, degrees 0 .. n
inline std::vector<long long> boundary_betti(const FaceVectors& v) {
  std::vector<long long> b(static_cast<std::size_t>(v.n) + 1, 0);
  for (int i = 0; i < v.n; ++i) b[static_cast<std::size_t>(i)] = v.bt[static_cast<std::size_t>(i)];
  b[0] += 1;
  return b;
}

inline std::vector<std::string> validate_profile(const FaceVectors& v, const ManifoldProfile& p) {
  std::vector<std::string> errs;
  std::size_t len = static_cast<std::size_t>(v.n) + 1;
  if (p.n != v.n) errs.push_back("profile n=" + std::to_string(p.n) + " but dim S + 1 = " + std::to_string(v.n));
  if (p.bQ.size() != len) errs.push_back("bQ must have n+1 entries");
  if (p.bQrel.size() != len) errs.push_back("bQrel must have n+1 entries");
  if (p.rank_delta.size() + 1 != len) errs.push_back("rank_delta must have n entries");
  if (!errs.empty()) return errs;
  for (auto x : p.bQ) if (x < 0) errs.push_back("negative entry in bQ");
  for (auto x : p.bQrel) if (x < 0) errs.push_back("negative entry in bQrel");
  for (auto x : p.rank_delta) if (x < 0) errs.push_back("negative entry in rank_delta");
  auto bd = boundary_betti(v);
  for (int i = 0; i <= v.n; ++i) {
    long long coker = bd[static_cast<std::size_t>(i)] - p.delta(i + 1);
    long long ker = p.rel(i) - p.delta(i);
    if (coker < 0) errs.push_back("degree " + std::to_string(i) + ": rank delta_" + std::to_string(i + 1) + " exceeds b_" + std::to_string(i) + "(dQ)");
    if (ker < 0) errs.push_back("degree " + std::to_string(i) + ": rank delta_" + std::to_string(i) + " exceeds b_" + std::to_string(i) + "(Q,dQ)");
    if (coker >= 0 && ker >= 0 && p.abs(i) != coker + ker)
      errs.push_back("degree " + std::to_string(i) + ": b(Q)=" + std::to_string(p.abs(i)) + " but the exact sequence forces " + std::to_string(coker + ker));
  }
  return errs;
}

struct ColumnComponent {
  int q1 = 0, q2 = 0;  // H_{q1}(Q,dQ) (x) Lambda^(q2)
  long long dim = 0;
};

struct SpectralPage {
  std::string tag;
  int n = 0;
  std::vector<std::vector<long long>> dims;                   // dims[p][q + n]
  std::map<int, std::vector<ColumnComponent>> column_n;       // keyed by q

  long long at(int p, int q) const {
    if (p < 0 || p > n || q < -n || q > n) return 0;
    return dims[static_cast<std::size_t>(p)][static_cast<std::size_t>(q + n)];
  }
  long long& ref(int p, int q) { return dims[static_cast<std::size_t>(p)][static_cast<std::size_t>(q + n)]; }
  std::vector<long long> border() const {
    std::vector<long long> b;
    for (int q = 0; q <= n; ++q) b.push_back(at(q, q));
    return b;
  }
};

struct Pages {
  SpectralPage e1plus, e2, einf;
  SpectralPage e1;  // only used for Euler characteristics; column n as in e1plus
};

inline long long border_formula(const FaceVectors& v, int q) {
  long long s = 0;
  for (int p = 0; p <= q; ++p) s += ((p + q) % 2 ? -1 : 1) * v.bt[static_cast<std::size_t>(p)];
  return v.h[static_cast<std::size_t>(q)] + binomial(v.n, q) * s;
}

inline SpectralPage empty_page(const std::string& tag, int n) {
  SpectralPage pg;
  pg.tag = tag;
  pg.n = n;
  pg.dims.assign(static_cast<std::size_t>(n) + 1, std::vector<long long>(2 * static_cast<std::size_t>(n) + 1, 0));
  return pg;
}

inline Pages pages(const FaceVectors& v, const ManifoldProfile& prof) {
  int n = v.n;
  auto bd = boundary_betti(v);
  Pages out;
  out.e1plus = empty_page("1+", n);
  auto& e = out.e1plus;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < p; ++q) e.ref(p, q) = bd[static_cast<std::size_t>(p)] * binomial(n, q);
  for (int q = 0; q < n; ++q) e.ref(q, q) = border_formula(v, q);
  for (int q1 = 0; q1 <= n; ++q1)
    for (int q2 = 0; q2 <= n; ++q2) {
      int q = q1 + q2 - n;
      long long d = prof.rel(q1) * binomial(n, q2);
      e.column_n[q].push_back({q1, q2, d});
      e.ref(n, q) += d;
    }

  out.e1 = empty_page("1", n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q) out.e1.ref(p, q) = binomial(p, q) * v.ft[static_cast<std::size_t>(n - p - 1)];
  for (int q = -n; q <= n; ++q) out.e1.ref(n, q) = e.at(n, q);
  out.e1.column_n = e.column_n;

  // each column-n component fires once, at page n - q1 + 1, with full rank
  auto apply = [&](SpectralPage& pg, bool only_first) {
    for (auto& [q, comps] : pg.column_n)
      for (auto& c : comps) {
        if (c.q1 < 1 || c.q1 - 1 < c.q2) continue;
        int r = n - c.q1 + 1;
        if (only_first && r != 1) continue;
        long long rk = prof.delta(c.q1) * binomial(n, c.q2);
        c.dim -= rk;
        pg.ref(n, q) -= rk;
        pg.ref(c.q1 - 1, c.q2) -= rk;
      }
  };
  out.e2 = e;
  out.e2.tag = "2";
  apply(out.e2, true);
  out.einf = e;
  out.einf.tag = "inf";
  apply(out.einf, false);
  return out;
}

struct BigradedTable {
  int n = 0;
  std::vector<std::vector<long long>> h;  // h[i][j]
  std::vector<long long> totals;          // H_k, k = 0 .. 2n
};

inline BigradedTable bigraded_betti(const ManifoldProfile& prof, const Pages& pg) {
  int n = prof.n;
  BigradedTable t;
  t.n = n;
  t.h.assign(static_cast<std::size_t>(n) + 1, std::vector<long long>(static_cast<std::size_t>(n) + 1, 0));
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      long long x;
      if (i > j) x = prof.abs(i) * binomial(n, j);
      else if (i < j) x = prof.rel(i) * binomial(n, j);
      else if (i < n) x = pg.einf.at(i, i) + prof.rel(i) * binomial(n, i);
      else x = prof.rel(n);
      t.h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = x;
    }
  t.totals.assign(2 * static_cast<std::size_t>(n) + 1, 0);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) t.totals[static_cast<std::size_t>(i + j)] += t.h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return t;
}

// H^{n-1-p}(S; h0 (x) (Lambda/I)^(q)), truncated; rows p = 0 .. n-1, columns q = 0 .. n
template <class F>
std::vector<std::vector<long long>> sheaf_path_page(const F& k, PosetRef s, const CharacteristicMap& l) {
  require_valid(k, *s, l);
  int n = l.n;
  auto h0 = structure_sheaf(k, s, false);
  std::vector<std::vector<long long>> t(static_cast<std::size_t>(n), std::vector<long long>(static_cast<std::size_t>(n) + 1, 0));
  for (int q = 0; q <= n; ++q) {
    auto dims = sheaf_cohomology(tensor(h0, quotient_sheaf(k, s, l, q)), true);  // -1 .. n-1
    for (int p = 0; p < n; ++p) t[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] = static_cast<long long>(dims[static_cast<std::size_t>(n - p)]);
  }
  return t;
}

struct CrossCheck {
  bool pass = true;
  std::vector<std::vector<long long>> sheaf, closed_form;
};

template <class F>
CrossCheck e2_border_sheaf_crosscheck(const F& k, PosetRef s, const CharacteristicMap& l, const Pages& pg) {
  CrossCheck c;
  c.sheaf = sheaf_path_page(k, s, l);
  int n = l.n;
  for (int p = 0; p < n; ++p) {
    std::vector<long long> row;
    for (int q = 0; q <= n; ++q) row.push_back(pg.e1plus.at(p, q));
    if (row != c.sheaf[static_cast<std::size_t>(p)]) c.pass = false;
    c.closed_form.push_back(row);
  }
  return c;
}

inline long long euler_from_page(const SpectralPage& pg) {
  long long chi = 0;
  for (int p = 0; p <= pg.n; ++p)
    for (int q = -pg.n; q <= pg.n; ++q) chi += ((p + q) % 2 ? -1 : 1) * pg.at(p, q);
  return chi;
}

struct TheoremContext {
  bool cone = false;
  bool manifold = false;     // h0 truncated is constant
  bool have_sheaf_path = false;
  std::vector<std::vector<long long>> sheaf;  // from sheaf_path_page when available
};

inline std::vector<IdentityCheck> theorem_checks(const FaceVectors& v, const ManifoldProfile& prof, const Pages& pg,
                                                 const BigradedTable& bt, const TheoremContext& ctx) {
  int n = v.n;
  std::vector<IdentityCheck> out;
  auto bd = boundary_betti(v);

  {  // border by the formula vs the Euler characteristic of each truncated row of E^1
    IdentityCheck c{"border_formula_vs_euler", true, true, ""};
    std::vector<long long> via;
    for (int q = 0; q < n; ++q) {
      long long chi1 = 0;
      for (int p = q; p < n; ++p) chi1 += (p % 2 ? -1 : 1) * pg.e1.at(p, q);
      for (int p = q + 1; p < n; ++p) chi1 -= (p % 2 ? -1 : 1) * bd[static_cast<std::size_t>(p)] * binomial(n, q);
      via.push_back((q % 2 ? -1 : 1) * chi1);
      if (via.back() != pg.e1plus.at(q, q)) c.pass = false;
    }
    std::vector<long long> b = pg.e1plus.border();
    b.pop_back();
    c.detail = "formula=" + join_ll(b) + " euler=" + join_ll(via);
    out.push_back(c);
  }
  {
    IdentityCheck c{"border_sheaf_path", true, ctx.have_sheaf_path, ""};
    if (ctx.have_sheaf_path) {
      std::vector<long long> sb, fb;
      for (int p = 0; p < n; ++p)
        for (int q = 0; q <= n; ++q)
          if (ctx.sheaf[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] != pg.e1plus.at(p, q)) c.pass = false;
      for (int q = 0; q < n; ++q) {
        sb.push_back(ctx.sheaf[static_cast<std::size_t>(q)][static_cast<std::size_t>(q)]);
        fb.push_back(pg.e1plus.at(q, q));
      }
      c.detail = "sheaf=" + join_ll(sb) + " closed_form=" + join_ll(fb);
    } else {
      c.detail = "needs the cone case and a characteristic map";
    }
    out.push_back(c);
  }
  {
    IdentityCheck c{"above_border_vanishes", true, true, ""};
    for (const auto* page : {&pg.e1plus, &pg.e2, &pg.einf})
      for (int p = 0; p <= n; ++p)
        for (int q = p + 1; q <= n; ++q)
          if (page->at(p, q) != 0) c.pass = false;
    out.push_back(c);
  }
  {
    IdentityCheck c{"manifold_border_h1", true, ctx.manifold, ""};
    if (ctx.manifold) {
      std::vector<long long> want;
      for (int q = 0; q < n; ++q) want.push_back(q <= n - 2 ? v.h1[static_cast<std::size_t>(n - q)] : v.h1[1] + n);
      std::vector<long long> got = pg.e1plus.border();
      got.pop_back();
      c.pass = got == want;
      c.detail = "E1+ border=" + join_ll(got) + " h'-prediction=" + join_ll(want);
    } else {
      c.detail = "S is not a homology manifold";
    }
    out.push_back(c);
  }
  {
    bool hyp = ctx.manifold && prof.rel(n) == 1 && prof.delta(n) == 1;
    IdentityCheck c{"e2_border_h1_reversed", true, hyp, ""};
    if (hyp) {
      std::vector<long long> want;
      for (int q = 0; q <= n; ++q) want.push_back(v.h1[static_cast<std::size_t>(n - q)]);
      c.pass = pg.e2.border() == want;
      c.detail = "E2 border=" + join_ll(pg.e2.border()) + " h' reversed=" + join_ll(want);
    } else {
      c.detail = "needs a manifold with H_n(Q,dQ)=k and delta_n injective";
    }
    out.push_back(c);
  }
  {
    IdentityCheck c{"einf_border_h2", true, ctx.cone, ""};
    if (ctx.cone) {
      c.pass = pg.einf.border() == v.h2;
      c.detail = "Einf border=" + join_ll(pg.einf.border()) + " h''=" + join_ll(v.h2);
    } else {
      c.detail = "cone case only";
    }
    out.push_back(c);
  }
  {
    IdentityCheck c{"border_nonnegative", true, true, join_ll(pg.einf.border())};
    for (auto x : pg.einf.border()) if (x < 0) c.pass = false;
    for (const auto* page : {&pg.e1plus, &pg.e2, &pg.einf})
      for (const auto& row : page->dims)
        for (auto x : row) if (x < 0) c.pass = false;
    out.push_back(c);
  }
  {
    IdentityCheck c{"column_n_total", true, true, ""};
    long long total = 0, want = 0;
    for (int q = -n; q <= n; ++q) total += pg.e1plus.at(n, q);
    for (int i = 0; i <= n; ++i) want += prof.rel(i) * (1LL << n);
    c.pass = total == want;
    c.detail = std::to_string(total) + " vs " + std::to_string(want);
    out.push_back(c);
  }
  {
    IdentityCheck c{"euler_characteristic", true, true, ""};
    long long from_e1 = euler_from_page(pg.e1);
    long long from_h = 0;
    for (std::size_t k = 0; k < bt.totals.size(); ++k) from_h += (k % 2 ? -1 : 1) * bt.totals[k];
    c.pass = from_e1 == from_h && euler_from_page(pg.einf) == from_h;
    c.detail = "E1=" + std::to_string(from_e1) + " H=" + std::to_string(from_h);
    out.push_back(c);
  }
  {
    IdentityCheck c{"bigraded_totals_vs_einf", true, true, ""};
    // sum over the E-infinity antidiagonal p + q = k plus the extension terms in row/column bookkeeping
    std::vector<long long> tot(2 * static_cast<std::size_t>(n) + 1, 0);
    for (int p = 0; p <= n; ++p)
      for (int q = -n; q <= n; ++q)
        if (p + q >= 0 && p + q <= 2 * n) tot[static_cast<std::size_t>(p + q)] += pg.einf.at(p, q);
    c.pass = tot == bt.totals;
    c.detail = "Einf=" + join_ll(tot) + " H=" + join_ll(bt.totals);
    out.push_back(c);
  }
  {
    bool sym = true;
    for (int i = 0; i <= n; ++i)
      if (prof.abs(i) != prof.rel(n - i)) sym = false;
    IdentityCheck c{"bigraded_duality", true, sym, ""};
    if (sym) {
      for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
          if (bt.h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != bt.h[static_cast<std::size_t>(n - i)][static_cast<std::size_t>(n - j)]) c.pass = false;
    } else {
      c.detail = "profile lacks b_i(Q) = b_{n-i}(Q,dQ)";
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace torusspace
