#pragma once

#include "torusspace/complexes.hpp"
#include "torusspace/exterior.hpp"

#include <string>
#include <vector>

namespace torusspace {

using Poly = std::vector<long long>;  // coefficient of t^i at index i

inline Poly poly_trim(Poly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}
inline Poly poly_add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}
inline Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}
inline Poly poly_scale(const Poly& a, long long c) {
  Poly r = a;
  for (auto& x : r) x *= c;
  return r;
}
inline Poly poly_pow(const Poly& a, int e) {
  Poly r{1};
  for (int i = 0; i < e; ++i) r = poly_mul(r, a);
  return r;
}
inline bool poly_equal(const Poly& a, const Poly& b) { return poly_trim(a) == poly_trim(b); }

struct FaceVectors {
  int n = 0;
  std::vector<long long> f;      // f_{-1} .. f_{n-1}
  std::vector<long long> h;      // h_0 .. h_n
  std::vector<long long> h1;     // h'
  std::vector<long long> h2;     // h''
  std::vector<long long> ft;     // f~_0 .. f~_{n-1}
  std::vector<long long> bt;     // reduced Betti b~_0 .. b~_{n-1}
  long long chi = 0, chi_reduced = 0;
};

// sum h_i t^i = sum f_{i-1} t^i (1-t)^{n-i}
inline std::vector<long long> h_from_f(const std::vector<long long>& f) {
  int n = static_cast<int>(f.size()) - 1;
  Poly acc;
  for (int i = 0; i <= n; ++i) {
    Poly term(static_cast<std::size_t>(i) + 1, 0);
    term[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>(i)];
    acc = poly_add(acc, poly_mul(term, poly_pow({1, -1}, n - i)));
  }
  acc.resize(static_cast<std::size_t>(n) + 1, 0);
  return acc;
}

// inverse: f_{k-1} = sum_{i<=k} C(n-i, k-i) h_i
inline std::vector<long long> f_from_h(const std::vector<long long>& h) {
  int n = static_cast<int>(h.size()) - 1;
  std::vector<long long> f(static_cast<std::size_t>(n) + 1, 0);
  for (int k = 0; k <= n; ++k)
    for (int i = 0; i <= k; ++i) f[static_cast<std::size_t>(k)] += binomial(n - i, k - i) * h[static_cast<std::size_t>(i)];
  return f;
}

template <class F>
std::vector<long long> reduced_betti(const F& k, const SimplicialPoset& s) {
  auto h = homology_dims(cellular_chain_complex(k, s, std::nullopt, true));  // degrees -1 .. n-1
  std::vector<long long> out;
  for (std::size_t i = 1; i < h.size(); ++i) out.push_back(static_cast<long long>(h[i]));
  return out;
}

template <class F>
FaceVectors face_vectors(const F& k, const SimplicialPoset& s) {
  FaceVectors v;
  v.n = s.max_rank();
  int n = v.n;
  v.f = face_counts(s);
  v.h = h_from_f(v.f);
  v.bt = reduced_betti(k, s);
  v.bt.resize(static_cast<std::size_t>(std::max(n, 1)), 0);
  v.chi = euler_characteristic(s);
  v.chi_reduced = v.chi - 1;
  auto bt = [&](int j) -> long long { return j < 0 || j >= n ? 0 : v.bt[static_cast<std::size_t>(j)]; };
  for (int i = 0; i <= n; ++i) {
    long long corr = 0;
    for (int j = 1; j <= i - 1; ++j) corr += ((i - j - 1) % 2 ? -1 : 1) * bt(j - 1);
    v.h1.push_back(v.h[static_cast<std::size_t>(i)] + binomial(n, i) * corr);
  }
  for (int i = 0; i <= n; ++i)
    v.h2.push_back(i == n ? v.h1[static_cast<std::size_t>(n)] : v.h1[static_cast<std::size_t>(i)] - binomial(n, i) * bt(i - 1));
  v.ft.assign(static_cast<std::size_t>(n), 0);
  for (std::size_t x = 1; x < s.size(); ++x) {
    int xi = static_cast<int>(x);
    auto lh = link_reduced_homology(k, s, xi);
    std::size_t top = static_cast<std::size_t>(n - 1 - s.rank(xi) + 1);
    if (top < lh.size()) v.ft[static_cast<std::size_t>(s.dim_of(xi))] += static_cast<long long>(lh[top]);
  }
  return v;
}

struct IdentityCheck {
  std::string name;
  bool pass = true;
  bool applicable = true;
  std::string detail;
};

inline std::string join_ll(const std::vector<long long>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

// f_S(t) = (1 - chi) + (-1)^n sum_k f~_k (-t-1)^{k+1}, and the coefficientwise h identity
inline std::vector<IdentityCheck> ft_consistency_check(const FaceVectors& v) {
  int n = v.n;
  Poly lhs(v.f.begin(), v.f.end());
  Poly rhs{1 - v.chi};
  for (int k = 0; k < n; ++k)
    rhs = poly_add(rhs, poly_scale(poly_pow({-1, -1}, k + 1), (n % 2 ? -1 : 1) * v.ft[static_cast<std::size_t>(k)]));
  IdentityCheck poly{"f_polynomial_from_ft", poly_equal(lhs, rhs), true, "lhs=" + join_ll(poly_trim(lhs)) + " rhs=" + join_ll(poly_trim(rhs))};
  std::vector<long long> hh;
  for (int i = 0; i <= n; ++i) {
    long long x = (1 - v.chi) * (i % 2 ? -1 : 1) * binomial(n, i);
    for (int k = 0; k < n; ++k) x += ((n - k - i - 1) % 2 ? -1 : 1) * binomial(n - k - 1, i) * v.ft[static_cast<std::size_t>(k)];
    hh.push_back(x);
  }
  IdentityCheck coeff{"h_from_ft", hh == v.h, true, "h=" + join_ll(v.h) + " from f~=" + join_ll(hh)};
  return {poly, coeff};
}

// needs every h0 stalk to be one-dimensional; the h'' symmetry additionally needs a homology manifold
inline std::vector<IdentityCheck> dehn_sommerville_check(const FaceVectors& v, bool unit_stalks, bool manifold) {
  int n = v.n;
  IdentityCheck ds{"dehn_sommerville", true, unit_stalks, ""};
  if (unit_stalks) {
    for (int i = 0; i <= n; ++i) {
      long long rhs = v.h[static_cast<std::size_t>(n - i)] + (i % 2 ? -1 : 1) * binomial(n, i) * (1 + (n % 2 ? -1 : 1) * v.chi_reduced);
      if (v.h[static_cast<std::size_t>(i)] != rhs) {
        ds.pass = false;
        ds.detail += "i=" + std::to_string(i) + ": " + std::to_string(v.h[static_cast<std::size_t>(i)]) + " != " + std::to_string(rhs) + "; ";
      }
    }
    if (ds.pass) ds.detail = "h=" + join_ll(v.h) + " chi~=" + std::to_string(v.chi_reduced);
  } else {
    ds.detail = "some h0 stalk has dimension != 1";
  }
  // h'' is palindromic only for connected orientable manifolds
  bool connected = v.bt.empty() || v.bt[0] == 0;
  IdentityCheck sym{"h2_symmetry", true, manifold && connected, "h''=" + join_ll(v.h2)};
  if (sym.applicable)
    for (int i = 0; i <= n; ++i)
      if (v.h2[static_cast<std::size_t>(i)] != v.h2[static_cast<std::size_t>(n - i)]) sym.pass = false;
  return {ds, sym};
}

inline std::vector<IdentityCheck> face_vector_invariants(const FaceVectors& v) {
  int n = v.n;
  std::vector<IdentityCheck> out;
  out.push_back({"f_h_round_trip", f_from_h(v.h) == v.f, true, ""});
  long long hn = v.h[static_cast<std::size_t>(n)];
  out.push_back({"h_n_equals_signed_chi", hn == ((n - 1) % 2 ? -1 : 1) * v.chi_reduced, true,
                 "h_n=" + std::to_string(hn) + " chi~=" + std::to_string(v.chi_reduced)});
  long long top = n >= 1 ? v.bt[static_cast<std::size_t>(n - 1)] : 0;
  out.push_back({"h1_n_equals_top_betti", v.h1[static_cast<std::size_t>(n)] == top && v.h2[static_cast<std::size_t>(n)] == top, true, ""});
  return out;
}

}  // namespace torusspace
