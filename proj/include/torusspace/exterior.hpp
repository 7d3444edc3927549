#pragma once

#include "torusspace/matrix.hpp"

#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace torusspace {

inline long long binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Exterior algebra on e_1..e_n. Subsets are bitmasks (bit j-1 <-> e_j);
// Lambda^(q) has basis the q-subsets in increasing mask order.
class ExteriorAlgebra {
 public:
  explicit ExteriorAlgebra(int n) : n_(n) {
    if (n < 0 || n > 16) throw std::invalid_argument("exterior algebra rank out of range");
    basis_.assign(static_cast<std::size_t>(n + 2), {});
    index_.assign(std::size_t{1} << n, 0);
    for (std::uint32_t m = 0; m < (1u << n); ++m) {
      auto q = static_cast<std::size_t>(std::popcount(m));
      index_[m] = basis_[q].size();
      basis_[q].push_back(m);
    }
  }

  int n() const { return n_; }
  std::size_t dim(int q) const { return (q < 0 || q > n_) ? 0 : basis_[static_cast<std::size_t>(q)].size(); }
  const std::vector<std::uint32_t>& subsets(int q) const {
    static const std::vector<std::uint32_t> none;
    return (q < 0 || q > n_) ? none : basis_[static_cast<std::size_t>(q)];
  }
  std::size_t index(std::uint32_t mask) const { return index_.at(mask); }

  // e_A ^ e_B = sign * e_{A u B}, or 0 when they meet
  static int wedge_sign(std::uint32_t a, std::uint32_t b) {
    if (a & b) return 0;
    int inversions = 0;
    for (std::uint32_t bb = b; bb; bb &= bb - 1) {
      int j = std::countr_zero(bb);
      inversions += std::popcount(a >> (j + 1));  // elements of A above j
    }
    return inversions % 2 ? -1 : 1;
  }

  // x in degree p, y in degree q, result in degree p+q
  template <class F>
  std::vector<typename F::Element> wedge(const F& k, int p, const std::vector<typename F::Element>& x, int q,
                                         const std::vector<typename F::Element>& y) const {
    std::vector<typename F::Element> out(dim(p + q), k.zero());
    if (dim(p + q) == 0) return out;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (k.is_zero(x[i])) continue;
      for (std::size_t j = 0; j < y.size(); ++j) {
        if (k.is_zero(y[j])) continue;
        std::uint32_t a = basis_[p][i], b = basis_[q][j];
        int s = wedge_sign(a, b);
        if (s == 0) continue;
        auto& slot = out[index_[a | b]];
        slot = k.add(slot, k.mul(k.from_int(s), k.mul(x[i], y[j])));
      }
    }
    return out;
  }

  template <class F>
  std::vector<typename F::Element> basis_vector(const F& k, std::uint32_t mask) const {
    std::vector<typename F::Element> v(dim(std::popcount(mask)), k.zero());
    v[index_.at(mask)] = k.one();
    return v;
  }

 private:
  int n_;
  std::vector<std::vector<std::uint32_t>> basis_;
  std::vector<std::size_t> index_;
};

}  // namespace torusspace
