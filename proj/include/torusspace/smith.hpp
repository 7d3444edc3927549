#pragma once

#include "torusspace/field.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace torusspace {

using IntMatrix = std::vector<std::vector<Integer>>;

// Invariant factors d1 | d2 | ... of the Smith normal form, min(rows, cols)
// entries, zeros last.
inline std::vector<Integer> smith_invariants(IntMatrix a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  for (const auto& r : a)
    if (r.size() != cols) throw std::invalid_argument("smith_invariants: ragged matrix");
  const std::size_t steps = std::min(rows, cols);
  std::vector<Integer> d;

  for (std::size_t t = 0; t < steps; ++t) {
    for (;;) {
      // smallest nonzero entry of the trailing block goes to (t,t)
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a[i][j] != 0 && (pi == rows || abs(a[i][j]) < abs(a[pi][pj]))) { pi = i; pj = j; }
      if (pi == rows) {
        d.resize(steps, Integer(0));
        return d;
      }
      std::swap(a[t], a[pi]);
      for (auto& r : a) std::swap(r[t], r[pj]);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        Integer q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        Integer q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;

      // divisibility: fold an offending row into row t and go again
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a[i][j] % a[t][t] != 0) { bad = i; break; }
      if (bad == rows) break;
      for (std::size_t j = t; j < cols; ++j) a[t][j] += a[bad][j];
    }
    d.push_back(abs(a[t][t]));
  }
  return d;
}

}  // namespace torusspace
