#pragma once

#include "torusspace/field.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace torusspace {

template <class F>
class Matrix {
 public:
  using Element = typename F::Element;

  Matrix() : field_() {}
  explicit Matrix(F field) : field_(std::move(field)) {}
  Matrix(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

  static Matrix identity(const F& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  static Matrix from_ints(const F& field, const std::vector<std::vector<long long>>& rows) {
    std::size_t c = rows.empty() ? 0 : rows.front().size();
    Matrix m(field, rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw std::invalid_argument("ragged matrix literal");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = field.from_int(rows[i][j]);
    }
    return m;
  }

  // columns given as vectors of length `ambient`
  static Matrix from_columns(const F& field, std::size_t ambient, const std::vector<std::vector<Element>>& cols) {
    Matrix m(field, ambient, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != ambient) throw std::invalid_argument("column length mismatch");
      for (std::size_t i = 0; i < ambient; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Element& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Element& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<Element> column(std::size_t j) const {
    std::vector<Element> v(rows_, field_.zero());
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  std::vector<Element> row(std::size_t i) const {
    return std::vector<Element>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!field_.is_zero(x)) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix r(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Element& a = (*this)(i, k);
        if (field_.is_zero(a)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) {
          const Element& b = o(k, j);
          if (field_.is_zero(b)) continue;
          r(i, j) = field_.add(r(i, j), field_.mul(a, b));
        }
      }
    return r;
  }

  std::vector<Element> apply(const std::vector<Element>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix-vector shape mismatch");
    std::vector<Element> r(rows_, field_.zero());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Element& a = (*this)(i, k);
        if (field_.is_zero(a) || field_.is_zero(v[k])) continue;
        r[i] = field_.add(r[i], field_.mul(a, v[k]));
      }
    return r;
  }

  Matrix operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum shape mismatch");
    Matrix r(*this);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = field_.add(data_[i], o.data_[i]);
    return r;
  }

  Matrix scaled(const Element& s) const {
    Matrix r(*this);
    for (auto& x : r.data_) x = field_.mul(x, s);
    return r;
  }

  bool operator==(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t i = 0; i < data_.size(); ++i)
      if (!field_.equal(data_[i], o.data_[i])) return false;
    return true;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  // Kronecker product, (a ⊗ b) index = ia * rows(b) + ib
  Matrix kron(const Matrix& b) const {
    Matrix r(field_, rows_ * b.rows_, cols_ * b.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) {
        const Element& a = (*this)(i, j);
        if (field_.is_zero(a)) continue;
        for (std::size_t k = 0; k < b.rows_; ++k)
          for (std::size_t l = 0; l < b.cols_; ++l)
            r(i * b.rows_ + k, j * b.cols_ + l) = field_.mul(a, b(k, l));
      }
    return r;
  }

  Matrix columns(const std::vector<std::size_t>& idx) const {
    Matrix r(field_, rows_, idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j)
      for (std::size_t i = 0; i < rows_; ++i) r(i, j) = (*this)(i, idx[j]);
    return r;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  std::string to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << field_.format((*this)(i, j));
      os << "]";
    }
    os << "]";
    return os.str();
  }

 private:
  F field_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Element> data_;
};

template <class F>
Matrix<F> hcat(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hcat row mismatch");
  Matrix<F> r(a.field(), a.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(0, a.cols(), b);
  return r;
}

template <class F>
Matrix<F> vcat(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("vcat column mismatch");
  Matrix<F> r(a.field(), a.rows() + b.rows(), a.cols());
  r.set_block(0, 0, a);
  r.set_block(a.rows(), 0, b);
  return r;
}

template <class F>
struct RowEchelon {
  Matrix<F> reduced;
  std::vector<std::size_t> pivots;  // pivot column of row r, r < rank
  std::size_t rank() const { return pivots.size(); }
};

// Gauss-Jordan; rows are scanned sparsely since most of our matrices are
// incidence-like.
template <class F>
RowEchelon<F> rref(Matrix<F> m) {
  const F& k = m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && k.is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = c; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    auto inv = k.inv(m(r, c));
    std::vector<std::size_t> nz;
    for (std::size_t j = c; j < m.cols(); ++j)
      if (!k.is_zero(m(r, j))) {
        m(r, j) = k.mul(m(r, j), inv);
        nz.push_back(j);
      }
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || k.is_zero(m(i, c))) continue;
      auto factor = m(i, c);
      for (std::size_t j : nz) m(i, j) = k.sub(m(i, j), k.mul(factor, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

template <class F>
std::size_t rank(const Matrix<F>& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  // eliminate along the shorter side
  if (m.rows() > m.cols()) return rref(m.transpose()).rank();
  return rref(m).rank();
}

template <class F>
struct SubspaceBasis {
  std::size_t ambient_dim = 0;
  Matrix<F> basis;  // ambient_dim x dim, independent columns

  std::size_t dim() const { return basis.cols(); }
  std::vector<typename F::Element> vector(std::size_t j) const { return basis.column(j); }
};

template <class F>
SubspaceBasis<F> whole_space(const F& field, std::size_t n) {
  return {n, Matrix<F>::identity(field, n)};
}

template <class F>
SubspaceBasis<F> zero_space(const F& field, std::size_t n) {
  return {n, Matrix<F>(field, n, 0)};
}

// Independent columns of m, chosen greedily left to right.
template <class F>
SubspaceBasis<F> column_span(const Matrix<F>& m) {
  auto e = rref(m);
  return {m.rows(), m.columns(e.pivots)};
}

template <class F>
Matrix<F> kernel_basis(const Matrix<F>& m) {
  const F& k = m.field();
  auto e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free.push_back(c);
  Matrix<F> ker(k, m.cols(), free.size());
  for (std::size_t t = 0; t < free.size(); ++t) {
    ker(free[t], t) = k.one();
    for (std::size_t r = 0; r < e.pivots.size(); ++r) ker(e.pivots[r], t) = k.neg(e.reduced(r, free[t]));
  }
  return ker;
}

template <class F>
struct RankKernelImage {
  std::size_t rank = 0;
  SubspaceBasis<F> kernel;
  SubspaceBasis<F> image;
};

template <class F>
RankKernelImage<F> rank_kernel_image(const Matrix<F>& m) {
  auto e = rref(m);
  RankKernelImage<F> out;
  out.rank = e.rank();
  out.kernel = {m.cols(), kernel_basis(m)};
  out.image = {m.rows(), m.columns(e.pivots)};
  return out;
}

// A quotient space/subspace with a chosen complement basis. Coordinates of any
// vector in `space` are read off by one precomputed left inverse.
template <class F>
class QuotientSpace {
 public:
  using Element = typename F::Element;

  QuotientSpace() = default;

  QuotientSpace(const SubspaceBasis<F>& space, const SubspaceBasis<F>& sub) : ambient_(space.ambient_dim) {
    if (sub.ambient_dim != space.ambient_dim) throw std::invalid_argument("quotient: ambient mismatch");
    const F& k = space.basis.field();
    auto joint = hcat(sub.basis, space.basis);
    auto e = rref(joint);
    if (e.rank() != space.dim()) throw std::invalid_argument("quotient: subspace not contained in space");
    for (std::size_t r = 0; r < sub.dim(); ++r)
      if (r >= e.pivots.size() || e.pivots[r] != r) throw std::invalid_argument("quotient: subspace basis dependent");
    std::vector<std::size_t> reps;
    for (auto c : e.pivots)
      if (c >= sub.dim()) reps.push_back(c - sub.dim());
    sub_ = sub.basis;
    reps_ = space.basis.columns(reps);
    auto b = hcat(sub_, reps_);
    auto aug = rref(hcat(b, Matrix<F>::identity(k, ambient_)));
    solver_ = Matrix<F>(k, ambient_, ambient_);
    for (std::size_t i = 0; i < ambient_; ++i)
      for (std::size_t j = 0; j < ambient_; ++j) solver_(i, j) = aug.reduced(i, b.cols() + j);
    field_ = k;
    has_field_ = true;
  }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return reps_.cols(); }
  std::size_t sub_dim() const { return sub_.cols(); }
  const Matrix<F>& representatives() const { return reps_; }
  const Matrix<F>& sub_basis() const { return sub_; }

  // full coordinates (sub part first, then quotient part); nullopt if v is
  // outside the space
  std::optional<std::vector<Element>> full_coordinates(const std::vector<Element>& v) const {
    if (v.size() != ambient_) throw std::invalid_argument("quotient: vector length mismatch");
    if (ambient_ == 0) return std::vector<Element>{};
    auto w = solver_.apply(v);
    std::size_t k = sub_.cols() + reps_.cols();
    for (std::size_t i = k; i < ambient_; ++i)
      if (!field_.is_zero(w[i])) return std::nullopt;
    w.resize(k);
    return w;
  }

  std::optional<std::vector<Element>> coordinates(const std::vector<Element>& v) const {
    auto full = full_coordinates(v);
    if (!full) return std::nullopt;
    return std::vector<Element>(full->begin() + sub_.cols(), full->end());
  }

 private:
  std::size_t ambient_ = 0;
  Matrix<F> sub_, reps_, solver_;
  F field_{};
  bool has_field_ = false;
};

// The map induced on quotients by f: src.space -> dst.space.
template <class F>
Matrix<F> induced_quotient_map(const Matrix<F>& f, const QuotientSpace<F>& src, const QuotientSpace<F>& dst) {
  if (f.cols() != src.ambient_dim() || f.rows() != dst.ambient_dim())
    throw std::invalid_argument("induced_quotient_map: shape mismatch");
  const F& k = f.field();
  for (std::size_t j = 0; j < src.sub_dim(); ++j) {
    auto c = dst.full_coordinates(f.apply(src.sub_basis().column(j)));
    if (!c) throw std::invalid_argument("induced_quotient_map: subspace not mapped into target space");
    for (std::size_t i = dst.sub_dim(); i < c->size(); ++i)
      if (!k.is_zero((*c)[i])) throw std::invalid_argument("induced_quotient_map: subspace not mapped into subspace");
  }
  Matrix<F> out(k, dst.dim(), src.dim());
  for (std::size_t j = 0; j < src.dim(); ++j) {
    auto c = dst.coordinates(f.apply(src.representatives().column(j)));
    if (!c) throw std::invalid_argument("induced_quotient_map: space not mapped into target space");
    for (std::size_t i = 0; i < dst.dim(); ++i) out(i, j) = (*c)[i];
  }
  return out;
}

}  // namespace torusspace
