#ifndef HOMALG_MATRIX_HPP
#define HOMALG_MATRIX_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "homalg/rational.hpp"

namespace homalg {

using Vec = std::vector<Rational>;

// Dense row-major matrix over Q.
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw Error("matrix product: dimension mismatch");
    Matrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Rational& a = (*this)(i, k);
        if (a == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) {
          if (o(k, j) == 0) continue;
          r(i, j) += a * o(k, j);
        }
      }
    return r;
  }

  Matrix operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix sum: dimension mismatch");
    Matrix r(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] + o.data_[i];
    return r;
  }

  Matrix operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix difference: dimension mismatch");
    Matrix r(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] - o.data_[i];
    return r;
  }

  Vec apply(const Vec& v) const {
    if (v.size() != cols_) throw Error("matrix apply: dimension mismatch");
    Vec r(rows_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(i, j) != 0 && v[j] != 0) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (x != 0) return false;
    return true;
  }

  Vec row(std::size_t i) const {
    return Vec(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }

  void set_row(std::size_t i, const Vec& v) {
    for (std::size_t j = 0; j < cols_; ++j) data_[i * cols_ + j] = v[j];
  }

  Vec col(std::size_t j) const {
    Vec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

 private:
  std::size_t rows_, cols_;
  Vec data_;
};

// Sorted (index, value) pairs, zero values dropped.
using SparseVec = std::vector<std::pair<int, Rational>>;

inline SparseVec sparse_of(const Vec& v) {
  SparseVec s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) s.emplace_back(static_cast<int>(i), v[i]);
  return s;
}

inline Vec dense_of(const SparseVec& s, std::size_t n) {
  Vec v(n, Rational(0));
  for (const auto& [i, x] : s) v[i] = x;
  return v;
}

SparseVec sparse_add(const SparseVec& a, const SparseVec& b, const Rational& scale_b);

// Row-oriented sparse matrix.
class SparseMatrix {
 public:
  SparseMatrix() : cols_(0) {}
  SparseMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

  static SparseMatrix identity(std::size_t n) {
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.add(i, i, Rational(1));
    return m;
  }

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  void add(std::size_t i, std::size_t j, const Rational& v);

  const SparseVec& row(std::size_t i) const { return rows_[i]; }
  void set_row(std::size_t i, SparseVec r) { rows_[i] = std::move(r); }
  void append_row(SparseVec r) { rows_.push_back(std::move(r)); }

  Matrix to_dense() const {
    Matrix m(rows(), cols_);
    for (std::size_t i = 0; i < rows(); ++i)
      for (const auto& [j, v] : rows_[i]) m(i, j) = v;
    return m;
  }

  static SparseMatrix from_dense(const Matrix& m) {
    SparseMatrix s(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) s.rows_[i] = sparse_of(m.row(i));
    return s;
  }

  SparseVec apply(const SparseVec& v) const;  // treats rows as linear forms: (Mv)_i = row_i . v
  SparseMatrix transpose() const;
  SparseMatrix operator*(const SparseMatrix& o) const;
  SparseMatrix operator-(const SparseMatrix& o) const;
  bool is_zero() const {
    for (const auto& r : rows_)
      if (!r.empty()) return false;
    return true;
  }
  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
  }

 private:
  std::size_t cols_;
  std::vector<SparseVec> rows_;
};

}  // namespace homalg

#endif
