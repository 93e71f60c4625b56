#include "homalg/matrix.hpp"

#include <algorithm>

namespace homalg {

SparseVec sparse_add(const SparseVec& a, const SparseVec& b, const Rational& scale_b) {
  SparseVec r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      r.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      Rational v = b[j].second * scale_b;
      if (v != 0) r.emplace_back(b[j].first, v);
      ++j;
    } else {
      Rational v = a[i].second + b[j].second * scale_b;
      if (v != 0) r.emplace_back(a[i].first, v);
      ++i;
      ++j;
    }
  }
  return r;
}

void SparseMatrix::add(std::size_t i, std::size_t j, const Rational& v) {
  if (v == 0) return;
  auto& row = rows_[i];
  auto it = std::lower_bound(row.begin(), row.end(), static_cast<int>(j),
                             [](const auto& p, int c) { return p.first < c; });
  if (it != row.end() && it->first == static_cast<int>(j)) {
    it->second += v;
    if (it->second == 0) row.erase(it);
  } else {
    row.insert(it, {static_cast<int>(j), v});
  }
}

SparseVec SparseMatrix::apply(const SparseVec& v) const {
  SparseVec out;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    Rational acc(0);
    const auto& r = rows_[i];
    std::size_t a = 0, b = 0;
    while (a < r.size() && b < v.size()) {
      if (r[a].first < v[b].first) ++a;
      else if (v[b].first < r[a].first) ++b;
      else acc += r[a++].second * v[b++].second;
    }
    if (acc != 0) out.emplace_back(static_cast<int>(i), acc);
  }
  return out;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(cols_, rows());
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (const auto& [j, v] : rows_[i]) t.rows_[j].emplace_back(static_cast<int>(i), v);
  return t;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& o) const {
  if (cols_ != o.rows()) throw Error("sparse product: dimension mismatch");
  SparseMatrix r(rows(), o.cols());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    SparseVec acc;
    for (const auto& [k, v] : rows_[i]) acc = sparse_add(acc, o.rows_[k], v);
    r.rows_[i] = std::move(acc);
  }
  return r;
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix& o) const {
  if (rows() != o.rows() || cols_ != o.cols_) throw Error("sparse difference: dimension mismatch");
  SparseMatrix r(rows(), cols_);
  for (std::size_t i = 0; i < rows_.size(); ++i)
    r.rows_[i] = sparse_add(rows_[i], o.rows_[i], Rational(-1));
  return r;
}

}  // namespace homalg
