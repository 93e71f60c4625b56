#include "homalg/linalg.hpp"

#include <algorithm>
#include <map>

namespace homalg {

namespace {

using ZVec = std::vector<mpz_class>;

// Clears denominators of a rational row and removes the content.
ZVec integer_row(const Vec& row) {
  mpz_class l(1);
  for (const auto& x : row)
    if (x != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
  ZVec z(row.size());
  mpz_class g(0);
  for (std::size_t j = 0; j < row.size(); ++j) {
    Rational v = row[j] * Rational(l);
    z[j] = v.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z[j].get_mpz_t());
  }
  if (g > 1)
    for (auto& x : z) x /= g;
  return z;
}

}  // namespace

RrefResult rref(const Matrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<ZVec> a(rows);
  for (std::size_t i = 0; i < rows; ++i) a[i] = integer_row(m.row(i));

  // Fraction-free (Bareiss) forward elimination.
  std::vector<int> pivots;
  mpz_class prev(1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t best = rows;
    for (std::size_t i = r; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      if (best == rows || mpz_cmpabs(a[i][c].get_mpz_t(), a[best][c].get_mpz_t()) < 0) best = i;
    }
    if (best == rows) continue;
    std::swap(a[r], a[best]);
    const mpz_class pivot = a[r][c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a[i][c] == 0) {
        if (prev != 1)
          for (std::size_t j = c; j < cols; ++j) {
            // Bareiss update with zero multiplier still divides by prev.
            mpz_class t = a[i][j] * pivot;
            mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
          }
        else
          for (std::size_t j = c; j < cols; ++j) a[i][j] *= pivot;
        continue;
      }
      const mpz_class mult = a[i][c];
      for (std::size_t j = c; j < cols; ++j) {
        mpz_class t = a[i][j] * pivot - mult * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = pivot;
    pivots.push_back(static_cast<int>(c));
    ++r;
  }

  // Normalize pivot rows and back-substitute over Q.
  Matrix red(rows, cols);
  for (std::size_t i = 0; i < r; ++i) {
    const int p = pivots[i];
    Rational inv = Rational(1) / Rational(a[i][p]);
    for (std::size_t j = p; j < cols; ++j)
      if (a[i][j] != 0) red(i, j) = Rational(a[i][j]) * inv;
  }
  for (std::size_t i = r; i-- > 0;) {
    for (std::size_t k = i + 1; k < r; ++k) {
      const int p = pivots[k];
      const Rational f = red(i, p);
      if (f == 0) continue;
      for (std::size_t j = p; j < cols; ++j)
        if (red(k, j) != 0) red(i, j) -= f * red(k, j);
    }
  }
  return {std::move(red), r, std::move(pivots)};
}

Subspace kernel_basis(const Matrix& m) {
  auto rr = rref(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (int p : rr.pivots) is_pivot[p] = true;
  Subspace s;
  s.ambient_dim = cols;
  std::vector<int> free_cols;
  for (std::size_t j = 0; j < cols; ++j)
    if (!is_pivot[j]) free_cols.push_back(static_cast<int>(j));
  s.basis = Matrix(free_cols.size(), cols);
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const int f = free_cols[k];
    s.basis(k, f) = 1;
    for (std::size_t i = 0; i < rr.rank; ++i) s.basis(k, rr.pivots[i]) = -rr.reduced(i, f);
  }
  return s;
}

Subspace image_basis(const Matrix& m) {
  auto rr = rref(m.transpose());
  Subspace s;
  s.ambient_dim = m.rows();
  s.basis = Matrix(rr.rank, m.rows());
  for (std::size_t i = 0; i < rr.rank; ++i) s.basis.set_row(i, rr.reduced.row(i));
  return s;
}

std::optional<Vec> solve(const Matrix& m, const Vec& b) {
  if (b.size() != m.rows()) throw Error("solve: right-hand side length mismatch");
  Matrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  auto rr = rref(aug);
  Vec x(m.cols(), Rational(0));
  for (std::size_t i = 0; i < rr.rank; ++i) {
    if (rr.pivots[i] == static_cast<int>(m.cols())) return std::nullopt;
    x[rr.pivots[i]] = rr.reduced(i, m.cols());
  }
  return x;
}

Matrix inverse(const Matrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw Error("inverse: matrix is not square");
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto rr = rref(aug);
  for (std::size_t i = 0; i < n; ++i)
    if (rr.rank != n || rr.pivots[i] != static_cast<int>(i))
      throw Error("inverse: matrix is singular");
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = rr.reduced(i, n + j);
  return out;
}

bool subspace_contains(const Subspace& sub, const Vec& v) {
  if (v.size() != sub.ambient_dim) throw Error("subspace_contains: dimension mismatch");
  Matrix stacked(sub.dim() + 1, sub.ambient_dim);
  for (std::size_t i = 0; i < sub.dim(); ++i) stacked.set_row(i, sub.basis.row(i));
  stacked.set_row(sub.dim(), v);
  return rref(stacked).rank == rref(sub.basis).rank;
}

bool subspace_equal(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim != b.ambient_dim) return false;
  const std::size_t ra = rref(a.basis).rank, rb = rref(b.basis).rank;
  if (ra != rb) return false;
  Matrix stacked(a.dim() + b.dim(), a.ambient_dim);
  for (std::size_t i = 0; i < a.dim(); ++i) stacked.set_row(i, a.basis.row(i));
  for (std::size_t i = 0; i < b.dim(); ++i) stacked.set_row(a.dim() + i, b.basis.row(i));
  return rref(stacked).rank == ra;
}

std::size_t quotient_dim(const Subspace& sub, const Subspace& ambient) {
  for (std::size_t i = 0; i < sub.dim(); ++i)
    if (!subspace_contains(ambient, sub.basis.row(i)))
      throw ValidationError("quotient_dim: subspace not contained in ambient");
  return rref(ambient.basis).rank - rref(sub.basis).rank;
}

// ---- sparse elimination ----------------------------------------------------

SparseRref sparse_rref(const SparseMatrix& m) {
  const std::size_t cols = m.cols();
  // Bucket active rows by leading column; combine rows only at their leads.
  std::vector<std::vector<SparseVec>> bucket(cols);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto& r = m.row(i);
    if (!r.empty()) bucket[r.front().first].push_back(r);
  }
  std::vector<SparseVec> pivot_rows;
  std::vector<int> pivots;
  for (std::size_t c = 0; c < cols; ++c) {
    auto rows_here = std::move(bucket[c]);
    bucket[c].clear();
    if (rows_here.empty()) continue;
    std::size_t best = 0;
    for (std::size_t i = 1; i < rows_here.size(); ++i)
      if (rows_here[i].size() < rows_here[best].size()) best = i;
    SparseVec pivot = std::move(rows_here[best]);
    {
      Rational inv = Rational(1) / pivot.front().second;
      if (inv != 1)
        for (auto& [j, v] : pivot) v *= inv;
    }
    for (std::size_t i = 0; i < rows_here.size(); ++i) {
      if (i == best) continue;
      SparseVec r = sparse_add(rows_here[i], pivot, -rows_here[i].front().second);
      if (!r.empty()) bucket[r.front().first].push_back(std::move(r));
    }
    pivots.push_back(static_cast<int>(c));
    pivot_rows.push_back(std::move(pivot));
  }
  // Full reduction, right to left.
  std::vector<int> pivot_row_of(cols, -1);
  for (std::size_t i = 0; i < pivots.size(); ++i) pivot_row_of[pivots[i]] = static_cast<int>(i);
  for (std::size_t i = pivot_rows.size(); i-- > 0;) {
    SparseVec& row = pivot_rows[i];
    bool again = true;
    while (again) {
      again = false;
      for (const auto& [j, v] : row) {
        if (j == pivots[i]) continue;
        const int pr = pivot_row_of[j];
        if (pr < 0) continue;
        row = sparse_add(row, pivot_rows[pr], -v);
        again = true;
        break;
      }
    }
  }
  SparseRref out;
  out.rank = pivots.size();
  out.pivots = std::move(pivots);
  out.reduced = SparseMatrix(out.rank, cols);
  for (std::size_t i = 0; i < out.rank; ++i) out.reduced.set_row(i, std::move(pivot_rows[i]));
  return out;
}

std::size_t sparse_rank(const SparseMatrix& m) { return sparse_rref(m).rank; }

SparseMatrix sparse_kernel_basis(const SparseMatrix& m) {
  auto rr = sparse_rref(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (int p : rr.pivots) is_pivot[p] = true;
  std::vector<int> free_index(cols, -1);
  std::size_t nfree = 0;
  for (std::size_t j = 0; j < cols; ++j)
    if (!is_pivot[j]) free_index[j] = static_cast<int>(nfree++);
  std::vector<SparseVec> kernel(nfree);
  for (std::size_t j = 0; j < cols; ++j)
    if (free_index[j] >= 0) kernel[free_index[j]].emplace_back(static_cast<int>(j), Rational(1));
  for (std::size_t i = 0; i < rr.rank; ++i)
    for (const auto& [j, v] : rr.reduced.row(i))
      if (free_index[j] >= 0) kernel[free_index[j]].emplace_back(rr.pivots[i], -v);
  SparseMatrix out(nfree, cols);
  for (std::size_t k = 0; k < nfree; ++k) {
    auto& row = kernel[k];
    std::sort(row.begin(), row.end());
    out.set_row(k, std::move(row));
  }
  return out;
}

SparseVec Eliminator::reduce(SparseVec v) const {
  while (!v.empty()) {
    const int r = pivot_row_of_[v.front().first];
    if (r < 0) break;
    v = sparse_add(v, rows_[r], -v.front().second);
  }
  return v;
}

bool Eliminator::add(SparseVec v) {
  SparseVec acc;
  if (track_) acc.emplace_back(static_cast<int>(added_), Rational(1));
  ++added_;
  while (!v.empty()) {
    const int r = pivot_row_of_[v.front().first];
    if (r < 0) break;
    const Rational c = v.front().second;
    v = sparse_add(v, rows_[r], -c);
    if (track_) acc = sparse_add(acc, aug_[r], -c);
  }
  if (v.empty()) return false;
  const Rational inv = Rational(1) / v.front().second;
  if (inv != 1) {
    for (auto& [j, x] : v) x *= inv;
    for (auto& [j, x] : acc) x *= inv;
  }
  pivot_row_of_[v.front().first] = static_cast<int>(rows_.size());
  rows_.push_back(std::move(v));
  if (track_) aug_.push_back(std::move(acc));
  return true;
}

std::optional<SparseVec> Eliminator::express(const SparseVec& v0) const {
  if (!track_) throw Error("Eliminator::express: tracking disabled");
  SparseVec v = v0, acc;
  while (!v.empty()) {
    const int r = pivot_row_of_[v.front().first];
    if (r < 0) return std::nullopt;
    const Rational c = v.front().second;
    v = sparse_add(v, rows_[r], -c);
    acc = sparse_add(acc, aug_[r], c);
  }
  return acc;
}

Quotient quotient_by(std::size_t ambient_dim, const SparseMatrix& relations) {
  if (relations.cols() != ambient_dim) throw Error("quotient_by: ambient dimension mismatch");
  auto rr = sparse_rref(relations);
  Quotient q;
  q.ambient_dim = ambient_dim;
  std::vector<bool> is_pivot(ambient_dim, false);
  for (int p : rr.pivots) is_pivot[p] = true;
  std::vector<int> class_index(ambient_dim, -1);
  std::size_t d = 0;
  for (std::size_t j = 0; j < ambient_dim; ++j)
    if (!is_pivot[j]) class_index[j] = static_cast<int>(d++);
  q.dim = d;
  q.projection = SparseMatrix(d, ambient_dim);
  q.section = SparseMatrix(ambient_dim, d);
  for (std::size_t j = 0; j < ambient_dim; ++j)
    if (class_index[j] >= 0) {
      q.projection.add(class_index[j], j, Rational(1));
      q.section.add(j, class_index[j], Rational(1));
    }
  for (std::size_t i = 0; i < rr.rank; ++i)
    for (const auto& [j, v] : rr.reduced.row(i))
      if (class_index[j] >= 0) q.projection.add(class_index[j], rr.pivots[i], -v);
  return q;
}

SparseMatrix descend(const Quotient& target, const SparseMatrix& map, const Quotient& source) {
  return target.projection * (map * source.section);
}

}  // namespace homalg
