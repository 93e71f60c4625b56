#ifndef HOMALG_LINALG_HPP
#define HOMALG_LINALG_HPP

#include <optional>
#include <vector>

#include "homalg/matrix.hpp"

namespace homalg {

struct RrefResult {
  Matrix reduced;
  std::size_t rank = 0;
  std::vector<int> pivots;  // column index per pivot row
};

// Unique reduced row echelon form.  Forward pass is fraction-free
// (Bareiss) over cleared-denominator integer rows; the back substitution
// normalizes to reduced fractions.
RrefResult rref(const Matrix& m);

struct Subspace {
  std::size_t ambient_dim = 0;
  Matrix basis;  // one vector per row, basis.cols() == ambient_dim

  std::size_t dim() const { return basis.rows(); }
};

Subspace kernel_basis(const Matrix& m);
Subspace image_basis(const Matrix& m);  // basis of the column space
std::optional<Vec> solve(const Matrix& m, const Vec& b);
Matrix inverse(const Matrix& m);  // signals a singular or non-square input

// Membership of v in the row span of sub.basis.
bool subspace_contains(const Subspace& sub, const Vec& v);
bool subspace_equal(const Subspace& a, const Subspace& b);

// dim(ambient) - dim(sub); signals if sub is not contained in ambient.
std::size_t quotient_dim(const Subspace& sub, const Subspace& ambient);

// ---- sparse elimination ----------------------------------------------------

struct SparseRref {
  SparseMatrix reduced;       // rank rows, fully reduced, pivot entries 1
  std::size_t rank = 0;
  std::vector<int> pivots;    // pivot column of reduced.row(i)
};

SparseRref sparse_rref(const SparseMatrix& m);
std::size_t sparse_rank(const SparseMatrix& m);
SparseMatrix sparse_kernel_basis(const SparseMatrix& m);  // one kernel vector per row

// Solve x . rows(m) ... not needed; solve m x = b through the rref of [m | b]
// is provided densely above.

// Incremental row elimination.  Stored rows are lead-normalized with distinct
// leading columns, so lead-only reduction decides membership.  With tracking
// enabled, every stored row remembers its expression in the added rows.
class Eliminator {
 public:
  explicit Eliminator(std::size_t cols, bool track = false)
      : cols_(cols), track_(track), pivot_row_of_(cols, -1) {}

  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return rows_.size(); }
  std::size_t added() const { return added_; }

  SparseVec reduce(SparseVec v) const;
  bool add(SparseVec v);  // true if the rank grew
  bool contains(const SparseVec& v) const { return reduce(v).empty(); }
  // Coordinates over the added rows expressing v; nullopt if outside the span.
  std::optional<SparseVec> express(const SparseVec& v) const;

 private:
  std::size_t cols_;
  bool track_;
  std::size_t added_ = 0;
  std::vector<int> pivot_row_of_;
  std::vector<SparseVec> rows_;
  std::vector<SparseVec> aug_;
};

// Quotient V = ambient / span(relations); relations are the rows of `relations`.
// projection * section = identity on the quotient.
struct Quotient {
  std::size_t ambient_dim = 0;
  std::size_t dim = 0;
  SparseMatrix projection;  // dim x ambient
  SparseMatrix section;     // ambient x dim
};

Quotient quotient_by(std::size_t ambient_dim, const SparseMatrix& relations);

// Pushes an ambient-level map through quotients on both sides:
// returns proj_target * map * section_source.  The caller is responsible for
// the map preserving the relation spans; validators downstream re-check.
SparseMatrix descend(const Quotient& target, const SparseMatrix& map,
                     const Quotient& source);

}  // namespace homalg

#endif
