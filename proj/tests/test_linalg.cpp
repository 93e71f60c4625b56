#include <random>

#include "doctest.h"
#include "homalg/linalg.hpp"

using namespace homalg;

namespace {

Matrix from_rows(const std::vector<std::vector<int>>& rows) {
  Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

Matrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c) {
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      Rational v(num(rng), den(rng));
      v.canonicalize();
      m(i, j) = v;
    }
  return m;
}

}  // namespace

TEST_CASE("rref on simple matrices") {
  auto id = Matrix::identity(2);
  auto rr = rref(id);
  CHECK(rr.rank == 2);
  CHECK(rr.pivots == std::vector<int>{0, 1});
  CHECK(rr.reduced == id);

  auto zero = Matrix(3, 4);
  auto rz = rref(zero);
  CHECK(rz.rank == 0);
  CHECK(rz.pivots.empty());

  auto dep = from_rows({{1, 2}, {2, 4}});
  CHECK(rref(dep).rank == 1);
}

TEST_CASE("rref is the unique reduced form") {
  auto m = from_rows({{2, 4, 1}, {0, 0, 3}, {2, 4, 4}});
  auto rr = rref(m);
  CHECK(rr.rank == 2);
  CHECK(rr.pivots == std::vector<int>{0, 2});
  CHECK(rr.reduced(0, 0) == 1);
  CHECK(rr.reduced(0, 1) == 2);
  CHECK(rr.reduced(0, 2) == 0);
  CHECK(rr.reduced(1, 2) == 1);
}

TEST_CASE("kernel_basis") {
  CHECK(kernel_basis(Matrix::identity(3)).dim() == 0);
  CHECK(kernel_basis(Matrix(2, 3)).dim() == 3);

  auto k = kernel_basis(from_rows({{1, 1}}));
  REQUIRE(k.dim() == 1);
  CHECK(k.basis(0, 0) + k.basis(0, 1) == 0);
  CHECK(k.basis(0, 0) != 0);
}

TEST_CASE("image_basis") {
  CHECK(image_basis(Matrix::identity(3)).dim() == 3);
  CHECK(image_basis(Matrix(3, 2)).dim() == 0);
  auto im = image_basis(from_rows({{1}, {2}}));
  REQUIRE(im.dim() == 1);
  CHECK(im.basis(0, 1) == 2 * im.basis(0, 0));
}

TEST_CASE("solve") {
  Vec b = {Rational(3), Rational(-1)};
  auto x = solve(Matrix::identity(2), b);
  REQUIRE(x.has_value());
  CHECK(*x == b);

  CHECK(!solve(Matrix(2, 2), b).has_value());

  auto y = solve(from_rows({{2}}), {Rational(1)});
  REQUIRE(y.has_value());
  CHECK((*y)[0] == Rational(1, 2));

  CHECK_THROWS_AS((void)solve(Matrix(2, 2), Vec(3, Rational(0))), Error);
}

TEST_CASE("quotient_dim") {
  Subspace plane{2, Matrix::identity(2)};
  Subspace line{2, from_rows({{1, 1}})};
  CHECK(quotient_dim(line, plane) == 1);
  CHECK(quotient_dim(plane, plane) == 0);
  Subspace zero3{3, Matrix(0, 3)};
  Subspace all3{3, Matrix::identity(3)};
  CHECK(quotient_dim(zero3, all3) == 3);

  Subspace off{2, from_rows({{1, 0}})};
  Subspace only{2, from_rows({{0, 1}})};
  CHECK_THROWS_AS((void)quotient_dim(off, only), ValidationError);
}

TEST_CASE("rank properties on random matrices") {
  std::mt19937 rng(7);
  for (int t = 0; t < 30; ++t) {
    std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
    Matrix m = random_matrix(rng, r, c);
    auto rr = rref(m);
    CHECK(rr.rank == rref(m.transpose()).rank);
    CHECK(kernel_basis(m).dim() + rr.rank == c);

    Vec x(c);
    std::uniform_int_distribution<int> num(-3, 3);
    for (auto& v : x) v = num(rng);
    Vec b = m.apply(x);
    auto sol = solve(m, b);
    REQUIRE(sol.has_value());
    CHECK(m.apply(*sol) == b);
  }
}

TEST_CASE("sparse and dense elimination agree") {
  std::mt19937 rng(11);
  for (int t = 0; t < 30; ++t) {
    std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
    Matrix m = random_matrix(rng, r, c);
    auto sm = SparseMatrix::from_dense(m);
    auto dr = rref(m);
    auto sr = sparse_rref(sm);
    CHECK(sr.rank == dr.rank);
    CHECK(sr.pivots == dr.pivots);
    // The reduced forms are both the unique RREF.
    Matrix sd = sr.reduced.to_dense();
    for (std::size_t i = 0; i < sr.rank; ++i)
      for (std::size_t j = 0; j < c; ++j) CHECK(sd(i, j) == dr.reduced(i, j));
    auto sk = sparse_kernel_basis(sm);
    CHECK(sk.rows() == kernel_basis(m).dim());
    for (std::size_t i = 0; i < sk.rows(); ++i)
      CHECK(sm.apply(sk.row(i)).empty());
  }
}

TEST_CASE("quotient_by builds a projection with section") {
  std::mt19937 rng(13);
  for (int t = 0; t < 20; ++t) {
    std::size_t n = 2 + rng() % 6;
    Matrix rel = random_matrix(rng, rng() % 4, n);
    auto q = quotient_by(n, SparseMatrix::from_dense(rel));
    CHECK(q.dim == n - rref(rel).rank);
    auto prod = q.projection * q.section;
    Matrix pd = prod.to_dense();
    CHECK(pd == Matrix::identity(q.dim));
    // Relations project to zero.
    for (std::size_t i = 0; i < rel.rows(); ++i)
      CHECK(q.projection.apply(sparse_of(rel.row(i))).empty());
  }
}
