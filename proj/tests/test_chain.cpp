#include "doctest.h"
#include "homalg/chain.hpp"

using namespace homalg;

namespace {

ChainComplex point() {
  ChainComplex c;
  c.top_degree = 2;
  c.dims = {1, 0, 0};
  c.d = {SparseMatrix(0, 1), SparseMatrix(1, 0), SparseMatrix(0, 0)};
  return c;
}

// ... -> R -x-> R -x-> R over R = Q[x]/(x^2), resolving Q.
ChainComplex periodic_resolution(std::size_t n_top) {
  ChainComplex c;
  c.top_degree = n_top;
  SparseMatrix x(2, 2);
  x.add(1, 0, Rational(1));
  c.dims.assign(n_top + 1, 2);
  c.d.assign(n_top + 1, x);
  c.d[0] = SparseMatrix(0, 2);
  return c;
}

}  // namespace

TEST_CASE("homology_dims") {
  auto pt = point();
  CHECK(pt.validate().empty());
  CHECK(homology_dims(pt).dims == std::vector<std::size_t>{1, 0});

  ChainComplex acyclic;  // 0 -> k -id-> k -> 0
  acyclic.top_degree = 2;
  acyclic.dims = {1, 1, 0};
  acyclic.d = {SparseMatrix(0, 1), SparseMatrix::identity(1), SparseMatrix(1, 0)};
  CHECK(acyclic.validate().empty());
  CHECK(homology_dims(acyclic).dims == std::vector<std::size_t>{0, 0});

  auto res = periodic_resolution(4);
  CHECK(res.validate().empty());
  CHECK(homology_dims(res).dims == std::vector<std::size_t>{1, 0, 0, 0});

  // Tensoring the resolution with Q kills the differentials: Tor_n(Q,Q) = 1.
  ChainComplex tor;
  tor.top_degree = 4;
  tor.dims.assign(5, 1);
  tor.d.assign(5, SparseMatrix(1, 1));
  CHECK(homology_dims(tor).dims == std::vector<std::size_t>{1, 1, 1, 1});
}

TEST_CASE("validator catches d o d != 0") {
  ChainComplex bad;
  bad.top_degree = 2;
  bad.dims = {1, 1, 1};
  bad.d = {SparseMatrix(0, 1), SparseMatrix::identity(1), SparseMatrix::identity(1)};
  CHECK(!bad.validate().empty());
}

TEST_CASE("check_chain_map") {
  auto res = periodic_resolution(3);
  ChainMap id{{SparseMatrix::identity(2), SparseMatrix::identity(2), SparseMatrix::identity(2),
               SparseMatrix::identity(2)}};
  CHECK(check_chain_map(res, res, id).empty());

  SparseMatrix swap(2, 2);
  swap.add(0, 1, Rational(1));
  swap.add(1, 0, Rational(1));
  ChainMap bad{{swap, swap, swap, swap}};
  CHECK(!check_chain_map(res, res, bad).empty());
}

TEST_CASE("homology_basis and induced maps") {
  auto res = periodic_resolution(4);
  auto h0 = homology_basis(res, 0);
  CHECK(h0.cycle_rank == 2);
  CHECK(h0.boundary_rank == 1);
  CHECK(h0.reps.rows() == 1);

  auto h1 = homology_basis(res, 1);
  CHECK(h1.reps.rows() == 0);

  ChainMap id{{SparseMatrix::identity(2)}};
  Matrix m = induced_on_homology(id.maps[0], h0, h0);
  CHECK(m == Matrix::identity(1));

  // Multiplication by x is zero on H_0.
  SparseMatrix x(2, 2);
  x.add(1, 0, Rational(1));
  CHECK(induced_on_homology(x, h0, h0) == Matrix(1, 1));
}
