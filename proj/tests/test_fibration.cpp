#include "doctest.h"
#include "homalg/fibration.hpp"

using namespace homalg;

namespace {

Algebra dual_numbers() {
  return from_structure_constants(
      {"1", "x"},
      {{{{0, Rational(1)}}, {{1, Rational(1)}}}, {{{1, Rational(1)}}, {}}},
      {Rational(1), Rational(0)});
}

Algebra square_field() { return direct_sum(ground_field(), ground_field()); }

// z2 (x) (k x k) -> (k x k) (x) z2, g (x) u -> g.u (x) g with the swap action.
DistributiveLaw swap_action_law() {
  Algebra l = square_field();
  Algebra z2 = group_algebra(cyclic_group(2));
  SparseMatrix m(4, 4);
  for (std::size_t g = 0; g < 2; ++g)
    for (std::size_t u = 0; u < 2; ++u) {
      std::size_t img = g == 0 ? u : 1 - u;
      m.add(img * 2 + g, g * 2 + u, Rational(1));
    }
  return {l, z2, std::move(m)};
}

std::vector<Matrix> swap_matrices() {
  Matrix s(2, 2);
  s(0, 1) = 1;
  s(1, 0) = 1;
  return {Matrix::identity(2), s};
}

std::vector<Matrix> cycle_matrices(std::size_t n) {
  std::vector<Matrix> out;
  for (std::size_t g = 0; g < n; ++g) {
    Matrix m(n, n);
    for (std::size_t j = 0; j < n; ++j) m((j + g) % n, j) = 1;
    out.push_back(std::move(m));
  }
  return out;
}

Algebra k_power(std::size_t n) {
  Algebra a = ground_field();
  for (std::size_t i = 1; i < n; ++i) a = direct_sum(a, ground_field());
  return a;
}

}  // namespace

TEST_CASE("flip is a distributive law") {
  auto w = flip_law(dual_numbers(), group_algebra(cyclic_group(2)));
  CHECK(is_left_transposition(w));
  CHECK(is_right_transposition(w));
  CHECK(is_distributive_law(w));
}

TEST_CASE("trivial fibre forces a transposition") {
  auto w = flip_law(matrix_algebra(2), ground_field());
  CHECK(is_left_transposition(w));
  CHECK(is_right_transposition(w));
}

TEST_CASE("the swap action law is a distributive law") {
  auto w = swap_action_law();
  CHECK(is_left_transposition(w));
  CHECK(is_right_transposition(w));
}

TEST_CASE("a perturbed flip is rejected") {
  auto w = flip_law(square_field(), group_algebra(cyclic_group(2)));
  w.matrix.add(0, 1, Rational(1));
  CHECK_FALSE(is_distributive_law(w));
}

TEST_CASE("twisted product of the flip law is the tensor product") {
  Algebra b = dual_numbers(), c = group_algebra(cyclic_group(2));
  Algebra t = twisted_product(flip_law(b, c));
  Algebra plain = tensor_product(b, c);
  CHECK(t.dim == plain.dim);
  for (std::size_t i = 0; i < t.dim; ++i)
    for (std::size_t j = 0; j < t.dim; ++j) CHECK(t.product(i, j) == plain.product(i, j));
}

TEST_CASE("twisted product with trivial fibre recovers B") {
  Algebra b = matrix_algebra(2);
  Algebra t = twisted_product(flip_law(b, ground_field()));
  CHECK(t.dim == b.dim);
  for (std::size_t i = 0; i < t.dim; ++i)
    for (std::size_t j = 0; j < t.dim; ++j) CHECK(t.product(i, j) == b.product(i, j));
}

TEST_CASE("the swap smash product is a 2x2 matrix algebra") {
  Algebra t = twisted_product(swap_action_law());
  CHECK(t.dim == 4);
  CHECK(radical(t).dim() == 0);
  CHECK(center(t).dim() == 1);
}

TEST_CASE("invariance") {
  auto w = swap_action_law();
  CHECK(check_invariance({w.b_algebra.unit}, w));
  CHECK_FALSE(check_invariance({w.b_algebra.basis_vector(0)}, w));
}

TEST_CASE("trivial fibration classification") {
  for (const auto& b : {matrix_algebra(2), dual_numbers()}) {
    auto fl = classify(trivial_fibration(b));
    CHECK(fl.is_fibration);
    CHECK(fl.galois);
    CHECK(fl.unramified);
    CHECK(fl.etale);
    CHECK(fl.separable_fibration);
    CHECK(fl.smooth_fibration);
    CHECK(fl.ext_separable);
    CHECK(fl.ext_faithfully_flat);
  }
}

TEST_CASE("a non-square canonical epimorphism is not Galois") {
  // B = k x k over A = k with trivial fibre and can = multiplication.
  Algebra b = square_field();
  Fibration f = trivial_fibration(b);
  f.extension = unit_embedding(b);
  f.tensor_square = tensor_square_of(f.extension);
  SparseMatrix mult(b.dim, b.dim * b.dim);
  for (std::size_t i = 0; i < b.dim; ++i)
    for (std::size_t j = 0; j < b.dim; ++j)
      for (const auto& [p, v] : b.product(i, j)) mult.add(p, i * b.dim + j, v);
  f.can = mult * f.tensor_square.section;
  f.invariance_generators = {Vec{Rational(1)}};
  auto fl = classify(f);
  CHECK(fl.is_fibration);
  CHECK_FALSE(fl.galois);
  CHECK(fl.separable_fibration);
  CHECK(fl.smooth_fibration);
  CHECK(fl.ext_separable);
}

TEST_CASE("smash fibration over Z/2") {
  Fibration f = smash_fibration(square_field(), cyclic_group(2), swap_matrices());
  CHECK(f.extension.target.dim == 4);
  CHECK(is_distributive_law(f.law));
  auto fl = classify(f);
  CHECK(fl.is_fibration);
  CHECK(fl.galois);
  CHECK(fl.smooth_fibration);
  CHECK(fl.separable_fibration);
  CHECK(fl.ext_separable);
  CHECK(fl.ext_smooth);
  CHECK(fl.ext_faithfully_flat);
  CHECK(fl.ext_reduced_flat);
}

TEST_CASE("smash fibration over Z/3") {
  Fibration f = smash_fibration(k_power(3), cyclic_group(3), cycle_matrices(3));
  CHECK(f.extension.target.dim == 9);
  CHECK(radical(f.extension.target).dim() == 0);
  auto fl = classify(f);
  CHECK(fl.galois);
  CHECK(fl.ext_faithfully_flat);
  CHECK(fl.ext_reduced_flat);
}

TEST_CASE("smash fibration with the trivial group") {
  Fibration f = smash_fibration(ground_field(), cyclic_group(1), {Matrix::identity(1)});
  CHECK(f.extension.target.dim == 1);
  CHECK(classify(f).galois);
}

TEST_CASE("smash fibration rejects bad actions") {
  Matrix notperm(2, 2);
  notperm(0, 0) = 1;
  notperm(0, 1) = 1;
  CHECK_THROWS_AS(smash_fibration(square_field(), cyclic_group(2),
                                  {Matrix::identity(2), notperm}),
                  ValidationError);
  CHECK_THROWS_AS(smash_fibration(dual_numbers(), cyclic_group(2), swap_matrices()),
                  ValidationError);
  CHECK_THROWS_AS(smash_fibration(square_field(), cyclic_group(2),
                                  {Matrix::identity(2), Matrix::identity(2)}),
                  ValidationError);
}

TEST_CASE("main hjz on the trivial fibration") {
  auto r = verify_main_hjz(trivial_fibration(dual_numbers()), 4);
  CHECK(r.pass);
  CHECK(r.coeff_dim == 2);
  CHECK(r.relative[0] == 2);
  CHECK(r.relative[1] == 0);
  CHECK(r.chain_dims == std::vector<std::size_t>{2, 2, 2, 2, 2});
}

TEST_CASE("main hjz on the swap smash") {
  Fibration f = smash_fibration(square_field(), cyclic_group(2), swap_matrices());
  auto r = verify_main_hjz(f, 4);
  CHECK(r.pass);
  CHECK(r.coeff_dim == 2);
  CHECK(r.relative == std::vector<std::size_t>{1, 0, 0, 0});
  CHECK(r.chain_dims == std::vector<std::size_t>{2, 4, 8, 16, 32});
}

TEST_CASE("main hjz on the Z/3 smash") {
  Fibration f = smash_fibration(k_power(3), cyclic_group(3), cycle_matrices(3));
  auto r = verify_main_hjz(f, 3);
  CHECK(r.pass);
  CHECK(r.coeff_dim == 3);
  CHECK(r.relative == std::vector<std::size_t>{1, 0, 0});
}

TEST_CASE("main cjz on the trivial fibration") {
  auto r = verify_main_cjz(trivial_fibration(matrix_algebra(2)), 4);
  CHECK(r.pass);
  CHECK(r.jz.rel.dims == std::vector<std::size_t>{1, 0, 0, 0});
}

TEST_CASE("main cjz on the swap smash") {
  Fibration f = smash_fibration(square_field(), cyclic_group(2), swap_matrices());
  auto r = verify_main_cjz(f, 4);
  CHECK(r.pass);
  CHECK(r.coinvariant_dim == 2);
}

TEST_CASE("corpus flag implications") {
  std::vector<Fibration> corpus;
  corpus.push_back(trivial_fibration(matrix_algebra(2)));
  corpus.push_back(trivial_fibration(dual_numbers()));
  corpus.push_back(smash_fibration(square_field(), cyclic_group(2), swap_matrices()));
  corpus.push_back(smash_fibration(k_power(3), cyclic_group(3), cycle_matrices(3)));
  for (const auto& f : corpus) {
    auto fl = classify(f);
    if (fl.galois) CHECK(fl.smooth_fibration);
    if (fl.ext_separable) CHECK(fl.ext_smooth);
    if (fl.ext_smooth && fl.ext_faithfully_flat) CHECK(fl.ext_reduced_flat);
  }
}
