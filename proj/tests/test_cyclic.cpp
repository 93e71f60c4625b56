#include "doctest.h"
#include "homalg/cyclic.hpp"

using namespace homalg;

namespace {

Algebra dual_numbers() {
  return from_structure_constants(
      {"1", "x"},
      {{{{0, Rational(1)}}, {{1, Rational(1)}}}, {{{1, Rational(1)}}, {}}},
      {Rational(1), Rational(0)});
}

Colored diag_colored_m2() {
  auto m2 = matrix_algebra(2);
  Vec e11(4, Rational(0)), e22(4, Rational(0));
  e11[0] = 1;
  e22[3] = 1;
  return colored(m2, {e11, e22});
}

AlgebraMap diag_embedding() {
  auto kk = direct_sum(ground_field(), ground_field());
  auto m2 = matrix_algebra(2);
  Matrix m(4, 2);
  m(0, 0) = 1;
  m(3, 1) = 1;
  return {kk, m2, m};
}

AlgebraMap swap_embedding() {
  auto z2 = group_algebra(cyclic_group(2));
  auto m2 = matrix_algebra(2);
  Matrix m(4, 2);
  m(0, 0) = 1;
  m(3, 0) = 1;
  m(1, 1) = 1;
  m(2, 1) = 1;
  return {z2, m2, m};
}

}  // namespace

TEST_CASE("mixed complex of the ground field") {
  auto m = mixed_of_algebra(ground_field(), 4);
  CHECK(m.mixed.validate().empty());
  CHECK(m.mixed.dims == std::vector<std::size_t>{1, 0, 0, 0, 0});
}

TEST_CASE("mixed complex identities") {
  for (const auto& a : {dual_numbers(), matrix_algebra(2), group_algebra(cyclic_group(2)),
                        group_algebra(cyclic_group(3))}) {
    auto m = mixed_of_algebra(a, 4);
    CHECK(m.mixed.validate().empty());
  }
  auto cm = mixed_of_algebra(diag_colored_m2(), 4);
  CHECK(cm.mixed.validate().empty());
}

TEST_CASE("b in degree one of a commutative algebra vanishes") {
  auto m = mixed_of_algebra(group_algebra(cyclic_group(2)), 3);
  CHECK(m.mixed.b[1].is_zero());
}

TEST_CASE("hc of the ground field") {
  CHECK(hc(ground_field(), 5).dims == std::vector<std::size_t>{1, 0, 1, 0});
  CHECK(hc(ground_field(), 4).dims == std::vector<std::size_t>{1, 0, 1});
}

TEST_CASE("hc degree zero is the commutator quotient") {
  auto m2 = matrix_algebra(2);
  CHECK(hc(m2, 3).dims[0] == 1);
  CHECK(hc(dual_numbers(), 3).dims[0] == 2);
  CHECK(hc(group_algebra(cyclic_group(3)), 3).dims[0] == 3);
}

TEST_CASE("Morita invariance and additivity") {
  CHECK(hc(matrix_algebra(2), 4).dims == hc(ground_field(), 4).dims);
  auto kk = direct_sum(ground_field(), ground_field());
  CHECK(hc(kk, 4).dims == std::vector<std::size_t>{2, 0, 2});
}

TEST_CASE("colored base agrees with the trivial base for hc") {
  CHECK(hc(diag_colored_m2(), 4).dims == hc(matrix_algebra(2), 4).dims);
}

TEST_CASE("relative hc") {
  auto m2 = matrix_algebra(2);
  auto self = relative_hc(identity_map(m2), trivial_colored(m2), trivial_colored(m2), 4);
  CHECK(self.dims == std::vector<std::size_t>{0, 0, 0});

  auto z2 = group_algebra(cyclic_group(2));
  auto red = relative_hc(unit_embedding(z2), trivial_colored(ground_field()),
                         trivial_colored(z2), 4);
  CHECK(red.dims[0] == 1);
}

TEST_CASE("periodicity for a smooth faithfully flat extension") {
  auto m2 = matrix_algebra(2);
  auto rep = periodicity_check(unit_embedding(m2), trivial_colored(ground_field()),
                               trivial_colored(m2), 6);
  CHECK(rep.pass);

  auto fast = periodicity_check(diag_embedding(),
                                colored(diag_embedding().source,
                                        {Vec{Rational(1), Rational(0)},
                                         Vec{Rational(0), Rational(1)}}),
                                diag_colored_m2(), 6);
  CHECK(fast.pass);
}

TEST_CASE("cyclic jz") {
  auto a = dual_numbers();
  auto rep = cyclic_jz_verify(unit_embedding(a), trivial_colored(ground_field()),
                              trivial_colored(a), 5);
  CHECK(rep.pass);
  CHECK(rep.b.dims[0] == 2);

  auto m2 = matrix_algebra(2);
  auto swap = cyclic_jz_verify(swap_embedding(), trivial_colored(swap_embedding().source),
                               trivial_colored(m2), 5);
  CHECK(swap.pass);

  auto self = cyclic_jz_verify(identity_map(m2), trivial_colored(m2), trivial_colored(m2), 4);
  CHECK(self.pass);
  CHECK(self.rel.dims == std::vector<std::size_t>{0, 0, 0});
}

TEST_CASE("sbi exactness") {
  CHECK(sbi_check(mixed_of_algebra(dual_numbers(), 5)).pass);
  CHECK(sbi_check(mixed_of_algebra(matrix_algebra(2), 4)).pass);
  CHECK(sbi_check(mixed_of_algebra(group_algebra(cyclic_group(3)), 4)).pass);
  CHECK(sbi_check(mixed_of_algebra(diag_colored_m2(), 4)).pass);
}
