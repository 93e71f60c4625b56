#ifndef HOMALG_ALGEBRA_HPP
#define HOMALG_ALGEBRA_HPP

#include <string>
#include <vector>

#include "homalg/linalg.hpp"

namespace homalg {

// Finite-dimensional associative unital algebra over Q, given by structure
// constants on a labeled basis: e_i . e_j = sum_k table[i][j][k] e_k.
struct Algebra {
  std::size_t dim = 0;
  std::vector<std::string> labels;
  std::vector<std::vector<SparseVec>> table;  // table[i][j] = coordinates of e_i.e_j
  Vec unit;

  const SparseVec& product(std::size_t i, std::size_t j) const { return table[i][j]; }
  Vec multiply(const Vec& x, const Vec& y) const;
  Matrix left_mult(const Vec& x) const;   // L_x
  Matrix right_mult(const Vec& x) const;  // R_x
  Vec basis_vector(std::size_t i) const {
    Vec v(dim, Rational(0));
    v[i] = 1;
    return v;
  }

  // Itemized associativity/unit violations; empty means valid.
  std::vector<std::string> validate() const;
};

Algebra from_structure_constants(std::vector<std::string> labels,
                                 std::vector<std::vector<SparseVec>> table, Vec unit);

Algebra ground_field();
Algebra opposite(const Algebra& a);
Algebra tensor_product(const Algebra& a, const Algebra& b);  // basis (i,j) ~ i*dimB + j
Algebra enveloping(const Algebra& a);                        // A (x) A^op
Algebra direct_sum(const Algebra& a, const Algebra& b);      // product algebra A x B
Algebra matrix_algebra(std::size_t n);                       // M_n(Q) on matrix units

// Jacobson radical via the kernel of the trace form of the left regular
// representation (char 0).
Subspace radical(const Algebra& a);
Subspace center(const Algebra& a);

struct AlgebraMap {
  Algebra source;
  Algebra target;
  Matrix matrix;  // dim(target) x dim(source)

  Vec apply(const Vec& x) const { return matrix.apply(x); }
};

AlgebraMap identity_map(const Algebra& a);
AlgebraMap compose(const AlgebraMap& g, const AlgebraMap& f);  // g o f
AlgebraMap unit_embedding(const Algebra& b);                   // Q -> B

// Multiplicativity/unitality violations; empty means valid morphism.
std::vector<std::string> check_map(const AlgebraMap& phi);
bool is_injective(const AlgebraMap& phi);
// Valid algebra map with full column rank (an extension A `subset of` B).
void require_extension(const AlgebraMap& iota);

struct FiniteGroup {
  std::size_t order = 0;
  std::vector<std::vector<int>> mult;  // mult[g][h] = index of g.h
  int identity = 0;

  int inverse(int g) const;
  std::vector<std::string> validate() const;
};

FiniteGroup cyclic_group(std::size_t n);
FiniteGroup group_from_table(std::vector<std::vector<int>> mult);
Algebra group_algebra(const FiniteGroup& g);

}  // namespace homalg

#endif
