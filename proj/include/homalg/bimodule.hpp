#ifndef HOMALG_BIMODULE_HPP
#define HOMALG_BIMODULE_HPP

#include <string>
#include <vector>

#include "homalg/algebra.hpp"
#include "homalg/linalg.hpp"

namespace homalg {

// One-sided modules, given by an action matrix per basis element of the
// algebra.  LeftModule carries a representation, RightModule an
// anti-representation (x.a = action[a] x on coordinates either way).
struct LeftModule {
  Algebra over;
  std::size_t dim = 0;
  std::vector<Matrix> action;

  Matrix act_of(const Vec& a) const;
  std::vector<std::string> validate() const;
};

struct RightModule {
  Algebra over;
  std::size_t dim = 0;
  std::vector<Matrix> action;

  Matrix act_of(const Vec& a) const;
  std::vector<std::string> validate() const;
};

// A-bimodule = module over the enveloping algebra: commuting unital left
// representation and right anti-representation.
struct Bimodule {
  Algebra over;
  std::size_t dim = 0;
  std::vector<Matrix> left_action;
  std::vector<Matrix> right_action;

  Matrix left_of(const Vec& a) const;
  Matrix right_of(const Vec& a) const;
  LeftModule left_module() const;
  RightModule right_module() const;
  std::vector<std::string> validate() const;
};

struct BimoduleMap {
  Bimodule source;
  Bimodule target;
  Matrix matrix;  // target.dim x source.dim

  Vec apply(const Vec& x) const { return matrix.apply(x); }
};

std::vector<std::string> check_bimodule_map(const BimoduleMap& f);

Bimodule regular_bimodule(const Algebra& a);  // A over itself

// Pull both actions back along iota: A -> B.
Bimodule restrict(const Bimodule& y, const AlgebraMap& iota);
LeftModule restrict_left(const Bimodule& y, const AlgebraMap& iota);
RightModule restrict_right(const Bimodule& y, const AlgebraMap& iota);

// (M (x) N) / span{m.a (x) n - m (x) a.n}; ambient index (i,j) = i*n.dim + j.
Quotient tensor_over(const RightModule& m, const LeftModule& n);

// B (x)_A X (x)_A B with the outer B-actions; ambient index
// ((i,x),j) = (i*X.dim + x)*B.dim + j.
struct Induced {
  Bimodule module;  // over iota.target
  Quotient q;       // from the triple tensor ambient
};
Induced induce(const Bimodule& x, const AlgebraMap& iota);

// Kernel of the multiplication map B (x)_A B -> B as a B-bimodule.
struct Sigma {
  Bimodule module;        // over iota.target
  Quotient tensor_square; // B (x)_A B
  Matrix inclusion;       // tensor_square.dim x module.dim, kernel vectors as columns
};
Sigma sigma(const AlgebraMap& iota);

// The cokernel B/A as an A-bimodule.
struct Mho {
  Bimodule module;  // over iota.source
  Quotient q;       // from the ambient B
};
Mho mho(const AlgebraMap& iota);

// X / span{a.x - x.a}.
Quotient commutator_quotient(const Bimodule& x);

// X as a left module over the enveloping algebra A^e.
LeftModule over_enveloping(const Bimodule& x);

// Split test on the free cover R^g -> M built from the full basis of M.
// Over a finite-dimensional Q-algebra this coincides with flatness.
bool is_projective(const LeftModule& m);
bool is_projective(const RightModule& m);

// B projective as left and right A-module, and ann_A(B (x)_A A/J) = J
// for J the radical of A.
bool is_faithfully_flat(const AlgebraMap& iota);

// Coordinates of act restricted to an invariant subspace, in the basis of s.
Matrix restrict_action(const Matrix& act, const Subspace& s);

}  // namespace homalg

#endif
