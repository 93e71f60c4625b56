#ifndef HOMALG_FIBRATION_HPP
#define HOMALG_FIBRATION_HPP

#include <optional>
#include <vector>

#include "homalg/algebra.hpp"
#include "homalg/bimodule.hpp"
#include "homalg/hochschild.hpp"

namespace homalg {

// Linear map C (x) B -> B (x) C; source index c*dim(B)+b, target b*dim(C)+c.
struct DistributiveLaw {
  Algebra b_algebra;
  Algebra c_algebra;
  SparseMatrix matrix;
};

DistributiveLaw flip_law(const Algebra& b, const Algebra& c);

// Pentagon against the multiplication of C and the triangle on 1_C.
bool is_left_transposition(const DistributiveLaw& w);
// Pentagon against the multiplication of B and the triangle on 1_B.
bool is_right_transposition(const DistributiveLaw& w);
bool is_distributive_law(const DistributiveLaw& w);

// B (x) C with the product (mu_B (x) mu_C)(B (x) law (x) C) and unit 1 (x) 1;
// validated, so a bad law is signalled by the algebra validator.
Algebra twisted_product(const DistributiveLaw& w);

// Every generator x has law(c (x) x) on the line x (x) C for all basis c.
bool check_invariance(const std::vector<Vec>& generators, const DistributiveLaw& w);

// B (x)_A B as a quotient of the ambient B (x) B, index (i,j) = i*dim(B)+j.
Quotient tensor_square_of(const AlgebraMap& iota);

// A separability element e in (B (x)_A B)^B with mu(e) = 1, commutation
// imposed over the given multiplicative generators of B.
bool separable_extension(const AlgebraMap& iota, const Quotient& tensor_square,
                         const std::vector<Vec>& generators);

struct Fibration {
  AlgebraMap extension;                    // iota: A -> B
  Algebra fibre;                           // C
  DistributiveLaw law;                     // C (x) B -> B (x) C
  Quotient tensor_square;                  // B (x)_A B
  SparseMatrix can;                        // dim(B)*dim(C) x tensor_square.dim
  std::vector<Vec> invariance_generators;  // elements of A
  // Multiplicative generators of B for the can intertwining checks; empty
  // means the full basis.
  std::vector<Vec> b_generators;
  // C-bimodule model of B/[B,A], the coefficient space of MainHJZ at X = B.
  Bimodule fibre_coefficients;
  Colored base_colored;   // colored model of A, idempotents matching the total
  Colored total_colored;  // colored model of B
};

struct FibrationFlags {
  bool is_fibration = false;
  bool unramified = false;
  bool etale = false;
  bool separable_fibration = false;
  bool smooth_fibration = false;
  bool galois = false;
  bool ext_reduced_flat = false;
  bool ext_smooth = false;
  bool ext_separable = false;
  bool ext_faithfully_flat = false;
};

FibrationFlags classify(const Fibration& f);

// A = B, C = the ground field, the flip law, can = multiplication.
Fibration trivial_fibration(const Algebra& b);

// L with a basis of orthogonal idempotents permuted simply transitively by G;
// B = L twisted with k[G] by g (x) u -> g.u (x) g, A = 1 (x) k[G], C = L.
Fibration smash_fibration(const Algebra& l, const FiniteGroup& g,
                          const std::vector<Matrix>& action);

struct HjzReport {
  std::vector<std::size_t> relative;    // dim HH_n(B|A, X), degrees 0..N-1
  std::vector<std::size_t> fibre_side;  // dim HH_n(C, V), degrees 0..N-1
  std::vector<std::size_t> chain_dims;  // dim CH_n(B|A, X), degrees 0..N
  std::size_t coeff_dim = 0;            // dim X/[X,A]
  std::optional<std::size_t> first_violation;
  bool pass = false;
};

HjzReport verify_main_hjz(const Fibration& f, const Bimodule& x, const Bimodule& v,
                          std::size_t n_top, std::size_t budget = 20000);
// X = B regular, V = the stored fibre coefficients.
HjzReport verify_main_hjz(const Fibration& f, std::size_t n_top,
                          std::size_t budget = 20000);

struct CjzReport {
  JzReport jz;                        // with X = B
  std::vector<std::size_t> fibre_hh;  // dim HH_n(C), degrees 0..N-1
  std::size_t coinvariant_dim = 0;    // dim B/[B,A]
  std::vector<bool> factorization;    // degrees 1..N-1, offset by 1
  std::optional<std::size_t> first_violation;
  bool pass = false;
};

CjzReport verify_main_cjz(const Fibration& f, std::size_t n_top,
                          std::size_t budget = 20000);

}  // namespace homalg

#endif
