#ifndef HOMALG_HOCHSCHILD_HPP
#define HOMALG_HOCHSCHILD_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "homalg/algebra.hpp"
#include "homalg/bimodule.hpp"
#include "homalg/chain.hpp"

namespace homalg {

// An algebra together with a complete system of orthogonal idempotents whose
// span S is a separable base for relative chains.  Every basis element must be
// homogeneous: f_u e_j f_v = e_j for exactly one pair of colors (u,v).  The
// trivial system {1} colors everything with the single color 0 and recovers
// absolute (base-field) chains.
struct Colored {
  Algebra alg;
  std::vector<Vec> idem;
  std::vector<int> lcol, rcol;

  std::size_t colors() const { return idem.size(); }
};

Colored trivial_colored(const Algebra& a);
Colored colored(const Algebra& a, std::vector<Vec> idem);

struct ColoredBimodule {
  Bimodule mod;
  std::vector<int> lcol, rcol;
};

// Change of basis making x homogeneous for b's idempotents; new_basis rows
// give the new basis vectors in the old coordinates.
struct Homogenized {
  ColoredBimodule x;
  Matrix new_basis;
};
Homogenized homogenize(const Bimodule& x, const Colored& b);

// Monomial basis of a tensor string space over S.  Wrapped strings are
// {x, b_1, ..., b_n} with colors chained cyclically; open strings are
// {b_1, ..., b_n} with free ends.
struct StringSpace {
  std::vector<std::vector<int>> basis;
  std::map<std::vector<int>, int> index;

  int find(const std::vector<int>& key) const {
    auto it = index.find(key);
    return it == index.end() ? -1 : it->second;
  }
  std::size_t dim() const { return basis.size(); }
};

// CH_n(B|S, X) = X (x)_{S^e} B^{(x)_S n} on the monomial string basis.
struct HochschildChains {
  Colored base;
  ColoredBimodule x;
  std::vector<StringSpace> spaces;
  ChainComplex complex;
};
HochschildChains hochschild_chains(const Colored& b, const ColoredBimodule& x,
                                   std::size_t n_top, std::size_t budget = 20000);

// CH_n(B|A, X) as the quotient of CH_n(B|S, X) by the A-balancing moves
// across every tensor position, with the descended differential.
struct RelativeChains {
  ChainComplex complex;
  std::vector<Quotient> q;
};
RelativeChains relativize(const HochschildChains& ch, const AlgebraMap& iota);

RelativeChains hochschild_chain(const Colored& b, const AlgebraMap& iota, const Bimodule& x,
                                std::size_t n_top, std::size_t budget = 20000);

HomologyTable hh(const Colored& b, const Bimodule& x, std::size_t n_top,
                 std::size_t budget = 20000);
HomologyTable hh(const Algebra& b, const Bimodule& x, std::size_t n_top,
                 std::size_t budget = 20000);

// Degreewise maps of the Jacobi-Zariski pair: the inclusion-induced map
// CH(A|S, Res X) -> CH(B|S, X) and the canonical surjection onto CH(B|A, X).
// Both are validated chain maps; validation failure is a hard error.
ChainMap induced_inclusion_map(const AlgebraMap& iota, const HochschildChains& a_side,
                               const HochschildChains& b_side);
ChainMap induced_quotient_map(const RelativeChains& rel);

struct JzReport {
  HomologyTable a, b, rel;
  std::vector<bool> exact_mid;     // im alpha_n == ker beta_n, degrees 1..N-1, offset by 1
  std::vector<bool> bookkeeping;   // degrees 2..N-1, offset by 2
  std::optional<std::size_t> first_violation;
  bool pass = false;
};
JzReport jz_verify(const AlgebraMap& iota, const Colored& ca, const Colored& cb,
                   const Bimodule& x, std::size_t n_top, std::size_t budget = 20000);

// CB_n(B|A) = B^{(x)_A n+2} with the alternating multiplication faces.
ChainComplex relative_bar(const Colored& b, const AlgebraMap& iota, std::size_t n_top,
                          std::size_t budget = 20000);

// CH^*(B|A, X); stored with transposed coboundaries so that homology_dims
// reports the cohomology dimensions degreewise.
ChainComplex hochschild_cochain(const Colored& b, const AlgebraMap& iota, const Bimodule& x,
                                std::size_t n_top, std::size_t budget = 20000);

// A -> B -> B (x)_A B -> ... with alternating unit-insertion cofaces.
struct AmitsurReport {
  std::vector<std::size_t> dims;  // T_0..T_N
  std::vector<std::size_t> h;     // cohomology, degrees 0..N-1
  std::optional<std::size_t> first_inexact;
  bool exact = false;
};
AmitsurReport amitsur(const AlgebraMap& iota, const Colored& b, std::size_t n_top,
                      std::size_t budget = 20000);

// Tor^{A^e}_n(M, X) through the S-relative two-sided bar resolution of M.
HomologyTable tor_env(const Colored& a, const Bimodule& m, const Bimodule& x,
                      std::size_t n_top, std::size_t budget = 20000);

// Tor^R_n(M, X) for one-sided modules through the plain bar complex.
HomologyTable tor_modules(const RightModule& m, const LeftModule& x, std::size_t n_top,
                          std::size_t budget = 200000);

}  // namespace homalg

#endif
