#ifndef HOMALG_CYCLIC_HPP
#define HOMALG_CYCLIC_HPP

#include <optional>
#include <string>
#include <vector>

#include "homalg/chain.hpp"
#include "homalg/hochschild.hpp"

namespace homalg {

// Normalized Hochschild chains with the b and Connes B operators.
struct MixedComplex {
  std::size_t top_degree = 0;
  std::vector<std::size_t> dims;
  std::vector<SparseMatrix> b;     // b[n]: C_n -> C_{n-1}; b[0] unused
  std::vector<SparseMatrix> B_op;  // B_op[n]: C_n -> C_{n+1}; the top entry unused

  // b^2 = 0, B_op^2 = 0, b B_op + B_op b = 0
  std::vector<std::string> validate() const;
};

// The mixed complex of an algebra in an adapted basis where every base
// idempotent is a basis vector, so normalization drops basis strings.
struct CyclicModel {
  Algebra alg;  // adapted basis
  std::vector<int> lcol, rcol;
  std::vector<bool> is_idem;
  Matrix to_original;  // adapted basis vectors as columns
  std::vector<StringSpace> spaces;
  MixedComplex mixed;
};

CyclicModel mixed_of_algebra(const Colored& b, std::size_t n_top,
                             std::size_t budget = 20000);
CyclicModel mixed_of_algebra(const Algebra& b, std::size_t n_top,
                             std::size_t budget = 20000);

// Total complex of the (b,B)-bicomplex: T_n = (+)_p C_{n-2p}, D = b + B_op.
ChainComplex total_complex(const MixedComplex& m);

// HC_n for n in the reliable range 0..N-2.
HomologyTable hc(const MixedComplex& m);
HomologyTable hc(const Colored& b, std::size_t n_top, std::size_t budget = 20000);
HomologyTable hc(const Algebra& b, std::size_t n_top, std::size_t budget = 20000);

// Degreewise map of mixed complexes commuting with both operators.
struct MixedMap {
  std::vector<SparseMatrix> maps;
};

// The map CC(A) -> CC(B) induced by iota; validated, failure is a hard error.
// Requires iota to match the color systems of the two models.
MixedMap cyclic_inclusion_map(const AlgebraMap& iota, const CyclicModel& a,
                              const CyclicModel& b);

struct RelativeMixed {
  MixedComplex complex;
  std::vector<Quotient> q;
};
RelativeMixed relative_mixed(const CyclicModel& b_model, const MixedMap& incl);

HomologyTable relative_hc(const AlgebraMap& iota, const Colored& ca, const Colored& cb,
                          std::size_t n_top, std::size_t budget = 20000);

// dim HC_{n+2}(B|A) = dim HC_n(B|A) for 1 <= n <= N-4.
struct PeriodicityReport {
  std::vector<std::size_t> dims;  // relative HC, degrees 0..N-2
  std::optional<std::size_t> first_violation;
  bool pass = false;
};
PeriodicityReport periodicity_check(const AlgebraMap& iota, const Colored& ca,
                                    const Colored& cb, std::size_t n_top,
                                    std::size_t budget = 20000);

// Same two-tier bookkeeping as jz_verify, on HC(A) -> HC(B) -> HC(B|A).
struct CyclicJzReport {
  HomologyTable a, b, rel;        // degrees 0..N-2
  std::vector<bool> exact_mid;    // degrees 1..N-2, offset by 1
  std::vector<bool> bookkeeping;  // degrees 2..N-2, offset by 2
  std::optional<std::size_t> first_violation;
  bool pass = false;
};
CyclicJzReport cyclic_jz_verify(const AlgebraMap& iota, const Colored& ca,
                                const Colored& cb, std::size_t n_top,
                                std::size_t budget = 20000);

// Exactness of ... -> HH_n -I-> HC_n -S-> HC_{n-2} -B-> HH_{n-1} -> ... from the
// column filtration of the bicomplex, checked in the reliable range.
struct SbiReport {
  std::optional<std::size_t> first_violation;
  bool pass = false;
};
SbiReport sbi_check(const CyclicModel& m);

}  // namespace homalg

#endif
