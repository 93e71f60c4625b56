#ifndef HOMALG_CHAIN_HPP
#define HOMALG_CHAIN_HPP

#include <string>
#include <vector>

#include "homalg/linalg.hpp"

namespace homalg {

// Non-negatively graded complex truncated at top_degree; d[n]: C_n -> C_{n-1}
// for 1 <= n <= top_degree (d[0] is unused).
struct ChainComplex {
  std::size_t top_degree = 0;
  std::vector<std::size_t> dims;                 // size top_degree + 1
  std::vector<SparseMatrix> d;                   // size top_degree + 1
  std::vector<std::vector<std::string>> labels;  // optional, per degree

  std::vector<std::string> validate() const;  // d compose d = 0, shape checks
};

// Homology dimensions for degrees 0..top_degree-1; the top degree is withheld
// because truncation makes its boundaries unreliable.
struct HomologyTable {
  std::vector<std::size_t> dims;  // dims[n] = dim H_n
};

HomologyTable homology_dims(const ChainComplex& c);

struct ChainMap {
  std::vector<SparseMatrix> maps;  // maps[n]: source C_n -> target C_n
};

std::vector<std::string> check_chain_map(const ChainComplex& src, const ChainComplex& tgt,
                                         const ChainMap& f);

// Cycle representatives completing a boundary basis in degree n.
struct HomologyBasis {
  std::size_t cycle_rank = 0;
  std::size_t boundary_rank = 0;
  SparseMatrix reps;        // one homology class representative per row
  SparseMatrix boundaries;  // spanning rows of the boundary space
};

HomologyBasis homology_basis(const ChainComplex& c, std::size_t n);

// Matrix of the map induced on homology by the degree-n component f of a
// chain map, in the bases of src and tgt (tgt.reps rows x src.reps rows).
Matrix induced_on_homology(const SparseMatrix& f, const HomologyBasis& src,
                           const HomologyBasis& tgt);

}  // namespace homalg

#endif
