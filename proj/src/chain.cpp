#include "homalg/chain.hpp"

namespace homalg {

std::vector<std::string> ChainComplex::validate() const {
  std::vector<std::string> out;
  if (dims.size() != top_degree + 1 || d.size() != top_degree + 1) {
    out.push_back("degree range inconsistent with top_degree");
    return out;
  }
  for (std::size_t n = 1; n <= top_degree; ++n)
    if (d[n].rows() != dims[n - 1] || d[n].cols() != dims[n]) {
      out.push_back("differential " + std::to_string(n) + " has wrong shape");
      return out;
    }
  for (std::size_t n = 2; n <= top_degree; ++n)
    if (!(d[n - 1] * d[n]).is_zero())
      out.push_back("d o d != 0 at degree " + std::to_string(n));
  return out;
}

HomologyTable homology_dims(const ChainComplex& c) {
  std::vector<std::size_t> rank(c.top_degree + 2, 0);
  for (std::size_t n = 1; n <= c.top_degree; ++n) rank[n] = sparse_rank(c.d[n]);
  HomologyTable t;
  for (std::size_t n = 0; n < c.top_degree; ++n)
    t.dims.push_back(c.dims[n] - rank[n] - rank[n + 1]);
  return t;
}

std::vector<std::string> check_chain_map(const ChainComplex& src, const ChainComplex& tgt,
                                         const ChainMap& f) {
  std::vector<std::string> out;
  const std::size_t n_top = std::min(src.top_degree, tgt.top_degree);
  if (f.maps.size() < n_top + 1) {
    out.push_back("chain map missing degrees");
    return out;
  }
  for (std::size_t n = 0; n <= n_top; ++n)
    if (f.maps[n].rows() != tgt.dims[n] || f.maps[n].cols() != src.dims[n]) {
      out.push_back("component " + std::to_string(n) + " has wrong shape");
      return out;
    }
  for (std::size_t n = 1; n <= n_top; ++n)
    if (!(tgt.d[n] * f.maps[n] - f.maps[n - 1] * src.d[n]).is_zero())
      out.push_back("does not commute with d at degree " + std::to_string(n));
  return out;
}

HomologyBasis homology_basis(const ChainComplex& c, std::size_t n) {
  if (n >= c.top_degree)
    throw Error("homology_basis: degree outside the reliable range");
  const std::size_t dim = c.dims[n];
  HomologyBasis h;
  h.reps = SparseMatrix(0, dim);
  h.boundaries = SparseMatrix(0, dim);
  Eliminator elim(dim);
  const SparseMatrix dt = c.d[n + 1].transpose();
  for (std::size_t j = 0; j < dt.rows(); ++j) {
    SparseVec col = dt.row(j);
    if (elim.add(col)) h.boundaries.append_row(std::move(col));
  }
  h.boundary_rank = elim.rank();
  SparseMatrix z = n == 0 ? SparseMatrix::identity(dim) : sparse_kernel_basis(c.d[n]);
  h.cycle_rank = z.rows();
  for (std::size_t i = 0; i < z.rows(); ++i)
    if (elim.add(z.row(i))) h.reps.append_row(z.row(i));
  return h;
}

Matrix induced_on_homology(const SparseMatrix& f, const HomologyBasis& src,
                           const HomologyBasis& tgt) {
  const std::size_t h = tgt.reps.rows();
  Eliminator elim(f.rows(), true);
  for (std::size_t i = 0; i < h; ++i) elim.add(tgt.reps.row(i));
  for (std::size_t i = 0; i < tgt.boundaries.rows(); ++i) elim.add(tgt.boundaries.row(i));
  Matrix out(h, src.reps.rows());
  for (std::size_t k = 0; k < src.reps.rows(); ++k) {
    SparseVec img = f.apply(src.reps.row(k));
    auto coords = elim.express(img);
    if (!coords)
      throw Error("induced_on_homology: image is not a cycle modulo boundaries");
    for (const auto& [i, v] : *coords)
      if (i < static_cast<int>(h)) out(i, k) = v;
  }
  return out;
}

}  // namespace homalg
