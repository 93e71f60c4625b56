#include "homalg/fibration.hpp"

#include <map>
#include <string>

namespace homalg {

namespace {

std::vector<SparseVec> law_columns(const SparseMatrix& m) {
  SparseMatrix t = m.transpose();
  std::vector<SparseVec> cols(t.rows());
  for (std::size_t j = 0; j < t.rows(); ++j) cols[j] = t.row(j);
  return cols;
}

using Accum = std::map<int, Rational>;

void accum_add(Accum& a, int i, const Rational& v) {
  auto [it, fresh] = a.try_emplace(i, v);
  if (!fresh) {
    it->second += v;
    if (it->second == 0) a.erase(it);
  }
}

SparseVec accum_out(const Accum& a) {
  SparseVec s;
  s.reserve(a.size());
  for (const auto& [i, v] : a) s.emplace_back(i, v);
  return s;
}

void check_law_shape(const DistributiveLaw& w) {
  std::size_t d = w.b_algebra.dim * w.c_algebra.dim;
  if (w.matrix.rows() != d || w.matrix.cols() != d)
    throw ValidationError("distributive law: matrix shape mismatch");
}

// L_g (x) I on B (x) V, index i*right_dim + j.
SparseMatrix left_mult_kron(const Algebra& b, const Vec& g, std::size_t right_dim) {
  SparseMatrix m(b.dim * right_dim, b.dim * right_dim);
  for (std::size_t i = 0; i < b.dim; ++i) {
    Accum col;
    for (std::size_t k = 0; k < b.dim; ++k) {
      if (g[k] == 0) continue;
      for (const auto& [p, v] : b.product(k, i)) accum_add(col, p, g[k] * v);
    }
    for (const auto& [p, v] : col)
      for (std::size_t j = 0; j < right_dim; ++j)
        m.add(static_cast<std::size_t>(p) * right_dim + j, i * right_dim + j, v);
  }
  return m;
}

// I (x) R_g on V (x) B, index i*dim(B) + j.
SparseMatrix right_mult_kron(const Algebra& b, const Vec& g, std::size_t left_dim) {
  SparseMatrix m(left_dim * b.dim, left_dim * b.dim);
  for (std::size_t j = 0; j < b.dim; ++j) {
    Accum col;
    for (std::size_t k = 0; k < b.dim; ++k) {
      if (g[k] == 0) continue;
      for (const auto& [p, v] : b.product(j, k)) accum_add(col, p, g[k] * v);
    }
    for (const auto& [p, v] : col)
      for (std::size_t i = 0; i < left_dim; ++i)
        m.add(i * b.dim + static_cast<std::size_t>(p), i * b.dim + j, v);
  }
  return m;
}

// Right multiplication by g (x) 1_C on the twisted product B (x) C.
SparseMatrix twist_right_mult(const DistributiveLaw& w, const std::vector<SparseVec>& cols,
                              const Vec& g) {
  const Algebra& b = w.b_algebra;
  std::size_t dB = b.dim, dC = w.c_algebra.dim;
  SparseMatrix m(dB * dC, dB * dC);
  for (std::size_t c = 0; c < dC; ++c) {
    Accum wc;  // law(e_c (x) g) in B (x) C
    for (std::size_t k = 0; k < dB; ++k) {
      if (g[k] == 0) continue;
      for (const auto& [t, v] : cols[c * dB + k]) accum_add(wc, t, g[k] * v);
    }
    for (const auto& [t, v] : wc) {
      std::size_t bp = static_cast<std::size_t>(t) / dC, cp = static_cast<std::size_t>(t) % dC;
      for (std::size_t x = 0; x < dB; ++x)
        for (const auto& [p, pv] : b.product(x, bp))
          m.add(static_cast<std::size_t>(p) * dC + cp, x * dC + c, v * pv);
    }
  }
  return m;
}

SparseMatrix multiplication_sparse(const Algebra& b) {
  SparseMatrix m(b.dim, b.dim * b.dim);
  for (std::size_t i = 0; i < b.dim; ++i)
    for (std::size_t j = 0; j < b.dim; ++j)
      for (const auto& [p, v] : b.product(i, j)) m.add(p, i * b.dim + j, v);
  return m;
}

std::vector<Vec> basis_vectors(const Algebra& a) {
  std::vector<Vec> out;
  out.reserve(a.dim);
  for (std::size_t i = 0; i < a.dim; ++i) out.push_back(a.basis_vector(i));
  return out;
}

}  // namespace

DistributiveLaw flip_law(const Algebra& b, const Algebra& c) {
  SparseMatrix m(b.dim * c.dim, b.dim * c.dim);
  for (std::size_t j = 0; j < c.dim; ++j)
    for (std::size_t i = 0; i < b.dim; ++i) m.add(i * c.dim + j, j * b.dim + i, Rational(1));
  return {b, c, std::move(m)};
}

bool is_left_transposition(const DistributiveLaw& w) {
  check_law_shape(w);
  const Algebra& b = w.b_algebra;
  const Algebra& c = w.c_algebra;
  std::size_t dB = b.dim, dC = c.dim;
  auto cols = law_columns(w.matrix);
  for (std::size_t bi = 0; bi < dB; ++bi) {
    Accum got;
    for (std::size_t ci = 0; ci < dC; ++ci) {
      if (c.unit[ci] == 0) continue;
      for (const auto& [t, v] : cols[ci * dB + bi]) accum_add(got, t, c.unit[ci] * v);
    }
    Accum want;
    for (std::size_t ci = 0; ci < dC; ++ci)
      if (c.unit[ci] != 0) want.emplace(static_cast<int>(bi * dC + ci), c.unit[ci]);
    if (got != want) return false;
  }
  for (std::size_t c1 = 0; c1 < dC; ++c1)
    for (std::size_t c2 = 0; c2 < dC; ++c2)
      for (std::size_t bi = 0; bi < dB; ++bi) {
        Accum lhs, rhs;
        for (const auto& [ck, vk] : c.product(c1, c2))
          for (const auto& [t, v] : cols[static_cast<std::size_t>(ck) * dB + bi])
            accum_add(lhs, t, vk * v);
        for (const auto& [t2, v2] : cols[c2 * dB + bi]) {
          std::size_t b2 = static_cast<std::size_t>(t2) / dC, c2p = static_cast<std::size_t>(t2) % dC;
          for (const auto& [t1, v1] : cols[c1 * dB + b2]) {
            std::size_t b1 = static_cast<std::size_t>(t1) / dC, c1p = static_cast<std::size_t>(t1) % dC;
            for (const auto& [ck, vk] : c.product(c1p, c2p))
              accum_add(rhs, static_cast<int>(b1 * dC) + ck, v1 * v2 * vk);
          }
        }
        if (lhs != rhs) return false;
      }
  return true;
}

bool is_right_transposition(const DistributiveLaw& w) {
  check_law_shape(w);
  const Algebra& b = w.b_algebra;
  const Algebra& c = w.c_algebra;
  std::size_t dB = b.dim, dC = c.dim;
  auto cols = law_columns(w.matrix);
  for (std::size_t ci = 0; ci < dC; ++ci) {
    Accum got;
    for (std::size_t bi = 0; bi < dB; ++bi) {
      if (b.unit[bi] == 0) continue;
      for (const auto& [t, v] : cols[ci * dB + bi]) accum_add(got, t, b.unit[bi] * v);
    }
    Accum want;
    for (std::size_t bi = 0; bi < dB; ++bi)
      if (b.unit[bi] != 0) want.emplace(static_cast<int>(bi * dC + ci), b.unit[bi]);
    if (got != want) return false;
  }
  for (std::size_t ci = 0; ci < dC; ++ci)
    for (std::size_t b1 = 0; b1 < dB; ++b1)
      for (std::size_t b2 = 0; b2 < dB; ++b2) {
        Accum lhs, rhs;
        for (const auto& [bk, vk] : b.product(b1, b2))
          for (const auto& [t, v] : cols[ci * dB + static_cast<std::size_t>(bk)])
            accum_add(lhs, t, vk * v);
        for (const auto& [t1, v1] : cols[ci * dB + b1]) {
          std::size_t b1p = static_cast<std::size_t>(t1) / dC, c1p = static_cast<std::size_t>(t1) % dC;
          for (const auto& [t2, v2] : cols[c1p * dB + b2]) {
            std::size_t b2p = static_cast<std::size_t>(t2) / dC, c2p = static_cast<std::size_t>(t2) % dC;
            for (const auto& [bk, vk] : b.product(b1p, b2p))
              accum_add(rhs, static_cast<int>(static_cast<std::size_t>(bk) * dC + c2p), v1 * v2 * vk);
          }
        }
        if (lhs != rhs) return false;
      }
  return true;
}

bool is_distributive_law(const DistributiveLaw& w) {
  return is_left_transposition(w) && is_right_transposition(w);
}

Algebra twisted_product(const DistributiveLaw& w) {
  check_law_shape(w);
  const Algebra& b = w.b_algebra;
  const Algebra& c = w.c_algebra;
  std::size_t dB = b.dim, dC = c.dim, d = dB * dC;
  auto cols = law_columns(w.matrix);
  std::vector<std::string> labels;
  labels.reserve(d);
  for (std::size_t i = 0; i < dB; ++i)
    for (std::size_t j = 0; j < dC; ++j) labels.push_back(b.labels[i] + "(x)" + c.labels[j]);
  std::vector<std::vector<SparseVec>> table(d, std::vector<SparseVec>(d));
  for (std::size_t i1 = 0; i1 < dB; ++i1)
    for (std::size_t j1 = 0; j1 < dC; ++j1)
      for (std::size_t i2 = 0; i2 < dB; ++i2)
        for (std::size_t j2 = 0; j2 < dC; ++j2) {
          Accum out;
          for (const auto& [t, v] : cols[j1 * dB + i2]) {
            std::size_t bp = static_cast<std::size_t>(t) / dC, cp = static_cast<std::size_t>(t) % dC;
            for (const auto& [bk, vb] : b.product(i1, bp))
              for (const auto& [ck, vc] : c.product(cp, j2))
                accum_add(out, static_cast<int>(static_cast<std::size_t>(bk) * dC) + ck, v * vb * vc);
          }
          table[i1 * dC + j1][i2 * dC + j2] = accum_out(out);
        }
  Vec unit(d, Rational(0));
  for (std::size_t i = 0; i < dB; ++i)
    for (std::size_t j = 0; j < dC; ++j)
      if (b.unit[i] != 0 && c.unit[j] != 0) unit[i * dC + j] = b.unit[i] * c.unit[j];
  return from_structure_constants(std::move(labels), std::move(table), std::move(unit));
}

bool check_invariance(const std::vector<Vec>& generators, const DistributiveLaw& w) {
  check_law_shape(w);
  std::size_t dB = w.b_algebra.dim, dC = w.c_algebra.dim;
  auto cols = law_columns(w.matrix);
  for (const auto& x : generators) {
    if (x.size() != dB) throw ValidationError("check_invariance: generator dimension mismatch");
    for (std::size_t c = 0; c < dC; ++c) {
      Vec y(dB * dC, Rational(0));
      for (std::size_t k = 0; k < dB; ++k) {
        if (x[k] == 0) continue;
        for (const auto& [t, v] : cols[c * dB + k]) y[t] += x[k] * v;
      }
      std::size_t lead = dB;
      for (std::size_t i = 0; i < dB; ++i)
        if (x[i] != 0) {
          lead = i;
          break;
        }
      for (std::size_t cp = 0; cp < dC; ++cp) {
        Rational lambda = lead < dB ? y[lead * dC + cp] / x[lead] : Rational(0);
        for (std::size_t i = 0; i < dB; ++i)
          if (y[i * dC + cp] != lambda * x[i]) return false;
      }
    }
  }
  return true;
}

Quotient tensor_square_of(const AlgebraMap& iota) {
  require_extension(iota);
  Bimodule reg = regular_bimodule(iota.target);
  return tensor_over(restrict_right(reg, iota), restrict_left(reg, iota));
}

namespace {

bool can_intertwines(const Fibration& f, const std::vector<SparseVec>& cols,
                     const std::vector<Vec>& gens) {
  const Algebra& b = f.extension.target;
  std::size_t dC = f.fibre.dim;
  for (const auto& g : gens) {
    SparseMatrix lsrc =
        descend(f.tensor_square, left_mult_kron(b, g, b.dim), f.tensor_square);
    SparseMatrix rsrc =
        descend(f.tensor_square, right_mult_kron(b, g, b.dim), f.tensor_square);
    SparseMatrix ltgt = left_mult_kron(b, g, dC);
    SparseMatrix rtgt = twist_right_mult(f.law, cols, g);
    if (!(f.can * lsrc - ltgt * f.can).is_zero()) return false;
    if (!(f.can * rsrc - rtgt * f.can).is_zero()) return false;
  }
  return true;
}

// A B^e-linear section of can, solved as a dense linear system.
bool has_section(const Fibration& f, const std::vector<SparseVec>& cols,
                 const std::vector<Vec>& gens) {
  const Algebra& b = f.extension.target;
  std::size_t n = f.tensor_square.dim, m = b.dim * f.fibre.dim;
  Matrix can = f.can.to_dense();
  std::vector<Vec> rows;
  Vec rhs;
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t j = 0; j < m; ++j) {
      Vec row(n * m, Rational(0));
      for (std::size_t i = 0; i < n; ++i) row[i * m + j] = can(r, i);
      rows.push_back(std::move(row));
      rhs.push_back(r == j ? Rational(1) : Rational(0));
    }
  for (const auto& g : gens) {
    Matrix lsrc =
        descend(f.tensor_square, left_mult_kron(b, g, b.dim), f.tensor_square).to_dense();
    Matrix rsrc =
        descend(f.tensor_square, right_mult_kron(b, g, b.dim), f.tensor_square).to_dense();
    Matrix ltgt = left_mult_kron(b, g, f.fibre.dim).to_dense();
    Matrix rtgt = twist_right_mult(f.law, cols, g).to_dense();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        Vec row(n * m, Rational(0));
        for (std::size_t k = 0; k < m; ++k) row[i * m + k] += ltgt(k, j);
        for (std::size_t k = 0; k < n; ++k) row[k * m + j] -= lsrc(i, k);
        rows.push_back(std::move(row));
        rhs.push_back(Rational(0));
        Vec row2(n * m, Rational(0));
        for (std::size_t k = 0; k < m; ++k) row2[i * m + k] += rtgt(k, j);
        for (std::size_t k = 0; k < n; ++k) row2[k * m + j] -= rsrc(i, k);
        rows.push_back(std::move(row2));
        rhs.push_back(Rational(0));
      }
  }
  Matrix sys(rows.size(), n * m);
  for (std::size_t i = 0; i < rows.size(); ++i) sys.set_row(i, rows[i]);
  return solve(sys, rhs).has_value();
}

bool kernel_projective(const Fibration& f) {
  SparseMatrix k = sparse_kernel_basis(f.can);
  if (k.rows() == 0) return true;
  const Algebra& b = f.extension.target;
  Subspace s{f.tensor_square.dim, k.to_dense()};
  Bimodule mod{b, k.rows(), {}, {}};
  for (std::size_t i = 0; i < b.dim; ++i) {
    Vec ei = b.basis_vector(i);
    mod.left_action.push_back(restrict_action(
        descend(f.tensor_square, left_mult_kron(b, ei, b.dim), f.tensor_square).to_dense(), s));
    mod.right_action.push_back(restrict_action(
        descend(f.tensor_square, right_mult_kron(b, ei, b.dim), f.tensor_square).to_dense(), s));
  }
  return is_projective(over_enveloping(mod));
}

}  // namespace

bool separable_extension(const AlgebraMap& iota, const Quotient& tsq,
                         const std::vector<Vec>& gens) {
  const Algebra& b = iota.target;
  SparseMatrix stacked(0, tsq.dim);
  for (const auto& em : gens) {
    SparseMatrix d = descend(tsq, left_mult_kron(b, em, b.dim), tsq) -
                     descend(tsq, right_mult_kron(b, em, b.dim), tsq);
    for (std::size_t i = 0; i < d.rows(); ++i)
      if (!d.row(i).empty()) stacked.append_row(d.row(i));
  }
  SparseMatrix ker = sparse_kernel_basis(stacked);
  if (ker.rows() == 0) return false;
  SparseMatrix mu = multiplication_sparse(b) * tsq.section;
  Matrix sys(b.dim, ker.rows());
  for (std::size_t j = 0; j < ker.rows(); ++j) {
    Vec img = dense_of(mu.apply(ker.row(j)), b.dim);
    for (std::size_t i = 0; i < b.dim; ++i) sys(i, j) = img[i];
  }
  return solve(sys, b.unit).has_value();
}

FibrationFlags classify(const Fibration& f) {
  require_extension(f.extension);
  const Algebra& b = f.extension.target;
  const Algebra& a = f.extension.source;
  std::size_t dBC = b.dim * f.fibre.dim;
  FibrationFlags fl;

  bool law_ok = is_distributive_law(f.law);
  std::size_t law_rank = law_ok ? sparse_rank(f.law.matrix) : 0;
  fl.unramified = law_ok && law_rank == f.law.matrix.rows() && law_rank == f.law.matrix.cols();
  fl.etale = law_ok && law_rank == f.law.matrix.cols();

  std::vector<Vec> inv_gens;
  inv_gens.reserve(f.invariance_generators.size());
  for (const auto& g : f.invariance_generators) inv_gens.push_back(f.extension.apply(g));
  bool invariant = law_ok && check_invariance(inv_gens, f.law);

  auto cols = law_columns(f.law.matrix);
  std::vector<Vec> gens = f.b_generators.empty() ? basis_vectors(b) : f.b_generators;
  bool can_shaped = f.can.rows() == dBC && f.can.cols() == f.tensor_square.dim;
  bool intertwines = can_shaped && can_intertwines(f, cols, gens);
  std::size_t can_rank = can_shaped ? sparse_rank(f.can) : 0;
  fl.is_fibration = law_ok && invariant && intertwines && can_rank == dBC;
  fl.galois = fl.is_fibration && f.tensor_square.dim == dBC && can_rank == dBC;
  fl.separable_fibration =
      fl.galois || (fl.is_fibration && has_section(f, cols, gens));
  fl.smooth_fibration = fl.galois || (fl.is_fibration && kernel_projective(f));

  fl.ext_faithfully_flat = is_faithfully_flat(f.extension);
  fl.ext_separable = separable_extension(f.extension, f.tensor_square, gens);
  // char 0: a semisimple algebra is separable, so its enveloping algebra is
  // again semisimple and every module is projective.
  fl.ext_smooth = radical(b).dim() == 0
                      ? true
                      : is_projective(over_enveloping(sigma(f.extension).module));
  fl.ext_reduced_flat = radical(a).dim() == 0
                            ? true
                            : is_projective(over_enveloping(mho(f.extension).module));
  return fl;
}

Fibration trivial_fibration(const Algebra& b) {
  Fibration f;
  f.extension = identity_map(b);
  f.fibre = ground_field();
  f.law = flip_law(b, f.fibre);
  f.tensor_square = tensor_square_of(f.extension);
  f.can = multiplication_sparse(b) * f.tensor_square.section;
  f.invariance_generators = basis_vectors(b);
  Quotient cq = commutator_quotient(regular_bimodule(b));
  f.fibre_coefficients =
      Bimodule{f.fibre, cq.dim, {Matrix::identity(cq.dim)}, {Matrix::identity(cq.dim)}};
  f.base_colored = trivial_colored(b);
  f.total_colored = trivial_colored(b);
  return f;
}

Fibration smash_fibration(const Algebra& l, const FiniteGroup& g,
                          const std::vector<Matrix>& action) {
  std::size_t dL = l.dim, n = g.order;
  if (action.size() != n) throw ValidationError("smash_fibration: one action matrix per group element");
  for (std::size_t i = 0; i < dL; ++i)
    for (std::size_t j = 0; j < dL; ++j) {
      SparseVec want = i == j ? SparseVec{{static_cast<int>(i), Rational(1)}} : SparseVec{};
      if (l.product(i, j) != want)
        throw ValidationError("smash_fibration: the basis of L must be orthogonal idempotents");
    }
  std::vector<std::vector<std::size_t>> perm(n, std::vector<std::size_t>(dL));
  for (std::size_t gi = 0; gi < n; ++gi) {
    const Matrix& m = action[gi];
    if (m.rows() != dL || m.cols() != dL)
      throw ValidationError("smash_fibration: action matrix shape mismatch");
    for (std::size_t j = 0; j < dL; ++j) {
      std::size_t hits = 0, img = 0;
      for (std::size_t i = 0; i < dL; ++i) {
        if (m(i, j) == 0) continue;
        if (m(i, j) != 1) throw ValidationError("smash_fibration: action must permute the basis");
        ++hits;
        img = i;
      }
      if (hits != 1) throw ValidationError("smash_fibration: action must permute the basis");
      perm[gi][j] = img;
    }
  }
  for (std::size_t gi = 0; gi < n; ++gi)
    for (std::size_t hi = 0; hi < n; ++hi)
      for (std::size_t j = 0; j < dL; ++j)
        if (perm[gi][perm[hi][j]] != perm[static_cast<std::size_t>(g.mult[gi][hi])][j])
          throw ValidationError("smash_fibration: action is not a group action");
  for (std::size_t j = 0; j < dL; ++j)
    if (perm[static_cast<std::size_t>(g.identity)][j] != j)
      throw ValidationError("smash_fibration: identity must act trivially");
  if (dL != n && !(dL == 1 && n == 1))
    throw ValidationError("smash_fibration: the action must be simply transitive on the basis");
  if (dL == n) {
    std::vector<bool> seen(dL, false);
    for (std::size_t gi = 0; gi < n; ++gi) {
      if (seen[perm[gi][0]])
        throw ValidationError("smash_fibration: the action must be simply transitive on the basis");
      seen[perm[gi][0]] = true;
    }
  }

  Algebra kg = group_algebra(g);
  SparseMatrix w1(dL * n, n * dL);  // g (x) u -> g.u (x) g
  for (std::size_t gi = 0; gi < n; ++gi)
    for (std::size_t u = 0; u < dL; ++u)
      w1.add(perm[gi][u] * n + gi, gi * dL + u, Rational(1));
  DistributiveLaw law1{l, kg, std::move(w1)};
  Algebra b = twisted_product(law1);  // basis (u_i, g) = i*n + g

  Fibration f;
  Matrix emb(b.dim, n);
  for (std::size_t gi = 0; gi < n; ++gi)
    for (std::size_t i = 0; i < dL; ++i) emb(i * n + gi, gi) = 1;
  f.extension = {kg, b, std::move(emb)};
  require_extension(f.extension);
  f.fibre = l;
  f.law = flip_law(b, l);
  f.tensor_square = tensor_square_of(f.extension);
  SparseMatrix can(b.dim * dL, f.tensor_square.dim);
  SparseMatrix sect_t = f.tensor_square.section.transpose();
  for (std::size_t t = 0; t < f.tensor_square.dim; ++t) {
    Vec amb = dense_of(sect_t.row(t), b.dim * b.dim);
    Accum col;
    for (std::size_t i = 0; i < b.dim; ++i)
      for (std::size_t j = 0; j < b.dim; ++j) {
        if (amb[i * b.dim + j] == 0) continue;
        for (std::size_t gi = 0; gi < n; ++gi) {
          Vec z = b.multiply(b.multiply(b.basis_vector(i), f.extension.matrix.col(gi)),
                             b.basis_vector(j));
          for (std::size_t p = 0; p < b.dim; ++p)
            if (z[p] != 0)
              accum_add(col, static_cast<int>(p * dL + perm[gi][0]), amb[i * b.dim + j] * z[p]);
        }
      }
    for (const auto& [r, v] : col) can.add(static_cast<std::size_t>(r), t, v);
  }
  f.can = std::move(can);
  f.invariance_generators = basis_vectors(kg);
  Bimodule v{l, dL, {}, {}};
  for (std::size_t i = 0; i < dL; ++i) {
    v.left_action.push_back(l.left_mult(l.basis_vector(i)));
    Matrix r(dL, dL);
    if (i == 0) r = Matrix::identity(dL);
    v.right_action.push_back(std::move(r));
  }
  f.fibre_coefficients = std::move(v);
  f.base_colored = trivial_colored(kg);
  f.total_colored = trivial_colored(b);
  return f;
}

HjzReport verify_main_hjz(const Fibration& f, const Bimodule& x, const Bimodule& v,
                          std::size_t n_top, std::size_t budget) {
  HjzReport r;
  auto rel = hochschild_chain(f.total_colored, f.extension, x, n_top, budget);
  r.chain_dims = rel.complex.dims;
  r.relative = homology_dims(rel.complex).dims;
  r.fibre_side = hh(f.fibre, v, n_top, budget).dims;
  r.coeff_dim = commutator_quotient(restrict(x, f.extension)).dim;
  r.pass = v.dim == r.coeff_dim;
  if (!r.pass) r.first_violation = 0;
  for (std::size_t d = 0; d < n_top && r.pass; ++d)
    if (r.relative[d] != r.fibre_side[d]) {
      r.pass = false;
      r.first_violation = d;
    }
  std::size_t power = 1;
  for (std::size_t d = 0; d <= n_top && r.pass; ++d) {
    if (r.chain_dims[d] != r.coeff_dim * power) {
      r.pass = false;
      r.first_violation = d;
    }
    power *= f.fibre.dim;
  }
  return r;
}

HjzReport verify_main_hjz(const Fibration& f, std::size_t n_top, std::size_t budget) {
  return verify_main_hjz(f, regular_bimodule(f.extension.target), f.fibre_coefficients,
                         n_top, budget);
}

CjzReport verify_main_cjz(const Fibration& f, std::size_t n_top, std::size_t budget) {
  CjzReport r;
  Bimodule x = regular_bimodule(f.extension.target);
  r.jz = jz_verify(f.extension, f.base_colored, f.total_colored, x, n_top, budget);
  r.fibre_hh = hh(f.fibre, regular_bimodule(f.fibre), n_top, budget).dims;
  r.coinvariant_dim = commutator_quotient(restrict(x, f.extension)).dim;
  r.pass = r.jz.pass;
  if (!r.pass) r.first_violation = r.jz.first_violation;
  for (std::size_t d = 1; d < n_top; ++d) {
    bool ok = r.jz.rel.dims[d] == r.coinvariant_dim * r.fibre_hh[d];
    r.factorization.push_back(ok);
    if (!ok && r.pass) {
      r.pass = false;
      r.first_violation = d;
    }
  }
  return r;
}

}  // namespace homalg
