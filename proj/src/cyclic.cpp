#include "homalg/cyclic.hpp"

#include <algorithm>
#include <functional>

namespace homalg {

namespace {

void check_budget(std::size_t dim, std::size_t budget, std::size_t degree, const char* what) {
  if (dim > budget)
    throw BudgetError(std::string(what) + " at degree " + std::to_string(degree) +
                      " has dimension " + std::to_string(dim) + ", over the budget of " +
                      std::to_string(budget));
}

}  // namespace

std::vector<std::string> MixedComplex::validate() const {
  std::vector<std::string> out;
  auto shape = [&](const SparseMatrix& m, std::size_t r, std::size_t c, const char* what,
                   std::size_t n) {
    if (m.rows() != r || m.cols() != c)
      out.push_back(std::string(what) + " has the wrong shape at degree " + std::to_string(n));
  };
  if (dims.size() != top_degree + 1 || b.size() != top_degree + 1 ||
      B_op.size() != top_degree + 1) {
    out.push_back("mixed complex arrays do not match the top degree");
    return out;
  }
  for (std::size_t n = 1; n <= top_degree; ++n) shape(b[n], dims[n - 1], dims[n], "b", n);
  for (std::size_t n = 0; n < top_degree; ++n) shape(B_op[n], dims[n + 1], dims[n], "B", n);
  if (!out.empty()) return out;
  for (std::size_t n = 2; n <= top_degree; ++n)
    if (!(b[n - 1] * b[n]).is_zero())
      out.push_back("b.b is nonzero at degree " + std::to_string(n));
  for (std::size_t n = 0; n + 2 <= top_degree; ++n)
    if (!(B_op[n + 1] * B_op[n]).is_zero())
      out.push_back("B.B is nonzero at degree " + std::to_string(n));
  for (std::size_t n = 0; n < top_degree; ++n) {
    SparseMatrix anti = b[n + 1] * B_op[n];
    if (n >= 1) {
      SparseMatrix second = B_op[n - 1] * b[n];
      SparseMatrix sum(anti.rows(), anti.cols());
      for (std::size_t r = 0; r < anti.rows(); ++r)
        sum.set_row(r, sparse_add(anti.row(r), second.row(r), Rational(1)));
      anti = std::move(sum);
    }
    if (!anti.is_zero()) out.push_back("bB + Bb is nonzero at degree " + std::to_string(n));
  }
  return out;
}

namespace {

struct Adapted {
  Algebra alg;
  std::vector<int> lcol, rcol;
  std::vector<bool> is_idem;
  Matrix to_original;
};

Adapted adapt_basis(const Colored& cb) {
  const Algebra& a = cb.alg;
  const std::size_t d = a.dim;
  Eliminator elim(d);
  std::vector<Vec> rows;
  std::vector<int> lc, rc;
  std::vector<bool> idem;
  for (std::size_t u = 0; u < cb.colors(); ++u) {
    if (!elim.add(sparse_of(cb.idem[u])))
      throw ValidationError("adapt_basis: dependent idempotents");
    rows.push_back(cb.idem[u]);
    lc.push_back(static_cast<int>(u));
    rc.push_back(static_cast<int>(u));
    idem.push_back(true);
  }
  for (std::size_t j = 0; j < d && rows.size() < d; ++j) {
    if (!elim.add(sparse_of(a.basis_vector(j)))) continue;
    rows.push_back(a.basis_vector(j));
    lc.push_back(cb.lcol[j]);
    rc.push_back(cb.rcol[j]);
    idem.push_back(false);
  }
  if (rows.size() != d) throw Error("adapt_basis: basis extension failed");
  Matrix t(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) t(j, i) = rows[i][j];
  Matrix tinv = inverse(t);
  std::vector<std::vector<SparseVec>> table(d, std::vector<SparseVec>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      table[i][j] = sparse_of(tinv.apply(a.multiply(rows[i], rows[j])));
  std::vector<std::string> labels(d);
  for (std::size_t i = 0; i < d; ++i)
    labels[i] = idem[i] ? "f" + std::to_string(i) : "v" + std::to_string(i);
  Adapted out;
  out.alg = from_structure_constants(std::move(labels), std::move(table), tinv.apply(a.unit));
  out.lcol = std::move(lc);
  out.rcol = std::move(rc);
  out.is_idem = std::move(idem);
  out.to_original = t;
  return out;
}

// Wrapped strings [b_0, b_1..b_n]; slots past position 0 exclude idempotents.
StringSpace normalized_strings(const Adapted& a, std::size_t n) {
  StringSpace s;
  std::vector<std::vector<int>> byl(
      *std::max_element(a.lcol.begin(), a.lcol.end()) + 1);
  for (std::size_t j = 0; j < a.alg.dim; ++j)
    if (!a.is_idem[j]) byl[a.lcol[j]].push_back(static_cast<int>(j));
  std::vector<int> cur(n + 1);
  std::function<void(std::size_t)> rec = [&](std::size_t depth) {
    if (depth == n + 1) {
      int last_rc = n == 0 ? a.rcol[cur[0]] : a.rcol[cur[n]];
      if (last_rc == a.lcol[cur[0]]) {
        s.index[cur] = static_cast<int>(s.basis.size());
        s.basis.push_back(cur);
      }
      return;
    }
    for (int cand : byl[a.rcol[cur[depth - 1]]]) {
      cur[depth] = cand;
      rec(depth + 1);
    }
  };
  for (std::size_t j = 0; j < a.alg.dim; ++j) {
    cur[0] = static_cast<int>(j);
    rec(1);
  }
  return s;
}

}  // namespace

CyclicModel mixed_of_algebra(const Colored& b, std::size_t n_top, std::size_t budget) {
  Adapted ad = adapt_basis(b);
  CyclicModel m;
  m.alg = ad.alg;
  m.lcol = ad.lcol;
  m.rcol = ad.rcol;
  m.is_idem = ad.is_idem;
  m.to_original = ad.to_original;
  m.spaces.resize(n_top + 1);
  m.mixed.top_degree = n_top;
  m.mixed.dims.resize(n_top + 1);
  m.mixed.b.resize(n_top + 1);
  m.mixed.B_op.resize(n_top + 1);
  for (std::size_t n = 0; n <= n_top; ++n) {
    m.spaces[n] = normalized_strings(ad, n);
    check_budget(m.spaces[n].dim(), budget, n, "normalized chain space");
    m.mixed.dims[n] = m.spaces[n].dim();
  }
  m.mixed.b[0] = SparseMatrix(0, m.mixed.dims[0]);
  for (std::size_t n = 1; n <= n_top; ++n) {
    SparseMatrix d(m.mixed.dims[n - 1], m.mixed.dims[n]);
    const auto& src = m.spaces[n];
    const auto& tgt = m.spaces[n - 1];
    for (std::size_t col = 0; col < src.dim(); ++col) {
      const auto& s = src.basis[col];
      Rational sign(1);
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<int> u;
        u.reserve(n);
        u.insert(u.end(), s.begin(), s.begin() + i + 1);
        u.insert(u.end(), s.begin() + i + 2, s.end());
        for (const auto& [w, c] : ad.alg.product(s[i], s[i + 1])) {
          u[i] = w;
          int row = tgt.find(u);
          if (row >= 0) d.add(row, col, sign * c);
        }
        sign = -sign;
      }
      // wrap: b_n . b_0 with sign (-1)^n
      std::vector<int> u(s.begin(), s.end() - 1);
      for (const auto& [w, c] : ad.alg.product(s[n], s[0])) {
        u[0] = w;
        int row = tgt.find(u);
        if (row >= 0) d.add(row, col, sign * c);
      }
    }
    m.mixed.b[n] = std::move(d);
  }
  for (std::size_t n = 0; n < n_top; ++n) {
    SparseMatrix bo(m.mixed.dims[n + 1], m.mixed.dims[n]);
    const auto& src = m.spaces[n];
    const auto& tgt = m.spaces[n + 1];
    for (std::size_t col = 0; col < src.dim(); ++col) {
      const auto& s = src.basis[col];
      for (std::size_t j = 0; j <= n; ++j) {
        // s t^j: the last j entries rotate to the front
        std::vector<int> u;
        u.reserve(n + 2);
        int first = j == 0 ? s[0] : s[n - j + 1];
        u.push_back(ad.lcol[first]);  // the idempotents are the leading basis vectors
        u.insert(u.end(), s.begin() + (n + 1 - j), s.end());
        u.insert(u.end(), s.begin(), s.begin() + (n + 1 - j));
        int row = tgt.find(u);
        if (row < 0) continue;
        Rational sign = (n * j) % 2 == 0 ? Rational(1) : Rational(-1);
        bo.add(row, col, sign);
      }
    }
    m.mixed.B_op[n] = std::move(bo);
  }
  m.mixed.B_op[n_top] = SparseMatrix(0, m.mixed.dims[n_top]);
  auto bad = m.mixed.validate();
  if (!bad.empty()) throw Error("mixed_of_algebra: " + bad.front());
  return m;
}

CyclicModel mixed_of_algebra(const Algebra& b, std::size_t n_top, std::size_t budget) {
  return mixed_of_algebra(trivial_colored(b), n_top, budget);
}

ChainComplex total_complex(const MixedComplex& m) {
  const std::size_t n_top = m.top_degree;
  ChainComplex c;
  c.top_degree = n_top;
  c.dims.resize(n_top + 1);
  c.d.resize(n_top + 1);
  auto offsets = [&](std::size_t n) {
    std::vector<std::size_t> off;
    std::size_t acc = 0;
    for (std::size_t p = 0; 2 * p <= n; ++p) {
      off.push_back(acc);
      acc += m.dims[n - 2 * p];
    }
    off.push_back(acc);  // total size sentinel
    return off;
  };
  for (std::size_t n = 0; n <= n_top; ++n) c.dims[n] = offsets(n).back();
  c.d[0] = SparseMatrix(0, c.dims[0]);
  for (std::size_t n = 1; n <= n_top; ++n) {
    auto src_off = offsets(n);
    auto tgt_off = offsets(n - 1);
    SparseMatrix d(c.dims[n - 1], c.dims[n]);
    for (std::size_t p = 0; 2 * p <= n; ++p) {
      const std::size_t q = n - 2 * p;
      if (q >= 1) {
        const SparseMatrix& blk = m.b[q];
        for (std::size_t r = 0; r < blk.rows(); ++r)
          for (const auto& [cc, v] : blk.row(r))
            d.add(tgt_off[p] + r, src_off[p] + cc, v);
      }
      if (p >= 1) {
        const SparseMatrix& blk = m.B_op[q];
        for (std::size_t r = 0; r < blk.rows(); ++r)
          for (const auto& [cc, v] : blk.row(r))
            d.add(tgt_off[p - 1] + r, src_off[p] + cc, v);
      }
    }
    c.d[n] = std::move(d);
  }
  return c;
}

HomologyTable hc(const MixedComplex& m) {
  auto table = homology_dims(total_complex(m));
  if (m.top_degree >= 1) table.dims.resize(m.top_degree - 1);
  return table;
}

HomologyTable hc(const Colored& b, std::size_t n_top, std::size_t budget) {
  return hc(mixed_of_algebra(b, n_top, budget).mixed);
}

HomologyTable hc(const Algebra& b, std::size_t n_top, std::size_t budget) {
  return hc(trivial_colored(b), n_top, budget);
}

MixedMap cyclic_inclusion_map(const AlgebraMap& iota, const CyclicModel& a,
                              const CyclicModel& b) {
  const std::size_t n_top = a.mixed.top_degree;
  if (b.mixed.top_degree != n_top)
    throw Error("cyclic_inclusion_map: mismatched truncation degrees");
  Matrix phi = inverse(b.to_original) * (iota.matrix * a.to_original);
  MixedMap f;
  f.maps.resize(n_top + 1);
  for (std::size_t n = 0; n <= n_top; ++n) {
    const auto& src = a.spaces[n];
    const auto& tgt = b.spaces[n];
    SparseMatrix m(tgt.dim(), src.dim());
    std::vector<int> u(n + 1);
    for (std::size_t col = 0; col < src.dim(); ++col) {
      const auto& s = src.basis[col];
      std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t depth,
                                                                  const Rational& coeff) {
        if (depth == n + 1) {
          int row = tgt.find(u);
          if (row >= 0) m.add(row, col, coeff);
          return;
        }
        for (std::size_t j = 0; j < b.alg.dim; ++j) {
          const Rational& c = phi(j, s[depth]);
          if (c == 0) continue;
          if (depth > 0 && b.is_idem[j]) continue;  // slots are normalized
          u[depth] = static_cast<int>(j);
          rec(depth + 1, coeff * c);
        }
      };
      rec(0, Rational(1));
    }
    f.maps[n] = std::move(m);
  }
  for (std::size_t n = 1; n <= n_top; ++n)
    if (!(f.maps[n - 1] * a.mixed.b[n] - b.mixed.b[n] * f.maps[n]).is_zero())
      throw Error("cyclic_inclusion_map: does not commute with b at degree " +
                  std::to_string(n));
  for (std::size_t n = 0; n < n_top; ++n)
    if (!(f.maps[n + 1] * a.mixed.B_op[n] - b.mixed.B_op[n] * f.maps[n]).is_zero())
      throw Error("cyclic_inclusion_map: does not commute with B at degree " +
                  std::to_string(n));
  return f;
}

RelativeMixed relative_mixed(const CyclicModel& b_model, const MixedMap& incl) {
  const std::size_t n_top = b_model.mixed.top_degree;
  RelativeMixed rel;
  rel.q.resize(n_top + 1);
  rel.complex.top_degree = n_top;
  rel.complex.dims.resize(n_top + 1);
  rel.complex.b.resize(n_top + 1);
  rel.complex.B_op.resize(n_top + 1);
  for (std::size_t n = 0; n <= n_top; ++n) {
    SparseMatrix relations = incl.maps[n].transpose();
    rel.q[n] = quotient_by(b_model.mixed.dims[n], relations);
    rel.complex.dims[n] = rel.q[n].dim;
  }
  rel.complex.b[0] = SparseMatrix(0, rel.complex.dims[0]);
  for (std::size_t n = 1; n <= n_top; ++n)
    rel.complex.b[n] = descend(rel.q[n - 1], b_model.mixed.b[n], rel.q[n]);
  for (std::size_t n = 0; n < n_top; ++n)
    rel.complex.B_op[n] = descend(rel.q[n + 1], b_model.mixed.B_op[n], rel.q[n]);
  rel.complex.B_op[n_top] = SparseMatrix(0, rel.complex.dims[n_top]);
  auto bad = rel.complex.validate();
  if (!bad.empty()) throw Error("relative_mixed: " + bad.front());
  return rel;
}

namespace {

void require_cyclic_colors(const AlgebraMap& iota, const Colored& ca, const Colored& cb) {
  if (ca.colors() != cb.colors())
    throw ValidationError("cyclic: color systems of different sizes");
  for (std::size_t u = 0; u < ca.colors(); ++u)
    if (iota.apply(ca.idem[u]) != cb.idem[u])
      throw ValidationError("cyclic: the embedding does not match the idempotents");
}

}  // namespace

HomologyTable relative_hc(const AlgebraMap& iota, const Colored& ca, const Colored& cb,
                          std::size_t n_top, std::size_t budget) {
  require_extension(iota);
  require_cyclic_colors(iota, ca, cb);
  auto ma = mixed_of_algebra(ca, n_top, budget);
  auto mb = mixed_of_algebra(cb, n_top, budget);
  auto incl = cyclic_inclusion_map(iota, ma, mb);
  return hc(relative_mixed(mb, incl).complex);
}

PeriodicityReport periodicity_check(const AlgebraMap& iota, const Colored& ca,
                                    const Colored& cb, std::size_t n_top,
                                    std::size_t budget) {
  PeriodicityReport rep;
  rep.dims = relative_hc(iota, ca, cb, n_top, budget).dims;
  for (std::size_t n = 1; n + 2 < rep.dims.size(); ++n) {
    if (rep.dims[n + 2] != rep.dims[n]) {
      rep.first_violation = n;
      break;
    }
  }
  rep.pass = !rep.first_violation;
  return rep;
}

CyclicJzReport cyclic_jz_verify(const AlgebraMap& iota, const Colored& ca,
                                const Colored& cb, std::size_t n_top, std::size_t budget) {
  require_extension(iota);
  require_cyclic_colors(iota, ca, cb);
  auto ma = mixed_of_algebra(ca, n_top, budget);
  auto mb = mixed_of_algebra(cb, n_top, budget);
  auto incl = cyclic_inclusion_map(iota, ma, mb);
  auto rel = relative_mixed(mb, incl);

  ChainComplex ta = total_complex(ma.mixed);
  ChainComplex tb = total_complex(mb.mixed);
  ChainComplex tr = total_complex(rel.complex);

  // total-complex components of the induced and quotient maps
  auto assemble = [&](const std::vector<SparseMatrix>& per_degree,
                      const std::vector<std::size_t>& src_dims,
                      const std::vector<std::size_t>& tgt_dims) {
    std::vector<SparseMatrix> out(n_top + 1);
    for (std::size_t n = 0; n <= n_top; ++n) {
      std::size_t src_total = 0, tgt_total = 0;
      for (std::size_t p = 0; 2 * p <= n; ++p) {
        src_total += src_dims[n - 2 * p];
        tgt_total += tgt_dims[n - 2 * p];
      }
      SparseMatrix m(tgt_total, src_total);
      std::size_t so = 0, to = 0;
      for (std::size_t p = 0; 2 * p <= n; ++p) {
        const SparseMatrix& blk = per_degree[n - 2 * p];
        for (std::size_t r = 0; r < blk.rows(); ++r)
          for (const auto& [c, v] : blk.row(r)) m.add(to + r, so + c, v);
        so += src_dims[n - 2 * p];
        to += tgt_dims[n - 2 * p];
      }
      out[n] = std::move(m);
    }
    return out;
  };
  auto alpha = assemble(incl.maps, ma.mixed.dims, mb.mixed.dims);
  std::vector<SparseMatrix> proj(n_top + 1);
  for (std::size_t n = 0; n <= n_top; ++n) proj[n] = rel.q[n].projection;
  auto beta = assemble(proj, mb.mixed.dims, rel.complex.dims);
  {
    ChainMap fa{alpha}, fb{beta};
    auto bad = check_chain_map(ta, tb, fa);
    if (bad.empty()) bad = check_chain_map(tb, tr, fb);
    if (!bad.empty()) throw Error("cyclic_jz_verify: " + bad.front());
  }

  CyclicJzReport rep;
  rep.a = homology_dims(ta);
  rep.b = homology_dims(tb);
  rep.rel = homology_dims(tr);
  const std::size_t reliable = n_top >= 1 ? n_top - 1 : 0;  // degrees 0..N-2
  rep.a.dims.resize(reliable);
  rep.b.dims.resize(reliable);
  rep.rel.dims.resize(reliable);

  std::vector<Matrix> alpha_h(reliable);
  std::vector<HomologyBasis> hb_b(reliable);
  for (std::size_t n = 0; n < reliable; ++n) {
    auto hb_a = homology_basis(ta, n);
    hb_b[n] = homology_basis(tb, n);
    alpha_h[n] = induced_on_homology(alpha[n], hb_a, hb_b[n]);
  }
  if (reliable >= 1) rep.exact_mid.resize(reliable - 1);
  for (std::size_t n = 1; n < reliable; ++n) {
    auto hb_rel = homology_basis(tr, n);
    Matrix beta_h = induced_on_homology(beta[n], hb_b[n], hb_rel);
    bool ok = subspace_equal(image_basis(alpha_h[n]), kernel_basis(beta_h));
    rep.exact_mid[n - 1] = ok;
    if (!ok && !rep.first_violation) rep.first_violation = n;
  }
  if (reliable >= 2) rep.bookkeeping.resize(reliable - 2);
  for (std::size_t n = 2; n < reliable; ++n) {
    std::size_t coker = rep.b.dims[n] - rref(alpha_h[n]).rank;
    std::size_t ker_prev = kernel_basis(alpha_h[n - 1]).dim();
    bool ok = rep.rel.dims[n] == coker + ker_prev;
    rep.bookkeeping[n - 2] = ok;
    if (!ok && (!rep.first_violation || *rep.first_violation > n)) rep.first_violation = n;
  }
  rep.pass = !rep.first_violation;
  return rep;
}

SbiReport sbi_check(const CyclicModel& m) {
  const std::size_t n_top = m.mixed.top_degree;
  ChainComplex hoch;
  hoch.top_degree = n_top;
  hoch.dims = m.mixed.dims;
  hoch.d = m.mixed.b;
  ChainComplex tot = total_complex(m.mixed);

  std::vector<HomologyBasis> hb_c(n_top), hb_t(n_top);
  for (std::size_t n = 0; n < n_top; ++n) {
    hb_c[n] = homology_basis(hoch, n);
    hb_t[n] = homology_basis(tot, n);
  }
  std::vector<Matrix> i_h(n_top);
  for (std::size_t n = 0; n < n_top; ++n) {
    SparseMatrix inc(tot.dims[n], m.mixed.dims[n]);
    for (std::size_t j = 0; j < m.mixed.dims[n]; ++j) inc.add(j, j, Rational(1));
    i_h[n] = induced_on_homology(inc, hb_c[n], hb_t[n]);
  }
  SbiReport rep;
  auto fail = [&](std::size_t n) {
    if (!rep.first_violation) rep.first_violation = n;
  };
  for (std::size_t n = 0; n < n_top; ++n) {
    // S_n: T_n -> T_{n-2} drops the column-0 component
    Matrix s_h;
    if (n >= 2) {
      SparseMatrix s(tot.dims[n - 2], tot.dims[n]);
      for (std::size_t j = 0; j < tot.dims[n - 2]; ++j)
        s.add(j, m.mixed.dims[n] + j, Rational(1));
      s_h = induced_on_homology(s, hb_t[n], hb_t[n - 2]);
      if (!subspace_equal(image_basis(i_h[n]), kernel_basis(s_h))) fail(n);
    } else {
      if (rref(i_h[n]).rank != hb_t[n].reps.rows()) fail(n);
    }
    // B_n: H_{n-2}(T) -> H_{n-1}(C), Connes B on the column-1 component
    if (n >= 2 && n - 1 < n_top) {
      SparseMatrix bconn(m.mixed.dims[n - 1], tot.dims[n - 2]);
      const SparseMatrix& blk = m.mixed.B_op[n - 2];
      for (std::size_t r = 0; r < blk.rows(); ++r)
        for (const auto& [c, v] : blk.row(r)) bconn.add(r, c, v);
      Matrix b_h = induced_on_homology(bconn, hb_t[n - 2], hb_c[n - 1]);
      if (!subspace_equal(image_basis(s_h), kernel_basis(b_h))) fail(n);
      if (!subspace_equal(image_basis(b_h), kernel_basis(i_h[n - 1]))) fail(n);
    }
  }
  rep.pass = !rep.first_violation;
  return rep;
}

}  // namespace homalg
