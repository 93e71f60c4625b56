#include "homalg/bimodule.hpp"

#include <string>

namespace homalg {

namespace {

Matrix combo(const std::vector<Matrix>& mats, const Vec& a, std::size_t dim) {
  Matrix r(dim, dim);
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] == 0) continue;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        if (mats[k](i, j) != 0) r(i, j) += a[k] * mats[k](i, j);
  }
  return r;
}

Matrix expected_product(const std::vector<Matrix>& mats, const SparseVec& coords,
                        std::size_t dim) {
  Matrix r(dim, dim);
  for (const auto& [m, c] : coords)
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        if (mats[m](i, j) != 0) r(i, j) += c * mats[m](i, j);
  return r;
}

void check_rep(const Algebra& a, const std::vector<Matrix>& mats, std::size_t dim,
               bool anti, const char* which, std::vector<std::string>& out) {
  if (mats.size() != a.dim) {
    out.push_back(std::string(which) + ": expected one matrix per basis element");
    return;
  }
  for (const auto& m : mats)
    if (m.rows() != dim || m.cols() != dim) {
      out.push_back(std::string(which) + ": action matrix of wrong shape");
      return;
    }
  Matrix unit_act = combo(mats, a.unit, dim);
  if (!(unit_act == Matrix::identity(dim)))
    out.push_back(std::string(which) + ": unit does not act as identity");
  for (std::size_t i = 0; i < a.dim && out.size() < 20; ++i)
    for (std::size_t j = 0; j < a.dim && out.size() < 20; ++j) {
      Matrix lhs = anti ? mats[j] * mats[i] : mats[i] * mats[j];
      if (!(lhs == expected_product(mats, a.product(i, j), dim)))
        out.push_back(std::string(which) + ": action not multiplicative at (" +
                      std::to_string(i) + "," + std::to_string(j) + ")");
    }
}

}  // namespace

Matrix LeftModule::act_of(const Vec& a) const { return combo(action, a, dim); }
Matrix RightModule::act_of(const Vec& a) const { return combo(action, a, dim); }
Matrix Bimodule::left_of(const Vec& a) const { return combo(left_action, a, dim); }
Matrix Bimodule::right_of(const Vec& a) const { return combo(right_action, a, dim); }

std::vector<std::string> LeftModule::validate() const {
  std::vector<std::string> out;
  check_rep(over, action, dim, false, "left action", out);
  return out;
}

std::vector<std::string> RightModule::validate() const {
  std::vector<std::string> out;
  check_rep(over, action, dim, true, "right action", out);
  return out;
}

LeftModule Bimodule::left_module() const { return {over, dim, left_action}; }
RightModule Bimodule::right_module() const { return {over, dim, right_action}; }

std::vector<std::string> Bimodule::validate() const {
  std::vector<std::string> out;
  check_rep(over, left_action, dim, false, "left action", out);
  check_rep(over, right_action, dim, true, "right action", out);
  for (std::size_t i = 0; i < over.dim && out.size() < 20; ++i)
    for (std::size_t j = 0; j < over.dim && out.size() < 20; ++j)
      if (!(left_action[i] * right_action[j] == right_action[j] * left_action[i]))
        out.push_back("actions do not commute at (" + std::to_string(i) + "," +
                      std::to_string(j) + ")");
  return out;
}

std::vector<std::string> check_bimodule_map(const BimoduleMap& f) {
  std::vector<std::string> out;
  if (f.source.over.dim != f.target.over.dim || f.source.over.table != f.target.over.table)
    out.push_back("source and target are not over the same algebra");
  if (f.matrix.rows() != f.target.dim || f.matrix.cols() != f.source.dim) {
    out.push_back("matrix has wrong shape");
    return out;
  }
  if (!out.empty()) return out;
  for (std::size_t k = 0; k < f.source.over.dim && out.size() < 20; ++k) {
    if (!(f.target.left_action[k] * f.matrix == f.matrix * f.source.left_action[k]))
      out.push_back("does not intertwine left action of basis element " + std::to_string(k));
    if (!(f.target.right_action[k] * f.matrix == f.matrix * f.source.right_action[k]))
      out.push_back("does not intertwine right action of basis element " + std::to_string(k));
  }
  return out;
}

Bimodule regular_bimodule(const Algebra& a) {
  Bimodule m{a, a.dim, {}, {}};
  for (std::size_t k = 0; k < a.dim; ++k) {
    m.left_action.push_back(a.left_mult(a.basis_vector(k)));
    m.right_action.push_back(a.right_mult(a.basis_vector(k)));
  }
  return m;
}

Bimodule restrict(const Bimodule& y, const AlgebraMap& iota) {
  Bimodule m{iota.source, y.dim, {}, {}};
  for (std::size_t k = 0; k < iota.source.dim; ++k) {
    Vec img = iota.matrix.col(k);
    m.left_action.push_back(y.left_of(img));
    m.right_action.push_back(y.right_of(img));
  }
  return m;
}

LeftModule restrict_left(const Bimodule& y, const AlgebraMap& iota) {
  return restrict(y, iota).left_module();
}

RightModule restrict_right(const Bimodule& y, const AlgebraMap& iota) {
  return restrict(y, iota).right_module();
}

Quotient tensor_over(const RightModule& m, const LeftModule& n) {
  if (m.over.dim != n.over.dim || m.over.table != n.over.table)
    throw ValidationError("tensor_over: factors are modules over different algebras");
  std::size_t ambient = m.dim * n.dim;
  SparseMatrix rel(0, ambient);
  for (std::size_t k = 0; k < m.over.dim; ++k)
    for (std::size_t i = 0; i < m.dim; ++i)
      for (std::size_t j = 0; j < n.dim; ++j) {
        SparseVec r;
        for (std::size_t p = 0; p < m.dim; ++p)
          if (m.action[k](p, i) != 0)
            r.emplace_back(static_cast<int>(p * n.dim + j), m.action[k](p, i));
        SparseVec r2;
        for (std::size_t q = 0; q < n.dim; ++q)
          if (n.action[k](q, j) != 0)
            r2.emplace_back(static_cast<int>(i * n.dim + q), n.action[k](q, j));
        r = sparse_add(r, r2, Rational(-1));
        if (!r.empty()) rel.append_row(std::move(r));
      }
  return quotient_by(ambient, rel);
}

Induced induce(const Bimodule& x, const AlgebraMap& iota) {
  require_extension(iota);
  const Algebra& b = iota.target;
  const Algebra& a = iota.source;
  std::size_t xd = x.dim, bd = b.dim;
  std::size_t ambient = bd * xd * bd;
  auto idx = [&](std::size_t i, std::size_t t, std::size_t j) {
    return (i * xd + t) * bd + j;
  };
  SparseMatrix rel(0, ambient);
  std::vector<Matrix> r_iota(a.dim), l_iota(a.dim);
  for (std::size_t k = 0; k < a.dim; ++k) {
    Vec img = iota.matrix.col(k);
    r_iota[k] = b.right_mult(img);  // e_i . iota(e_k)
    l_iota[k] = b.left_mult(img);   // iota(e_k) . e_j
  }
  for (std::size_t k = 0; k < a.dim; ++k)
    for (std::size_t i = 0; i < bd; ++i)
      for (std::size_t t = 0; t < xd; ++t)
        for (std::size_t j = 0; j < bd; ++j) {
          // (e_i.iota(e_k)) (x) x_t (x) e_j - e_i (x) e_k.x_t (x) e_j
          SparseVec r;
          for (std::size_t p = 0; p < bd; ++p)
            if (r_iota[k](p, i) != 0)
              r.emplace_back(static_cast<int>(idx(p, t, j)), r_iota[k](p, i));
          SparseVec r2;
          for (std::size_t q = 0; q < xd; ++q)
            if (x.left_action[k](q, t) != 0)
              r2.emplace_back(static_cast<int>(idx(i, q, j)), x.left_action[k](q, t));
          r = sparse_add(r, r2, Rational(-1));
          if (!r.empty()) rel.append_row(std::move(r));
          // e_i (x) x_t.e_k (x) e_j - e_i (x) x_t (x) iota(e_k).e_j
          SparseVec s;
          for (std::size_t q = 0; q < xd; ++q)
            if (x.right_action[k](q, t) != 0)
              s.emplace_back(static_cast<int>(idx(i, q, j)), x.right_action[k](q, t));
          SparseVec s2;
          for (std::size_t p = 0; p < bd; ++p)
            if (l_iota[k](p, j) != 0)
              s2.emplace_back(static_cast<int>(idx(i, t, p)), l_iota[k](p, j));
          s = sparse_add(s, s2, Rational(-1));
          if (!s.empty()) rel.append_row(std::move(s));
        }
  Quotient q = quotient_by(ambient, rel);
  Bimodule out{b, q.dim, {}, {}};
  for (std::size_t m = 0; m < bd; ++m) {
    SparseMatrix lm(ambient, ambient), rm(ambient, ambient);
    for (std::size_t i = 0; i < bd; ++i)
      for (std::size_t t = 0; t < xd; ++t)
        for (std::size_t j = 0; j < bd; ++j) {
          for (const auto& [p, c] : b.product(m, i)) lm.add(idx(p, t, j), idx(i, t, j), c);
          for (const auto& [p, c] : b.product(j, m)) rm.add(idx(i, t, p), idx(i, t, j), c);
        }
    out.left_action.push_back(descend(q, lm, q).to_dense());
    out.right_action.push_back(descend(q, rm, q).to_dense());
  }
  return {out, q};
}

Matrix restrict_action(const Matrix& act, const Subspace& s) {
  Matrix bt = s.basis.transpose();
  Matrix coords(s.dim(), s.dim());
  for (std::size_t l = 0; l < s.dim(); ++l) {
    Vec w = act.apply(s.basis.row(l));
    auto c = solve(bt, w);
    if (!c) throw ValidationError("restrict_action: subspace is not invariant");
    for (std::size_t i = 0; i < s.dim(); ++i) coords(i, l) = (*c)[i];
  }
  return coords;
}

Sigma sigma(const AlgebraMap& iota) {
  require_extension(iota);
  const Algebra& b = iota.target;
  const Algebra& a = iota.source;
  RightModule mr{a, b.dim, {}};
  LeftModule nl{a, b.dim, {}};
  for (std::size_t k = 0; k < a.dim; ++k) {
    Vec img = iota.matrix.col(k);
    mr.action.push_back(b.right_mult(img));
    nl.action.push_back(b.left_mult(img));
  }
  Quotient q = tensor_over(mr, nl);
  Matrix mult(b.dim, b.dim * b.dim);
  for (std::size_t i = 0; i < b.dim; ++i)
    for (std::size_t j = 0; j < b.dim; ++j)
      for (const auto& [p, c] : b.product(i, j)) mult(p, i * b.dim + j) = c;
  Matrix mult_q = (SparseMatrix::from_dense(mult) * q.section).to_dense();
  Subspace ker = kernel_basis(mult_q);
  Bimodule out{b, ker.dim(), {}, {}};
  for (std::size_t m = 0; m < b.dim; ++m) {
    SparseMatrix lm(b.dim * b.dim, b.dim * b.dim), rm(b.dim * b.dim, b.dim * b.dim);
    for (std::size_t i = 0; i < b.dim; ++i)
      for (std::size_t j = 0; j < b.dim; ++j) {
        for (const auto& [p, c] : b.product(m, i)) lm.add(p * b.dim + j, i * b.dim + j, c);
        for (const auto& [p, c] : b.product(j, m)) rm.add(i * b.dim + p, i * b.dim + j, c);
      }
    out.left_action.push_back(restrict_action(descend(q, lm, q).to_dense(), ker));
    out.right_action.push_back(restrict_action(descend(q, rm, q).to_dense(), ker));
  }
  Matrix incl(q.dim, ker.dim());
  for (std::size_t l = 0; l < ker.dim(); ++l)
    for (std::size_t i = 0; i < q.dim; ++i) incl(i, l) = ker.basis(l, i);
  return {out, q, incl};
}

Mho mho(const AlgebraMap& iota) {
  require_extension(iota);
  const Algebra& b = iota.target;
  const Algebra& a = iota.source;
  SparseMatrix rel(0, b.dim);
  for (std::size_t k = 0; k < a.dim; ++k) rel.append_row(sparse_of(iota.matrix.col(k)));
  Quotient q = quotient_by(b.dim, rel);
  Bimodule out{a, q.dim, {}, {}};
  for (std::size_t k = 0; k < a.dim; ++k) {
    Vec img = iota.matrix.col(k);
    out.left_action.push_back(
        descend(q, SparseMatrix::from_dense(b.left_mult(img)), q).to_dense());
    out.right_action.push_back(
        descend(q, SparseMatrix::from_dense(b.right_mult(img)), q).to_dense());
  }
  return {out, q};
}

LeftModule over_enveloping(const Bimodule& x) {
  LeftModule m{enveloping(x.over), x.dim, {}};
  m.action.reserve(x.over.dim * x.over.dim);
  for (std::size_t i = 0; i < x.over.dim; ++i)
    for (std::size_t j = 0; j < x.over.dim; ++j)
      m.action.push_back(x.left_action[i] * x.right_action[j]);
  return m;
}

Quotient commutator_quotient(const Bimodule& x) {
  SparseMatrix rel(0, x.dim);
  for (std::size_t k = 0; k < x.over.dim; ++k) {
    Matrix d = x.left_action[k] - x.right_action[k];
    for (std::size_t j = 0; j < x.dim; ++j) {
      SparseVec r = sparse_of(d.col(j));
      if (!r.empty()) rel.append_row(std::move(r));
    }
  }
  return quotient_by(x.dim, rel);
}

bool is_projective(const LeftModule& m) {
  if (m.dim == 0) return true;
  const Algebra& r = m.over;
  if (radical(r).dim() == 0) return true;  // semisimple base
  std::size_t d = r.dim, g = m.dim, f = d * g;
  // Free cover pi: R^g -> M, e_i in copy t |-> e_i . u_t.
  Matrix pi(g, f);
  for (std::size_t t = 0; t < g; ++t)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t p = 0; p < g; ++p) pi(p, t * d + i) = m.action[i](p, t);
  // Unknown section S (f x g) with pi S = I and L_k S = S A_k; vectorized
  // unknown index (p, c) -> p*g + c.
  std::size_t unknowns = f * g;
  std::vector<SparseVec> rows;
  Vec rhs;
  for (std::size_t rr = 0; rr < g; ++rr)
    for (std::size_t c = 0; c < g; ++c) {
      SparseVec row;
      for (std::size_t p = 0; p < f; ++p)
        if (pi(rr, p) != 0) row.emplace_back(static_cast<int>(p * g + c), pi(rr, p));
      rows.push_back(std::move(row));
      rhs.push_back(rr == c ? Rational(1) : Rational(0));
    }
  std::vector<Matrix> lk(d);
  for (std::size_t k = 0; k < d; ++k) lk[k] = r.left_mult(r.basis_vector(k));
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t t = 0; t < g; ++t)
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t c = 0; c < g; ++c) {
          std::size_t q = t * d + i;
          Vec row(unknowns, Rational(0));
          for (std::size_t ip = 0; ip < d; ++ip)
            if (lk[k](i, ip) != 0) row[(t * d + ip) * g + c] += lk[k](i, ip);
          for (std::size_t cp = 0; cp < g; ++cp)
            if (m.action[k](cp, c) != 0) row[q * g + cp] -= m.action[k](cp, c);
          SparseVec sr = sparse_of(row);
          if (!sr.empty()) {
            rows.push_back(std::move(sr));
            rhs.push_back(Rational(0));
          }
        }
  Matrix sys(rows.size(), unknowns);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& [j, v] : rows[i]) sys(i, j) = v;
  return solve(sys, rhs).has_value();
}

bool is_projective(const RightModule& m) {
  return is_projective(LeftModule{opposite(m.over), m.dim, m.action});
}

bool is_faithfully_flat(const AlgebraMap& iota) {
  const Algebra& a = iota.source;
  const Algebra& b = iota.target;
  LeftModule bl{a, b.dim, {}};
  RightModule br{a, b.dim, {}};
  for (std::size_t k = 0; k < a.dim; ++k) {
    Vec img = iota.matrix.col(k);
    bl.action.push_back(b.left_mult(img));
    br.action.push_back(b.right_mult(img));
  }
  if (!is_projective(bl) || !is_projective(br)) return false;
  Subspace j = radical(a);
  SparseMatrix rel(0, b.dim);
  for (std::size_t l = 0; l < j.dim(); ++l) {
    Matrix rj = b.right_mult(iota.apply(j.basis.row(l)));
    for (std::size_t i = 0; i < b.dim; ++i) {
      SparseVec r = sparse_of(rj.col(i));
      if (!r.empty()) rel.append_row(std::move(r));
    }
  }
  Quotient q = quotient_by(b.dim, rel);
  // ann_A(B/BJ) as the kernel of a |-> induced left action on the quotient.
  Matrix ann_sys(q.dim * q.dim, a.dim);
  for (std::size_t k = 0; k < a.dim; ++k) {
    Matrix act =
        descend(q, SparseMatrix::from_dense(b.left_mult(iota.matrix.col(k))), q).to_dense();
    for (std::size_t p = 0; p < q.dim; ++p)
      for (std::size_t s = 0; s < q.dim; ++s) ann_sys(p * q.dim + s, k) = act(p, s);
  }
  Subspace ann = kernel_basis(ann_sys);
  return subspace_equal(ann, j);
}

}  // namespace homalg
