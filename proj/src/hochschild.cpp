#include "homalg/hochschild.hpp"

#include <algorithm>
#include <functional>

namespace homalg {

namespace {

std::vector<std::vector<int>> basis_by_lcol(const Colored& b) {
  std::vector<std::vector<int>> out(b.colors());
  for (std::size_t j = 0; j < b.alg.dim; ++j) out[b.lcol[j]].push_back(static_cast<int>(j));
  return out;
}

void check_budget(std::size_t dim, std::size_t budget, std::size_t degree, const char* what) {
  if (dim > budget)
    throw BudgetError(std::string(what) + " at degree " + std::to_string(degree) + " has dimension " +
                      std::to_string(dim) + ", over the budget of " + std::to_string(budget));
}

}  // namespace

Colored trivial_colored(const Algebra& a) {
  Colored c;
  c.alg = a;
  c.idem = {a.unit};
  c.lcol.assign(a.dim, 0);
  c.rcol.assign(a.dim, 0);
  return c;
}

Colored colored(const Algebra& a, std::vector<Vec> idem) {
  if (idem.empty()) throw ValidationError("colored: empty idempotent system");
  Vec sum(a.dim, Rational(0));
  for (const auto& f : idem) {
    if (f.size() != a.dim) throw ValidationError("colored: idempotent of wrong dimension");
    for (std::size_t j = 0; j < a.dim; ++j) sum[j] += f[j];
  }
  if (sum != a.unit) throw ValidationError("colored: idempotents do not sum to the unit");
  for (std::size_t u = 0; u < idem.size(); ++u)
    for (std::size_t v = 0; v < idem.size(); ++v) {
      Vec p = a.multiply(idem[u], idem[v]);
      Vec expect = u == v ? idem[u] : Vec(a.dim, Rational(0));
      if (p != expect) throw ValidationError("colored: idempotents are not orthogonal");
    }
  Colored c;
  c.alg = a;
  c.idem = std::move(idem);
  c.lcol.assign(a.dim, -1);
  c.rcol.assign(a.dim, -1);
  for (std::size_t j = 0; j < a.dim; ++j) {
    Vec e = a.basis_vector(j);
    for (std::size_t u = 0; u < c.idem.size(); ++u)
      for (std::size_t v = 0; v < c.idem.size(); ++v) {
        Vec p = a.multiply(c.idem[u], a.multiply(e, c.idem[v]));
        bool zero = true;
        for (const auto& t : p)
          if (t != 0) {
            zero = false;
            break;
          }
        if (zero) continue;
        if (p != e || c.lcol[j] >= 0)
          throw ValidationError("colored: basis element " + std::to_string(j) +
                                " is not homogeneous");
        c.lcol[j] = static_cast<int>(u);
        c.rcol[j] = static_cast<int>(v);
      }
    if (c.lcol[j] < 0)
      throw ValidationError("colored: basis element " + std::to_string(j) + " vanishes");
  }
  return c;
}

Homogenized homogenize(const Bimodule& x, const Colored& b) {
  const std::size_t d = x.dim;
  const std::size_t nc = b.colors();
  std::vector<Matrix> pl(nc), pr(nc);
  for (std::size_t u = 0; u < nc; ++u) {
    pl[u] = x.left_of(b.idem[u]);
    pr[u] = x.right_of(b.idem[u]);
  }
  Eliminator elim(d);
  Matrix nb(d, d);
  std::vector<int> lc, rc;
  std::size_t got = 0;
  for (std::size_t u = 0; u < nc && got < d; ++u)
    for (std::size_t v = 0; v < nc && got < d; ++v)
      for (std::size_t j = 0; j < d && got < d; ++j) {
        Vec w = pl[u].apply(pr[v].col(j));
        SparseVec sw = sparse_of(w);
        if (sw.empty()) continue;
        if (!elim.add(sw)) continue;
        nb.set_row(got, w);
        lc.push_back(static_cast<int>(u));
        rc.push_back(static_cast<int>(v));
        ++got;
      }
  if (got != d) throw Error("homogenize: color components do not span");
  Matrix t = nb.transpose();         // new basis as columns
  Matrix tinv = inverse(t);
  Homogenized h;
  h.new_basis = nb;
  h.x.mod.over = x.over;
  h.x.mod.dim = d;
  for (std::size_t k = 0; k < x.over.dim; ++k) {
    h.x.mod.left_action.push_back(tinv * (x.left_action[k] * t));
    h.x.mod.right_action.push_back(tinv * (x.right_action[k] * t));
  }
  h.x.lcol = std::move(lc);
  h.x.rcol = std::move(rc);
  return h;
}

namespace {

StringSpace wrapped_strings(const Colored& b, const ColoredBimodule& x, std::size_t n) {
  StringSpace s;
  auto byl = basis_by_lcol(b);
  std::vector<int> cur(n + 1);
  std::function<void(std::size_t)> rec = [&](std::size_t depth) {
    if (depth == n + 1) {
      int last_rc = n == 0 ? x.rcol[cur[0]] : b.rcol[cur[n]];
      if (last_rc == x.lcol[cur[0]]) {
        s.index[cur] = static_cast<int>(s.basis.size());
        s.basis.push_back(cur);
      }
      return;
    }
    int want = depth == 1 ? x.rcol[cur[0]] : b.rcol[cur[depth - 1]];
    for (int cand : byl[want]) {
      cur[depth] = cand;
      rec(depth + 1);
    }
  };
  for (std::size_t j = 0; j < x.mod.dim; ++j) {
    cur[0] = static_cast<int>(j);
    rec(1);
  }
  return s;
}

}  // namespace

HochschildChains hochschild_chains(const Colored& b, const ColoredBimodule& x,
                                   std::size_t n_top, std::size_t budget) {
  HochschildChains ch;
  ch.base = b;
  ch.x = x;
  ch.spaces.resize(n_top + 1);
  ch.complex.top_degree = n_top;
  ch.complex.dims.resize(n_top + 1);
  ch.complex.d.resize(n_top + 1);
  for (std::size_t n = 0; n <= n_top; ++n) {
    ch.spaces[n] = wrapped_strings(b, x, n);
    check_budget(ch.spaces[n].dim(), budget, n, "Hochschild chain space");
    ch.complex.dims[n] = ch.spaces[n].dim();
  }
  ch.complex.d[0] = SparseMatrix(0, ch.complex.dims[0]);
  for (std::size_t n = 1; n <= n_top; ++n) {
    SparseMatrix d(ch.complex.dims[n - 1], ch.complex.dims[n]);
    const auto& src = ch.spaces[n];
    const auto& tgt = ch.spaces[n - 1];
    for (std::size_t col = 0; col < src.dim(); ++col) {
      const auto& s = src.basis[col];
      std::vector<int> t(s.begin(), s.end() - 1);
      // face 0: x . b_1
      {
        const Matrix& ra = x.mod.right_action[s[1]];
        std::vector<int> u = t;
        std::copy(s.begin() + 2, s.end(), u.begin() + 1);
        for (std::size_t xi = 0; xi < x.mod.dim; ++xi) {
          if (ra(xi, s[0]) == 0) continue;
          u[0] = static_cast<int>(xi);
          int row = tgt.find(u);
          if (row >= 0) d.add(row, col, ra(xi, s[0]));
        }
      }
      // inner faces: join b_i b_{i+1}
      Rational sign(-1);
      for (std::size_t i = 1; i < n; ++i) {
        std::vector<int> u;
        u.reserve(n);
        u.insert(u.end(), s.begin(), s.begin() + 1 + i);
        u.insert(u.end(), s.begin() + i + 2, s.end());
        for (const auto& [m, c] : b.alg.product(s[i], s[i + 1])) {
          u[i] = m;
          int row = tgt.find(u);
          if (row >= 0) d.add(row, col, sign * c);
        }
        sign = -sign;
      }
      // wrap face: b_n . x, sign (-1)^n
      {
        Rational wsign = n % 2 == 0 ? Rational(1) : Rational(-1);
        const Matrix& la = x.mod.left_action[s[n]];
        std::vector<int> u(s.begin(), s.end() - 1);
        for (std::size_t xi = 0; xi < x.mod.dim; ++xi) {
          if (la(xi, s[0]) == 0) continue;
          u[0] = static_cast<int>(xi);
          int row = tgt.find(u);
          if (row >= 0) d.add(row, col, wsign * la(xi, s[0]));
        }
      }
    }
    ch.complex.d[n] = std::move(d);
  }
  return ch;
}

RelativeChains relativize(const HochschildChains& ch, const AlgebraMap& iota) {
  const Colored& b = ch.base;
  const ColoredBimodule& x = ch.x;
  const std::size_t n_top = ch.complex.top_degree;
  RelativeChains rel;
  rel.q.resize(n_top + 1);
  rel.complex.top_degree = n_top;
  rel.complex.dims.resize(n_top + 1);
  rel.complex.d.resize(n_top + 1);
  std::vector<Matrix> xr(iota.source.dim), xl(iota.source.dim), br(iota.source.dim),
      bl(iota.source.dim);
  for (std::size_t k = 0; k < iota.source.dim; ++k) {
    Vec c = iota.matrix.col(k);
    xr[k] = x.mod.right_of(c);
    xl[k] = x.mod.left_of(c);
    br[k] = b.alg.right_mult(c);  // e_j . c
    bl[k] = b.alg.left_mult(c);   // c . e_j
  }
  // A balancing move across a gap relates strings that chain everywhere else
  // but may fail to chain at that gap, so the generating strings are
  // enumerated per gap with that one chaining constraint dropped; the string
  // space projection then kills whichever terms stay unchained.
  auto byl = basis_by_lcol(b);
  for (std::size_t n = 0; n <= n_top; ++n) {
    const auto& sp = ch.spaces[n];
    SparseMatrix relations(0, sp.dim());
    std::vector<int> s(n + 1);
    auto emit = [&](std::size_t g) {
      for (std::size_t k = 0; k < iota.source.dim; ++k) {
        SparseVec r;
        std::vector<int> u = s;
        if (g == 0 && n > 0) {
          // x.c (x) b_1 ... - x (x) c.b_1 ...
          for (std::size_t xi = 0; xi < x.mod.dim; ++xi) {
            if (xr[k](xi, s[0]) == 0) continue;
            u[0] = static_cast<int>(xi);
            int row = sp.find(u);
            if (row >= 0) r = sparse_add(r, {{row, xr[k](xi, s[0])}}, Rational(1));
          }
          u = s;
          for (std::size_t m = 0; m < b.alg.dim; ++m) {
            if (bl[k](m, s[1]) == 0) continue;
            u[1] = static_cast<int>(m);
            int row = sp.find(u);
            if (row >= 0) r = sparse_add(r, {{row, bl[k](m, s[1])}}, Rational(-1));
          }
        } else if (g == n) {
          // wrap: x (x) ... b_n.c  -  c.x (x) ... b_n   (n = 0: x.c - c.x)
          if (n == 0) {
            for (std::size_t xi = 0; xi < x.mod.dim; ++xi) {
              if (xr[k](xi, s[0]) == 0) continue;
              u[0] = static_cast<int>(xi);
              int row = sp.find(u);
              if (row >= 0) r = sparse_add(r, {{row, xr[k](xi, s[0])}}, Rational(1));
            }
          } else {
            for (std::size_t m = 0; m < b.alg.dim; ++m) {
              if (br[k](m, s[n]) == 0) continue;
              u[n] = static_cast<int>(m);
              int row = sp.find(u);
              if (row >= 0) r = sparse_add(r, {{row, br[k](m, s[n])}}, Rational(1));
            }
          }
          u = s;
          for (std::size_t xi = 0; xi < x.mod.dim; ++xi) {
            if (xl[k](xi, s[0]) == 0) continue;
            u[0] = static_cast<int>(xi);
            int row = sp.find(u);
            if (row >= 0) r = sparse_add(r, {{row, xl[k](xi, s[0])}}, Rational(-1));
          }
        } else {
          // b_g.c (x) b_{g+1} - b_g (x) c.b_{g+1}
          for (std::size_t m = 0; m < b.alg.dim; ++m) {
            if (br[k](m, s[g]) == 0) continue;
            u[g] = static_cast<int>(m);
            int row = sp.find(u);
            if (row >= 0) r = sparse_add(r, {{row, br[k](m, s[g])}}, Rational(1));
          }
          u = s;
          for (std::size_t m = 0; m < b.alg.dim; ++m) {
            if (bl[k](m, s[g + 1]) == 0) continue;
            u[g + 1] = static_cast<int>(m);
            int row = sp.find(u);
            if (row >= 0) r = sparse_add(r, {{row, bl[k](m, s[g + 1])}}, Rational(-1));
          }
        }
        if (!r.empty()) relations.append_row(std::move(r));
      }
    };
    for (std::size_t g = 0; g <= n; ++g) {
      std::function<void(std::size_t)> rec = [&](std::size_t depth) {
        if (depth == n + 1) {
          if (g != n) {
            int last_rc = n == 0 ? x.rcol[s[0]] : b.rcol[s[n]];
            if (last_rc != x.lcol[s[0]]) return;
          }
          emit(g);
          return;
        }
        if (g < n && depth == g + 1) {
          for (std::size_t cand = 0; cand < b.alg.dim; ++cand) {
            s[depth] = static_cast<int>(cand);
            rec(depth + 1);
          }
        } else {
          int want = depth == 1 ? x.rcol[s[0]] : b.rcol[s[depth - 1]];
          for (int cand : byl[want]) {
            s[depth] = cand;
            rec(depth + 1);
          }
        }
      };
      for (std::size_t j = 0; j < x.mod.dim; ++j) {
        s[0] = static_cast<int>(j);
        rec(1);
      }
    }
    rel.q[n] = quotient_by(sp.dim(), relations);
    rel.complex.dims[n] = rel.q[n].dim;
  }
  rel.complex.d[0] = SparseMatrix(0, rel.complex.dims[0]);
  for (std::size_t n = 1; n <= n_top; ++n)
    rel.complex.d[n] = descend(rel.q[n - 1], ch.complex.d[n], rel.q[n]);
  return rel;
}

RelativeChains hochschild_chain(const Colored& b, const AlgebraMap& iota, const Bimodule& x,
                                std::size_t n_top, std::size_t budget) {
  auto h = homogenize(x, b);
  auto ch = hochschild_chains(b, h.x, n_top, budget);
  return relativize(ch, iota);
}

HomologyTable hh(const Colored& b, const Bimodule& x, std::size_t n_top, std::size_t budget) {
  auto h = homogenize(x, b);
  auto ch = hochschild_chains(b, h.x, n_top, budget);
  return homology_dims(ch.complex);
}

HomologyTable hh(const Algebra& b, const Bimodule& x, std::size_t n_top, std::size_t budget) {
  return hh(trivial_colored(b), x, n_top, budget);
}

namespace {

void require_chain_map(const ChainComplex& src, const ChainComplex& tgt, const ChainMap& f,
                       const char* what) {
  auto bad = check_chain_map(src, tgt, f);
  if (!bad.empty()) throw Error(std::string(what) + ": " + bad.front());
}

}  // namespace

ChainMap induced_inclusion_map(const AlgebraMap& iota, const HochschildChains& a_side,
                               const HochschildChains& b_side) {
  const std::size_t n_top = a_side.complex.top_degree;
  if (b_side.complex.top_degree != n_top)
    throw Error("induced_inclusion_map: mismatched truncation degrees");
  ChainMap f;
  f.maps.resize(n_top + 1);
  for (std::size_t n = 0; n <= n_top; ++n) {
    const auto& src = a_side.spaces[n];
    const auto& tgt = b_side.spaces[n];
    SparseMatrix m(tgt.dim(), src.dim());
    std::vector<int> u(n + 1);
    for (std::size_t col = 0; col < src.dim(); ++col) {
      const auto& s = src.basis[col];
      u[0] = s[0];
      std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t depth,
                                                                  const Rational& coeff) {
        if (depth == n + 1) {
          int row = tgt.find(u);
          if (row >= 0) m.add(row, col, coeff);
          return;
        }
        for (std::size_t j = 0; j < iota.target.dim; ++j) {
          const Rational& c = iota.matrix(j, s[depth]);
          if (c == 0) continue;
          u[depth] = static_cast<int>(j);
          rec(depth + 1, coeff * c);
        }
      };
      rec(1, Rational(1));
    }
    f.maps[n] = std::move(m);
  }
  require_chain_map(a_side.complex, b_side.complex, f, "induced_inclusion_map");
  return f;
}

ChainMap induced_quotient_map(const RelativeChains& rel) {
  ChainMap f;
  for (const auto& q : rel.q) f.maps.push_back(q.projection);
  return f;
}

namespace {

// Chained strings [b_1, ..., b_n] with free ends, n >= 1.
StringSpace open_strings(const Colored& b, std::size_t n) {
  StringSpace s;
  auto byl = basis_by_lcol(b);
  std::vector<int> cur(n);
  std::function<void(std::size_t)> rec = [&](std::size_t depth) {
    if (depth == n) {
      s.index[cur] = static_cast<int>(s.basis.size());
      s.basis.push_back(cur);
      return;
    }
    for (int cand : byl[b.rcol[cur[depth - 1]]]) {
      cur[depth] = cand;
      rec(depth + 1);
    }
  };
  for (std::size_t j = 0; j < b.alg.dim; ++j) {
    cur[0] = static_cast<int>(j);
    if (n == 1) {
      s.index[cur] = static_cast<int>(s.basis.size());
      s.basis.push_back(cur);
    } else {
      rec(1);
    }
  }
  return s;
}

// The span of the idempotents must embed into A for the A-relations below to
// refine the string model's S-relations.
void require_base_in(const AlgebraMap& iota, const Colored& b) {
  for (const auto& f : b.idem)
    if (!solve(iota.matrix, f))
      throw ValidationError("the subalgebra does not contain the base idempotents");
}

// Quotient of an open string space by the A-balancing moves at the inner gaps.
Quotient gap_quotient(const Colored& b, const AlgebraMap& iota, const StringSpace& sp,
                      std::size_t n) {
  SparseMatrix relations(0, sp.dim());
  std::vector<Matrix> br(iota.source.dim), bl(iota.source.dim);
  for (std::size_t k = 0; k < iota.source.dim; ++k) {
    Vec c = iota.matrix.col(k);
    br[k] = b.alg.right_mult(c);
    bl[k] = b.alg.left_mult(c);
  }
  // Moves across a gap are generated from strings that chain everywhere
  // except possibly at that gap; terms that stay unchained project to zero.
  auto byl = basis_by_lcol(b);
  std::vector<int> s(n);
  for (std::size_t g = 1; g < n; ++g) {
    std::function<void(std::size_t)> rec = [&](std::size_t depth) {
      if (depth == n) {
        for (std::size_t k = 0; k < iota.source.dim; ++k) {
          SparseVec r;
          std::vector<int> u = s;
          for (std::size_t m = 0; m < b.alg.dim; ++m) {
            if (br[k](m, s[g - 1]) == 0) continue;
            u[g - 1] = static_cast<int>(m);
            int row = sp.find(u);
            if (row >= 0) r = sparse_add(r, {{row, br[k](m, s[g - 1])}}, Rational(1));
          }
          u = s;
          for (std::size_t m = 0; m < b.alg.dim; ++m) {
            if (bl[k](m, s[g]) == 0) continue;
            u[g] = static_cast<int>(m);
            int row = sp.find(u);
            if (row >= 0) r = sparse_add(r, {{row, bl[k](m, s[g])}}, Rational(-1));
          }
          if (!r.empty()) relations.append_row(std::move(r));
        }
        return;
      }
      if (depth == g) {
        for (std::size_t cand = 0; cand < b.alg.dim; ++cand) {
          s[depth] = static_cast<int>(cand);
          rec(depth + 1);
        }
      } else {
        for (int cand : byl[b.rcol[s[depth - 1]]]) {
          s[depth] = cand;
          rec(depth + 1);
        }
      }
    };
    for (std::size_t j = 0; j < b.alg.dim; ++j) {
      s[0] = static_cast<int>(j);
      rec(1);
    }
  }
  return quotient_by(sp.dim(), relations);
}

// Accumulates sign times the face joining slots i and i+1 of length-n strings.
void join_face(SparseMatrix& m, const Colored& b, const StringSpace& src,
               const StringSpace& tgt, std::size_t n, std::size_t i, const Rational& sign) {
  for (std::size_t col = 0; col < src.dim(); ++col) {
    const auto& s = src.basis[col];
    std::vector<int> u;
    u.reserve(n - 1);
    u.insert(u.end(), s.begin(), s.begin() + i + 1);
    u.insert(u.end(), s.begin() + i + 2, s.end());
    for (const auto& [w, c] : b.alg.product(s[i], s[i + 1])) {
      u[i] = w;
      int row = tgt.find(u);
      if (row >= 0) m.add(row, col, sign * c);
    }
  }
}

}  // namespace

ChainComplex relative_bar(const Colored& b, const AlgebraMap& iota, std::size_t n_top,
                          std::size_t budget) {
  require_extension(iota);
  require_base_in(iota, b);
  ChainComplex c;
  c.top_degree = n_top;
  c.dims.resize(n_top + 1);
  c.d.resize(n_top + 1);
  std::vector<StringSpace> sp(n_top + 1);
  std::vector<Quotient> q(n_top + 1);
  for (std::size_t n = 0; n <= n_top; ++n) {
    sp[n] = open_strings(b, n + 2);
    check_budget(sp[n].dim(), budget, n, "relative bar ambient space");
    q[n] = gap_quotient(b, iota, sp[n], n + 2);
    c.dims[n] = q[n].dim;
  }
  c.d[0] = SparseMatrix(0, c.dims[0]);
  for (std::size_t n = 1; n <= n_top; ++n) {
    SparseMatrix d(sp[n - 1].dim(), sp[n].dim());
    Rational sign(1);
    for (std::size_t i = 0; i <= n; ++i) {
      join_face(d, b, sp[n], sp[n - 1], n + 2, i, sign);
      sign = -sign;
    }
    c.d[n] = descend(q[n - 1], d, q[n]);
  }
  return c;
}

AmitsurReport amitsur(const AlgebraMap& iota, const Colored& b, std::size_t n_top,
                      std::size_t budget) {
  require_extension(iota);
  require_base_in(iota, b);
  std::vector<StringSpace> sp(n_top + 1);
  std::vector<Quotient> q(n_top + 1);
  AmitsurReport rep;
  rep.dims.resize(n_top + 1);
  rep.dims[0] = iota.source.dim;
  for (std::size_t n = 1; n <= n_top; ++n) {
    sp[n] = open_strings(b, n);
    check_budget(sp[n].dim(), budget, n, "Amitsur ambient space");
    q[n] = gap_quotient(b, iota, sp[n], n);
    rep.dims[n] = q[n].dim;
  }
  std::vector<SparseVec> unit_part(b.colors());
  for (std::size_t u = 0; u < b.colors(); ++u) unit_part[u] = sparse_of(b.idem[u]);

  std::vector<SparseMatrix> up(n_top);
  {
    SparseMatrix m(sp[1].dim(), iota.source.dim);
    for (std::size_t k = 0; k < iota.source.dim; ++k)
      for (std::size_t j = 0; j < b.alg.dim; ++j) {
        if (iota.matrix(j, k) == 0) continue;
        int row = sp[1].find({static_cast<int>(j)});
        if (row >= 0) m.add(row, k, iota.matrix(j, k));
      }
    Quotient q0 = quotient_by(iota.source.dim, SparseMatrix(0, iota.source.dim));
    up[0] = descend(q[1], m, q0);
  }
  for (std::size_t n = 1; n < n_top; ++n) {
    SparseMatrix m(sp[n + 1].dim(), sp[n].dim());
    for (std::size_t col = 0; col < sp[n].dim(); ++col) {
      const auto& s = sp[n].basis[col];
      Rational sign(1);
      for (std::size_t i = 0; i <= n; ++i) {
        int u = i == 0 ? b.lcol[s[0]] : b.rcol[s[i - 1]];
        std::vector<int> t;
        t.reserve(n + 1);
        t.insert(t.end(), s.begin(), s.begin() + i);
        t.push_back(0);
        t.insert(t.end(), s.begin() + i, s.end());
        for (const auto& [j, cu] : unit_part[u]) {
          t[i] = j;
          int row = sp[n + 1].find(t);
          if (row >= 0) m.add(row, col, sign * cu);
        }
        sign = -sign;
      }
    }
    up[n] = descend(q[n + 1], m, q[n]);
  }
  rep.h.resize(n_top);
  std::vector<std::size_t> rk(n_top);
  for (std::size_t n = 0; n < n_top; ++n) rk[n] = sparse_rank(up[n]);
  for (std::size_t n = 0; n < n_top; ++n) {
    std::size_t ker = rep.dims[n] - rk[n];
    rep.h[n] = n == 0 ? ker : ker - rk[n - 1];
    if (rep.h[n] > 0 && !rep.first_inexact) rep.first_inexact = n;
  }
  rep.exact = !rep.first_inexact;
  return rep;
}

ChainComplex hochschild_cochain(const Colored& b, const AlgebraMap& iota, const Bimodule& x,
                                std::size_t n_top, std::size_t budget) {
  require_extension(iota);
  require_base_in(iota, b);
  const std::size_t xd = x.dim;
  std::vector<Matrix> xl(iota.source.dim), xr(iota.source.dim);
  for (std::size_t k = 0; k < iota.source.dim; ++k) {
    Vec c = iota.matrix.col(k);
    xl[k] = x.left_of(c);
    xr[k] = x.right_of(c);
  }
  std::vector<StringSpace> sp(n_top + 1);
  std::vector<Quotient> q(n_top + 1);
  for (std::size_t n = 1; n <= n_top; ++n) {
    sp[n] = open_strings(b, n);
    check_budget(sp[n].dim() * xd, budget, n, "Hochschild cochain ambient space");
    q[n] = gap_quotient(b, iota, sp[n], n);
  }
  // bases of Hom_{A^e}(T_n, X) inside Hom_k(T_n, X), flattened as t * xd + e
  std::vector<SparseMatrix> hom(n_top + 1);
  {
    Matrix c0(iota.source.dim * xd, xd);
    for (std::size_t k = 0; k < iota.source.dim; ++k)
      for (std::size_t e = 0; e < xd; ++e)
        for (std::size_t e2 = 0; e2 < xd; ++e2)
          c0(k * xd + e, e2) = xl[k](e, e2) - xr[k](e, e2);
    auto ker = kernel_basis(c0);
    hom[0] = SparseMatrix::from_dense(ker.basis);
  }
  for (std::size_t n = 1; n <= n_top; ++n) {
    SparseMatrix cons(0, q[n].dim * xd);
    for (std::size_t k = 0; k < iota.source.dim; ++k) {
      Vec c = iota.matrix.col(k);
      Matrix bl = b.alg.left_mult(c), br = b.alg.right_mult(c);
      SparseMatrix la(sp[n].dim(), sp[n].dim()), ra(sp[n].dim(), sp[n].dim());
      for (std::size_t col = 0; col < sp[n].dim(); ++col) {
        const auto& s = sp[n].basis[col];
        std::vector<int> u = s;
        for (std::size_t m = 0; m < b.alg.dim; ++m) {
          if (bl(m, s[0]) != 0) {
            u[0] = static_cast<int>(m);
            int row = sp[n].find(u);
            if (row >= 0) la.add(row, col, bl(m, s[0]));
          }
        }
        u = s;
        for (std::size_t m = 0; m < b.alg.dim; ++m) {
          if (br(m, s[n - 1]) != 0) {
            u[n - 1] = static_cast<int>(m);
            int row = sp[n].find(u);
            if (row >= 0) ra.add(row, col, br(m, s[n - 1]));
          }
        }
      }
      SparseMatrix lqt = descend(q[n], la, q[n]).transpose();
      SparseMatrix rqt = descend(q[n], ra, q[n]).transpose();
      for (std::size_t t = 0; t < q[n].dim; ++t)
        for (std::size_t e = 0; e < xd; ++e) {
          SparseVec left_row, right_row;
          for (const auto& [t2, cl] : lqt.row(t))
            left_row = sparse_add(left_row, {{t2 * static_cast<int>(xd) + static_cast<int>(e),
                                              cl}}, Rational(1));
          for (const auto& [t2, cr] : rqt.row(t))
            right_row = sparse_add(right_row, {{t2 * static_cast<int>(xd) + static_cast<int>(e),
                                                cr}}, Rational(1));
          for (std::size_t e2 = 0; e2 < xd; ++e2) {
            if (xl[k](e, e2) != 0)
              left_row = sparse_add(left_row, {{static_cast<int>(t * xd + e2), xl[k](e, e2)}},
                                    Rational(-1));
            if (xr[k](e, e2) != 0)
              right_row = sparse_add(right_row,
                                     {{static_cast<int>(t * xd + e2), xr[k](e, e2)}},
                                     Rational(-1));
          }
          if (!left_row.empty()) cons.append_row(std::move(left_row));
          if (!right_row.empty()) cons.append_row(std::move(right_row));
        }
    }
    hom[n] = sparse_kernel_basis(cons);
  }
  // coboundary on the ambient coordinates, then restricted to the kernels
  ChainComplex c;
  c.top_degree = n_top;
  c.dims.resize(n_top + 1);
  c.d.resize(n_top + 1);
  for (std::size_t n = 0; n <= n_top; ++n) c.dims[n] = hom[n].rows();
  c.d[0] = SparseMatrix(0, c.dims[0]);
  for (std::size_t n = 0; n < n_top; ++n) {
    std::size_t src_amb = n == 0 ? xd : q[n].dim * xd;
    SparseMatrix delta(q[n + 1].dim * xd, src_amb);
    SparseMatrix sect_t = q[n + 1].section.transpose();
    SparseMatrix proj_t = n == 0 ? SparseMatrix(0, 0) : q[n].projection.transpose();
    for (std::size_t tp = 0; tp < q[n + 1].dim; ++tp) {
      // walk the section column of t'
      for (const auto& [amb, cs] : sect_t.row(tp)) {
        const auto& s = sp[n + 1].basis[amb];
        // first coface: b_1 . phi(s[1..n])
        {
          SparseVec pcoords;
          if (n == 0) {
            pcoords = {{0, Rational(1)}};
          } else {
            std::vector<int> rest(s.begin() + 1, s.end());
            int r = sp[n].find(rest);
            if (r >= 0) pcoords = proj_t.row(r);
          }
          const Matrix& act = x.left_action[s[0]];
          for (const auto& [t, pc] : pcoords)
            for (std::size_t e = 0; e < xd; ++e)
              for (std::size_t e2 = 0; e2 < xd; ++e2)
                if (act(e, e2) != 0)
                  delta.add(tp * xd + e, (n == 0 ? e2 : t * xd + e2), cs * pc * act(e, e2));
        }
        // inner cofaces: phi(... b_i b_{i+1} ...)
        Rational sign(-1);
        for (std::size_t i = 0; i + 1 <= n; ++i) {
          std::vector<int> u;
          u.reserve(n);
          u.insert(u.end(), s.begin(), s.begin() + i + 1);
          u.insert(u.end(), s.begin() + i + 2, s.end());
          for (const auto& [w, pc] : b.alg.product(s[i], s[i + 1])) {
            u[i] = w;
            SparseVec pcoords;
            if (n == 0) {
              pcoords = {{0, Rational(1)}};
            } else {
              int r = sp[n].find(u);
              if (r >= 0) pcoords = proj_t.row(r);
            }
            for (const auto& [t, qc] : pcoords)
              for (std::size_t e = 0; e < xd; ++e)
                delta.add(tp * xd + e, (n == 0 ? e : t * xd + e), sign * cs * pc * qc);
          }
          sign = -sign;
        }
        // last coface: phi(s[0..n-1]) . b_{n+1}, sign (-1)^{n+1}
        {
          Rational wsign = n % 2 == 0 ? Rational(-1) : Rational(1);
          SparseVec pcoords;
          if (n == 0) {
            pcoords = {{0, Rational(1)}};
          } else {
            std::vector<int> rest(s.begin(), s.end() - 1);
            int r = sp[n].find(rest);
            if (r >= 0) pcoords = proj_t.row(r);
          }
          const Matrix& act = x.right_action[s[n]];
          for (const auto& [t, pc] : pcoords)
            for (std::size_t e = 0; e < xd; ++e)
              for (std::size_t e2 = 0; e2 < xd; ++e2)
                if (act(e, e2) != 0)
                  delta.add(tp * xd + e, (n == 0 ? e2 : t * xd + e2),
                            wsign * cs * pc * act(e, e2));
        }
      }
    }
    // express delta on the kernel bases; the result of delta on a cochain
    // satisfying the bimodule constraints satisfies them again
    Eliminator tgt_basis(q[n + 1].dim * xd, true);
    for (std::size_t r = 0; r < hom[n + 1].rows(); ++r) {
      SparseVec row = hom[n + 1].row(r);
      tgt_basis.add(row);
    }
    SparseMatrix restricted(c.dims[n + 1], c.dims[n]);
    for (std::size_t src = 0; src < c.dims[n]; ++src) {
      SparseVec w = delta.apply(hom[n].row(src));
      auto coords = tgt_basis.express(w);
      if (!coords)
        throw Error("hochschild_cochain: coboundary leaves the constrained subspace");
      for (const auto& [t, v] : *coords) restricted.add(t, src, v);
    }
    c.d[n + 1] = restricted.transpose();
  }
  return c;
}

JzReport jz_verify(const AlgebraMap& iota, const Colored& ca, const Colored& cb,
                   const Bimodule& x, std::size_t n_top, std::size_t budget) {
  require_extension(iota);
  if (ca.colors() != cb.colors())
    throw ValidationError("jz_verify: color systems of different sizes");
  for (std::size_t u = 0; u < ca.colors(); ++u)
    if (iota.apply(ca.idem[u]) != cb.idem[u])
      throw ValidationError("jz_verify: the embedding does not match the idempotents");

  auto hom = homogenize(x, cb);
  auto b_side = hochschild_chains(cb, hom.x, n_top, budget);
  ColoredBimodule res{restrict(hom.x.mod, iota), hom.x.lcol, hom.x.rcol};
  auto a_side = hochschild_chains(ca, res, n_top, budget);
  auto rel = relativize(b_side, iota);

  auto alpha = induced_inclusion_map(iota, a_side, b_side);
  auto beta = induced_quotient_map(rel);
  require_chain_map(b_side.complex, rel.complex, beta, "jz_verify quotient map");

  JzReport rep;
  rep.a = homology_dims(a_side.complex);
  rep.b = homology_dims(b_side.complex);
  rep.rel = homology_dims(rel.complex);

  std::vector<Matrix> alpha_h(n_top);
  std::vector<HomologyBasis> hb_b(n_top);
  for (std::size_t n = 0; n < n_top; ++n) {
    auto hb_a = homology_basis(a_side.complex, n);
    hb_b[n] = homology_basis(b_side.complex, n);
    alpha_h[n] = induced_on_homology(alpha.maps[n], hb_a, hb_b[n]);
  }
  if (n_top >= 1) rep.exact_mid.resize(n_top - 1);
  for (std::size_t n = 1; n < n_top; ++n) {
    auto hb_rel = homology_basis(rel.complex, n);
    Matrix beta_h = induced_on_homology(beta.maps[n], hb_b[n], hb_rel);
    bool ok = subspace_equal(image_basis(alpha_h[n]), kernel_basis(beta_h));
    rep.exact_mid[n - 1] = ok;
    if (!ok && !rep.first_violation) rep.first_violation = n;
  }
  if (n_top >= 2) rep.bookkeeping.resize(n_top - 2);
  for (std::size_t n = 2; n < n_top; ++n) {
    std::size_t coker = rep.b.dims[n] - rref(alpha_h[n]).rank;
    std::size_t ker_prev = kernel_basis(alpha_h[n - 1]).dim();
    bool ok = rep.rel.dims[n] == coker + ker_prev;
    rep.bookkeeping[n - 2] = ok;
    if (!ok && (!rep.first_violation || *rep.first_violation > n)) rep.first_violation = n;
  }
  rep.pass = !rep.first_violation;
  return rep;
}

namespace {

// Strings [p, x, a_1..a_p, m, c_1..c_q] with colors chained cyclically around
// x -> a_1 -> ... -> m -> c_1 -> ... -> x; the leading entry tags the split.
StringSpace cylinder_strings(const Colored& a, const ColoredBimodule& hm,
                             const ColoredBimodule& hx, std::size_t n) {
  StringSpace s;
  auto byl = basis_by_lcol(a);
  for (std::size_t p = 0; p <= n; ++p) {
    const std::size_t q = n - p;
    std::vector<int> cur(n + 3);
    cur[0] = static_cast<int>(p);
    std::function<void(std::size_t)> rec = [&](std::size_t depth) {
      if (depth == n + 3) {
        int last_rc = q == 0 ? hm.rcol[cur[p + 2]] : a.rcol[cur[n + 2]];
        if (last_rc == hx.lcol[cur[1]]) {
          s.index[cur] = static_cast<int>(s.basis.size());
          s.basis.push_back(cur);
        }
        return;
      }
      if (depth == p + 2) {
        int want = p == 0 ? hx.rcol[cur[1]] : a.rcol[cur[depth - 1]];
        for (std::size_t k = 0; k < hm.mod.dim; ++k) {
          if (hm.lcol[k] != want) continue;
          cur[depth] = static_cast<int>(k);
          rec(depth + 1);
        }
        return;
      }
      int want = depth == 2 ? hx.rcol[cur[1]]
                            : (depth == p + 3 ? hm.rcol[cur[p + 2]] : a.rcol[cur[depth - 1]]);
      for (int cand : byl[want]) {
        cur[depth] = cand;
        rec(depth + 1);
      }
    };
    for (std::size_t j = 0; j < hx.mod.dim; ++j) {
      cur[1] = static_cast<int>(j);
      rec(2);
    }
  }
  return s;
}

}  // namespace

HomologyTable tor_env(const Colored& a, const Bimodule& m, const Bimodule& x,
                      std::size_t n_top, std::size_t budget) {
  auto hm = homogenize(m, a).x;
  auto hx = homogenize(x, a).x;
  ChainComplex c;
  c.top_degree = n_top;
  c.dims.resize(n_top + 1);
  c.d.resize(n_top + 1);
  std::vector<StringSpace> sp(n_top + 1);
  for (std::size_t n = 0; n <= n_top; ++n) {
    sp[n] = cylinder_strings(a, hm, hx, n);
    check_budget(sp[n].dim(), budget, n, "two-sided bar space");
    c.dims[n] = sp[n].dim();
  }
  c.d[0] = SparseMatrix(0, c.dims[0]);
  for (std::size_t n = 1; n <= n_top; ++n) {
    SparseMatrix d(c.dims[n - 1], c.dims[n]);
    const auto& src = sp[n];
    const auto& tgt = sp[n - 1];
    for (std::size_t col = 0; col < src.dim(); ++col) {
      const auto& s = src.basis[col];
      const std::size_t p = static_cast<std::size_t>(s[0]);
      const std::size_t q = n - p;
      if (p >= 1) {
        // left bar faces, target split p-1
        Rational sign(1);
        for (std::size_t i = 0; i <= p; ++i) {
          if (i == 0) {
            std::vector<int> u;
            u.reserve(n + 2);
            u.push_back(static_cast<int>(p - 1));
            u.push_back(0);
            u.insert(u.end(), s.begin() + 3, s.end());
            const Matrix& ra = hx.mod.right_action[s[2]];
            for (std::size_t xi = 0; xi < hx.mod.dim; ++xi) {
              if (ra(xi, s[1]) == 0) continue;
              u[1] = static_cast<int>(xi);
              int row = tgt.find(u);
              if (row >= 0) d.add(row, col, sign * ra(xi, s[1]));
            }
          } else if (i < p) {
            std::vector<int> u;
            u.reserve(n + 2);
            u.push_back(static_cast<int>(p - 1));
            u.insert(u.end(), s.begin() + 1, s.begin() + 2 + i);
            u.insert(u.end(), s.begin() + 3 + i, s.end());
            for (const auto& [w, cv] : a.alg.product(s[1 + i], s[2 + i])) {
              u[1 + i] = w;
              int row = tgt.find(u);
              if (row >= 0) d.add(row, col, sign * cv);
            }
          } else {
            // a_p into m
            std::vector<int> u;
            u.reserve(n + 2);
            u.push_back(static_cast<int>(p - 1));
            u.insert(u.end(), s.begin() + 1, s.begin() + 1 + p);
            u.push_back(0);
            u.insert(u.end(), s.begin() + p + 3, s.end());
            const Matrix& la = hm.mod.left_action[s[p + 1]];
            for (std::size_t mi = 0; mi < hm.mod.dim; ++mi) {
              if (la(mi, s[p + 2]) == 0) continue;
              u[p + 1] = static_cast<int>(mi);
              int row = tgt.find(u);
              if (row >= 0) d.add(row, col, sign * la(mi, s[p + 2]));
            }
          }
          sign = -sign;
        }
      }
      if (q >= 1) {
        // right bar faces, target split p, overall sign (-1)^p
        Rational sign = p % 2 == 0 ? Rational(1) : Rational(-1);
        for (std::size_t j = 0; j <= q; ++j) {
          if (j == 0) {
            std::vector<int> u;
            u.reserve(n + 2);
            u.insert(u.end(), s.begin(), s.begin() + p + 2);
            u.push_back(0);
            u.insert(u.end(), s.begin() + p + 4, s.end());
            const Matrix& ra = hm.mod.right_action[s[p + 3]];
            for (std::size_t mi = 0; mi < hm.mod.dim; ++mi) {
              if (ra(mi, s[p + 2]) == 0) continue;
              u[p + 2] = static_cast<int>(mi);
              int row = tgt.find(u);
              if (row >= 0) d.add(row, col, sign * ra(mi, s[p + 2]));
            }
          } else if (j < q) {
            std::vector<int> u;
            u.reserve(n + 2);
            u.insert(u.end(), s.begin(), s.begin() + p + 3 + j);
            u.insert(u.end(), s.begin() + p + 4 + j, s.end());
            for (const auto& [w, cv] : a.alg.product(s[p + 2 + j], s[p + 3 + j])) {
              u[p + 2 + j] = w;
              int row = tgt.find(u);
              if (row >= 0) d.add(row, col, sign * cv);
            }
          } else {
            // c_q onto x from the left
            std::vector<int> u(s.begin(), s.end() - 1);
            const Matrix& la = hx.mod.left_action[s[n + 2]];
            for (std::size_t xi = 0; xi < hx.mod.dim; ++xi) {
              if (la(xi, s[1]) == 0) continue;
              u[1] = static_cast<int>(xi);
              int row = tgt.find(u);
              if (row >= 0) d.add(row, col, sign * la(xi, s[1]));
            }
          }
          sign = -sign;
        }
      }
    }
    c.d[n] = std::move(d);
  }
  auto bad = c.validate();
  if (!bad.empty()) throw Error("tor_env: " + bad.front());
  return homology_dims(c);
}

HomologyTable tor_modules(const RightModule& m, const LeftModule& x, std::size_t n_top,
                          std::size_t budget) {
  const std::size_t rd = m.over.dim, md = m.dim, xd = x.dim;
  ChainComplex c;
  c.top_degree = n_top;
  c.dims.resize(n_top + 1);
  c.d.resize(n_top + 1);
  std::vector<std::size_t> pw(n_top + 1, 1);
  for (std::size_t n = 1; n <= n_top; ++n) pw[n] = pw[n - 1] * rd;
  for (std::size_t n = 0; n <= n_top; ++n) {
    c.dims[n] = md * pw[n] * xd;
    check_budget(c.dims[n], budget, n, "bar space");
  }
  c.d[0] = SparseMatrix(0, c.dims[0]);
  std::vector<int> t(n_top);
  for (std::size_t n = 1; n <= n_top; ++n) {
    SparseMatrix d(c.dims[n - 1], c.dims[n]);
    for (std::size_t col = 0; col < c.dims[n]; ++col) {
      std::size_t rest = col;
      const std::size_t xi = rest % xd;
      rest /= xd;
      for (std::size_t k = n; k-- > 0;) {
        t[k] = static_cast<int>(rest % rd);
        rest /= rd;
      }
      const std::size_t mi = rest;
      auto encode = [&](std::size_t mw, const std::vector<int>& tup, std::size_t skip,
                        std::size_t xw) {
        std::size_t idx = mw;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == skip) continue;
          idx = idx * rd + static_cast<std::size_t>(tup[k]);
        }
        return idx * xd + xw;
      };
      // face 0: m . r_1
      for (std::size_t mw = 0; mw < md; ++mw) {
        const Rational& v = m.action[t[0]](mw, mi);
        if (v != 0) d.add(encode(mw, t, 0, xi), col, v);
      }
      // inner joins
      Rational sign(-1);
      for (std::size_t i = 0; i + 1 < n; ++i) {
        for (const auto& [w, cv] : m.over.product(t[i], t[i + 1])) {
          int keep = t[i];
          t[i] = w;
          d.add(encode(mi, t, i + 1, xi), col, sign * cv);
          t[i] = keep;
        }
        sign = -sign;
      }
      // face n: r_n . x
      for (std::size_t xw = 0; xw < xd; ++xw) {
        const Rational& v = x.action[t[n - 1]](xw, xi);
        if (v != 0) d.add(encode(mi, t, n - 1, xw), col, sign * v);
      }
    }
    c.d[n] = std::move(d);
  }
  auto bad = c.validate();
  if (!bad.empty()) throw Error("tor_modules: " + bad.front());
  return homology_dims(c);
}

}  // namespace homalg
