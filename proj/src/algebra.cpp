#include "homalg/algebra.hpp"

#include <algorithm>

namespace homalg {

Vec Algebra::multiply(const Vec& x, const Vec& y) const {
  Vec r(dim, Rational(0));
  for (std::size_t i = 0; i < dim; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < dim; ++j) {
      if (y[j] == 0) continue;
      const Rational c = x[i] * y[j];
      for (const auto& [k, v] : table[i][j]) r[k] += c * v;
    }
  }
  return r;
}

Matrix Algebra::left_mult(const Vec& x) const {
  Matrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < dim; ++j)
      for (const auto& [k, v] : table[i][j]) m(k, j) += x[i] * v;
  }
  return m;
}

Matrix Algebra::right_mult(const Vec& x) const {
  Matrix m(dim, dim);
  for (std::size_t j = 0; j < dim; ++j) {
    if (x[j] == 0) continue;
    for (std::size_t i = 0; i < dim; ++i)
      for (const auto& [k, v] : table[i][j]) m(k, i) += x[j] * v;
  }
  return m;
}

std::vector<std::string> Algebra::validate() const {
  std::vector<std::string> bad;
  if (labels.size() != dim || table.size() != dim || unit.size() != dim)
    return {"inconsistent field sizes"};
  for (std::size_t i = 0; i < dim; ++i) {
    Vec ei = basis_vector(i);
    if (multiply(unit, ei) != ei) bad.push_back("1.e_" + std::to_string(i) + " != e_" + std::to_string(i));
    if (multiply(ei, unit) != ei) bad.push_back("e_" + std::to_string(i) + ".1 != e_" + std::to_string(i));
  }
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      for (std::size_t k = 0; k < dim; ++k) {
        SparseVec lhs, rhs;
        for (const auto& [m, c] : table[i][j]) lhs = sparse_add(lhs, table[m][k], c);
        for (const auto& [m, c] : table[j][k]) rhs = sparse_add(rhs, table[i][m], c);
        if (lhs != rhs) {
          bad.push_back("associativity fails at (" + std::to_string(i) + "," + std::to_string(j) +
                        "," + std::to_string(k) + ")");
          if (bad.size() > 20) return bad;
        }
      }
  return bad;
}

Algebra from_structure_constants(std::vector<std::string> labels,
                                 std::vector<std::vector<SparseVec>> table, Vec unit) {
  Algebra a;
  a.dim = labels.size();
  a.labels = std::move(labels);
  a.table = std::move(table);
  a.unit = std::move(unit);
  auto bad = a.validate();
  if (!bad.empty()) throw ValidationError("invalid algebra: " + bad.front());
  return a;
}

Algebra ground_field() {
  Algebra a;
  a.dim = 1;
  a.labels = {"1"};
  a.table = {{{{0, Rational(1)}}}};
  a.unit = {Rational(1)};
  return a;
}

Algebra opposite(const Algebra& a) {
  Algebra o = a;
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t j = 0; j < a.dim; ++j) o.table[i][j] = a.table[j][i];
  return o;
}

Algebra tensor_product(const Algebra& a, const Algebra& b) {
  Algebra t;
  t.dim = a.dim * b.dim;
  t.labels.reserve(t.dim);
  for (const auto& la : a.labels)
    for (const auto& lb : b.labels) t.labels.push_back(la + "(x)" + lb);
  t.table.assign(t.dim, std::vector<SparseVec>(t.dim));
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t j = 0; j < b.dim; ++j)
      for (std::size_t k = 0; k < a.dim; ++k)
        for (std::size_t l = 0; l < b.dim; ++l) {
          SparseVec prod;
          for (const auto& [p, va] : a.table[i][k])
            for (const auto& [q, vb] : b.table[j][l])
              prod.emplace_back(p * static_cast<int>(b.dim) + q, va * vb);
          std::sort(prod.begin(), prod.end());
          t.table[i * b.dim + j][k * b.dim + l] = std::move(prod);
        }
  t.unit.assign(t.dim, Rational(0));
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t j = 0; j < b.dim; ++j) t.unit[i * b.dim + j] = a.unit[i] * b.unit[j];
  return t;
}

Algebra enveloping(const Algebra& a) { return tensor_product(a, opposite(a)); }

Algebra direct_sum(const Algebra& a, const Algebra& b) {
  Algebra s;
  s.dim = a.dim + b.dim;
  s.labels = a.labels;
  for (const auto& l : b.labels) s.labels.push_back(l + "'");
  s.table.assign(s.dim, std::vector<SparseVec>(s.dim));
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t j = 0; j < a.dim; ++j) s.table[i][j] = a.table[i][j];
  for (std::size_t i = 0; i < b.dim; ++i)
    for (std::size_t j = 0; j < b.dim; ++j) {
      SparseVec shifted;
      for (const auto& [k, v] : b.table[i][j]) shifted.emplace_back(k + static_cast<int>(a.dim), v);
      s.table[a.dim + i][a.dim + j] = std::move(shifted);
    }
  s.unit = a.unit;
  s.unit.insert(s.unit.end(), b.unit.begin(), b.unit.end());
  return s;
}

Algebra matrix_algebra(std::size_t n) {
  Algebra m;
  m.dim = n * n;
  auto idx = [n](std::size_t p, std::size_t q) { return static_cast<int>(p * n + q); };
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      m.labels.push_back("e" + std::to_string(p + 1) + std::to_string(q + 1));
  m.table.assign(m.dim, std::vector<SparseVec>(m.dim));
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s)
          if (q == r) m.table[idx(p, q)][idx(r, s)] = {{idx(p, s), Rational(1)}};
  m.unit.assign(m.dim, Rational(0));
  for (std::size_t p = 0; p < n; ++p) m.unit[idx(p, p)] = 1;
  return m;
}

Subspace radical(const Algebra& a) {
  std::vector<Matrix> left(a.dim);
  for (std::size_t i = 0; i < a.dim; ++i) left[i] = a.left_mult(a.basis_vector(i));
  Matrix gram(a.dim, a.dim);
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t j = i; j < a.dim; ++j) {
      Rational tr(0);
      for (std::size_t p = 0; p < a.dim; ++p)
        for (std::size_t q = 0; q < a.dim; ++q) tr += left[i](p, q) * left[j](q, p);
      gram(i, j) = tr;
      gram(j, i) = tr;
    }
  return kernel_basis(gram);
}

Subspace center(const Algebra& a) {
  Matrix stacked(a.dim * a.dim, a.dim);
  for (std::size_t j = 0; j < a.dim; ++j) {
    Vec ej = a.basis_vector(j);
    Matrix d = a.left_mult(ej) - a.right_mult(ej);
    for (std::size_t r = 0; r < a.dim; ++r)
      for (std::size_t c = 0; c < a.dim; ++c) stacked(j * a.dim + r, c) = d(r, c);
  }
  return kernel_basis(stacked);
}

AlgebraMap identity_map(const Algebra& a) { return {a, a, Matrix::identity(a.dim)}; }

AlgebraMap compose(const AlgebraMap& g, const AlgebraMap& f) {
  if (g.source.dim != f.target.dim) throw Error("compose: middle algebra mismatch");
  return {f.source, g.target, g.matrix * f.matrix};
}

AlgebraMap unit_embedding(const Algebra& b) {
  Matrix m(b.dim, 1);
  for (std::size_t i = 0; i < b.dim; ++i) m(i, 0) = b.unit[i];
  return {ground_field(), b, std::move(m)};
}

std::vector<std::string> check_map(const AlgebraMap& phi) {
  std::vector<std::string> bad;
  if (phi.matrix.rows() != phi.target.dim || phi.matrix.cols() != phi.source.dim)
    return {"matrix shape mismatch"};
  if (phi.apply(phi.source.unit) != phi.target.unit) bad.push_back("phi(1) != 1");
  for (std::size_t i = 0; i < phi.source.dim; ++i)
    for (std::size_t j = 0; j < phi.source.dim; ++j) {
      Vec lhs = phi.apply(phi.source.multiply(phi.source.basis_vector(i), phi.source.basis_vector(j)));
      Vec rhs = phi.target.multiply(phi.apply(phi.source.basis_vector(i)),
                                    phi.apply(phi.source.basis_vector(j)));
      if (lhs != rhs)
        bad.push_back("phi(e_" + std::to_string(i) + " e_" + std::to_string(j) +
                      ") != phi(e_" + std::to_string(i) + ") phi(e_" + std::to_string(j) + ")");
    }
  return bad;
}

bool is_injective(const AlgebraMap& phi) {
  return rref(phi.matrix).rank == phi.source.dim;
}

void require_extension(const AlgebraMap& iota) {
  auto bad = check_map(iota);
  if (!bad.empty()) throw ValidationError("extension map invalid: " + bad.front());
  if (!is_injective(iota)) throw ValidationError("extension map is not injective");
}

int FiniteGroup::inverse(int g) const {
  for (std::size_t h = 0; h < order; ++h)
    if (mult[g][h] == identity) return static_cast<int>(h);
  throw ValidationError("group element has no inverse");
}

std::vector<std::string> FiniteGroup::validate() const {
  std::vector<std::string> bad;
  if (mult.size() != order) return {"table size mismatch"};
  for (const auto& row : mult) {
    if (row.size() != order) return {"table row size mismatch"};
    for (int x : row)
      if (x < 0 || x >= static_cast<int>(order)) return {"table entry out of range"};
  }
  for (std::size_t g = 0; g < order; ++g) {
    if (mult[identity][g] != static_cast<int>(g) || mult[g][identity] != static_cast<int>(g))
      bad.push_back("identity law fails at " + std::to_string(g));
    bool has_inv = false;
    for (std::size_t h = 0; h < order; ++h)
      if (mult[g][h] == identity && mult[h][g] == identity) has_inv = true;
    if (!has_inv) bad.push_back("no inverse for " + std::to_string(g));
  }
  for (std::size_t g = 0; g < order; ++g)
    for (std::size_t h = 0; h < order; ++h)
      for (std::size_t k = 0; k < order; ++k)
        if (mult[mult[g][h]][k] != mult[g][mult[h][k]])
          bad.push_back("associativity fails at (" + std::to_string(g) + "," + std::to_string(h) +
                        "," + std::to_string(k) + ")");
  return bad;
}

FiniteGroup cyclic_group(std::size_t n) {
  FiniteGroup g;
  g.order = n;
  g.identity = 0;
  g.mult.assign(n, std::vector<int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g.mult[i][j] = static_cast<int>((i + j) % n);
  return g;
}

FiniteGroup group_from_table(std::vector<std::vector<int>> mult) {
  FiniteGroup g;
  g.order = mult.size();
  g.mult = std::move(mult);
  g.identity = -1;
  for (std::size_t e = 0; e < g.order; ++e) {
    bool id = true;
    for (std::size_t x = 0; x < g.order; ++x)
      if (g.mult[e][x] != static_cast<int>(x) || g.mult[x][e] != static_cast<int>(x)) id = false;
    if (id) {
      g.identity = static_cast<int>(e);
      break;
    }
  }
  if (g.identity < 0) throw ValidationError("group table has no identity");
  auto bad = g.validate();
  if (!bad.empty()) throw ValidationError("invalid group: " + bad.front());
  return g;
}

Algebra group_algebra(const FiniteGroup& g) {
  auto bad = g.validate();
  if (!bad.empty()) throw ValidationError("invalid group: " + bad.front());
  Algebra a;
  a.dim = g.order;
  for (std::size_t i = 0; i < g.order; ++i) a.labels.push_back("g" + std::to_string(i));
  a.table.assign(a.dim, std::vector<SparseVec>(a.dim));
  for (std::size_t i = 0; i < g.order; ++i)
    for (std::size_t j = 0; j < g.order; ++j) a.table[i][j] = {{g.mult[i][j], Rational(1)}};
  a.unit.assign(a.dim, Rational(0));
  a.unit[g.identity] = 1;
  return a;
}

}  // namespace homalg
