#include "homalg/io.hpp"

#include <utility>

namespace homalg {

namespace {

using nlohmann::json;

const json& field(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw ValidationError(path + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ValidationError(path + ": missing field '" + key + "'");
  return *it;
}

std::size_t size_of(const json& j, const std::string& key, const std::string& path) {
  const json& f = field(j, key, path);
  if (!f.is_number_integer() || f.get<long>() < 0)
    throw ValidationError(path + "." + key + ": expected a size");
  return f.get<std::size_t>();
}

int int_of(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ValidationError(path + ": expected an integer");
  return j.get<int>();
}

}  // namespace

Rational rational_of_json(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) {
    try {
      return rational_from_string(j.get<std::string>());
    } catch (const ValidationError& e) {
      throw ValidationError(path + ": " + e.what());
    }
  }
  throw ValidationError(path + ": expected a rational literal");
}

json json_of_rational(const Rational& r) { return rational_to_string(r); }

Vec vec_of_json(const json& j, const std::string& path) {
  if (!j.is_array()) throw ValidationError(path + ": expected an array");
  Vec v;
  for (std::size_t i = 0; i < j.size(); ++i)
    v.push_back(rational_of_json(j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

json json_of_vec(const Vec& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(json_of_rational(x));
  return out;
}

Matrix matrix_of_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw ValidationError(path + ": expected a non-empty array of rows");
  std::size_t cols = 0;
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    rows.push_back(vec_of_json(j[i], path + "[" + std::to_string(i) + "]"));
    if (i == 0) cols = rows[0].size();
    else if (rows[i].size() != cols)
      throw ValidationError(path + ": ragged rows");
  }
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
  return m;
}

json json_of_matrix(const Matrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(json_of_vec(m.row(i)));
  return out;
}

Algebra algebra_of_json(const json& j, const std::string& path) {
  std::size_t dim = size_of(j, "dim", path);
  const json& jl = field(j, "labels", path);
  if (!jl.is_array() || jl.size() != dim)
    throw ValidationError(path + ".labels: expected " + std::to_string(dim) + " labels");
  std::vector<std::string> labels;
  for (const auto& l : jl) {
    if (!l.is_string()) throw ValidationError(path + ".labels: expected strings");
    labels.push_back(l.get<std::string>());
  }
  const json& js = field(j, "structure", path);
  if (!js.is_array() || js.size() != dim)
    throw ValidationError(path + ".structure: expected " + std::to_string(dim) + " rows");
  std::vector<std::vector<SparseVec>> table(dim, std::vector<SparseVec>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    if (!js[i].is_array() || js[i].size() != dim)
      throw ValidationError(path + ".structure[" + std::to_string(i) + "]: expected " +
                            std::to_string(dim) + " product vectors");
    for (std::size_t k = 0; k < dim; ++k) {
      Vec prod = vec_of_json(js[i][k], path + ".structure[" + std::to_string(i) + "][" +
                                           std::to_string(k) + "]");
      if (prod.size() != dim)
        throw ValidationError(path + ".structure[" + std::to_string(i) + "][" +
                              std::to_string(k) + "]: wrong length");
      table[i][k] = sparse_of(prod);
    }
  }
  Vec unit = vec_of_json(field(j, "unit", path), path + ".unit");
  if (unit.size() != dim) throw ValidationError(path + ".unit: wrong length");
  try {
    return from_structure_constants(std::move(labels), std::move(table), std::move(unit));
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

json json_of_algebra(const Algebra& a) {
  json j;
  j["dim"] = a.dim;
  j["labels"] = a.labels;
  json structure = json::array();
  for (std::size_t i = 0; i < a.dim; ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < a.dim; ++k)
      row.push_back(json_of_vec(dense_of(a.product(i, k), a.dim)));
    structure.push_back(std::move(row));
  }
  j["structure"] = std::move(structure);
  j["unit"] = json_of_vec(a.unit);
  return j;
}

AlgebraMap map_of_json(const json& j, const std::string& path) {
  AlgebraMap m;
  m.source = algebra_of_json(field(j, "source", path), path + ".source");
  m.target = algebra_of_json(field(j, "target", path), path + ".target");
  m.matrix = matrix_of_json(field(j, "matrix", path), path + ".matrix");
  if (m.matrix.rows() != m.target.dim || m.matrix.cols() != m.source.dim)
    throw ValidationError(path + ".matrix: expected " + std::to_string(m.target.dim) + " x " +
                          std::to_string(m.source.dim));
  auto bad = check_map(m);
  if (!bad.empty()) throw ValidationError(path + ": " + bad.front());
  return m;
}

json json_of_map(const AlgebraMap& m) {
  json j;
  j["source"] = json_of_algebra(m.source);
  j["target"] = json_of_algebra(m.target);
  j["matrix"] = json_of_matrix(m.matrix);
  return j;
}

Bimodule bimodule_of_json(const json& j, const std::string& path) {
  Bimodule x;
  x.over = algebra_of_json(field(j, "over", path), path + ".over");
  x.dim = size_of(j, "dim", path);
  for (const auto& [key, side] :
       {std::pair<const char*, std::vector<Matrix>*>{"left", &x.left_action},
        {"right", &x.right_action}}) {
    const json& ja = field(j, key, path);
    if (!ja.is_array() || ja.size() != x.over.dim)
      throw ValidationError(path + "." + key + ": expected one matrix per algebra basis element");
    for (std::size_t i = 0; i < ja.size(); ++i) {
      Matrix m = matrix_of_json(ja[i], path + "." + key + "[" + std::to_string(i) + "]");
      if (m.rows() != x.dim || m.cols() != x.dim)
        throw ValidationError(path + "." + key + "[" + std::to_string(i) + "]: wrong shape");
      side->push_back(std::move(m));
    }
  }
  auto bad = x.validate();
  if (!bad.empty()) throw ValidationError(path + ": " + bad.front());
  return x;
}

json json_of_bimodule(const Bimodule& x) {
  json j;
  j["over"] = json_of_algebra(x.over);
  j["dim"] = x.dim;
  json left = json::array(), right = json::array();
  for (const auto& m : x.left_action) left.push_back(json_of_matrix(m));
  for (const auto& m : x.right_action) right.push_back(json_of_matrix(m));
  j["left"] = std::move(left);
  j["right"] = std::move(right);
  return j;
}

Graph graph_of_json(const json& j, const std::string& path) {
  Graph g;
  const json& jv = field(j, "vertices", path);
  if (!jv.is_array()) throw ValidationError(path + ".vertices: expected an array");
  for (const auto& v : jv) {
    if (!v.is_string()) throw ValidationError(path + ".vertices: expected strings");
    g.vertices.push_back(v.get<std::string>());
  }
  const json& je = field(j, "edges", path);
  if (!je.is_array()) throw ValidationError(path + ".edges: expected an array");
  for (std::size_t i = 0; i < je.size(); ++i) {
    const std::string epath = path + ".edges[" + std::to_string(i) + "]";
    if (!je[i].is_array() || je[i].size() != 2)
      throw ValidationError(epath + ": expected a pair");
    g.edges.emplace_back(int_of(je[i][0], epath), int_of(je[i][1], epath));
  }
  auto bad = g.validate();
  if (!bad.empty()) throw ValidationError(path + ": " + bad.front());
  return g;
}

json json_of_graph(const Graph& g) {
  json j;
  j["vertices"] = g.vertices;
  json edges = json::array();
  for (const auto& [a, b] : g.edges) edges.push_back(json::array({a, b}));
  j["edges"] = std::move(edges);
  return j;
}

Covering covering_of_json(const json& j, const std::string& path) {
  Covering c;
  c.total = graph_of_json(field(j, "total", path), path + ".total");
  c.base = graph_of_json(field(j, "base", path), path + ".base");
  const json& jm = field(j, "vertex_map", path);
  if (!jm.is_array()) throw ValidationError(path + ".vertex_map: expected an array");
  for (std::size_t i = 0; i < jm.size(); ++i)
    c.vertex_map.push_back(int_of(jm[i], path + ".vertex_map[" + std::to_string(i) + "]"));
  const json& js = field(j, "sigma", path);
  if (!js.is_object()) throw ValidationError(path + ".sigma: expected an object");
  for (const auto& [key, val] : js.items()) {
    auto arrow = key.find("->");
    if (arrow == std::string::npos)
      throw ValidationError(path + ".sigma: key '" + key + "' is not of the form 'a->b'");
    int a, b;
    try {
      a = std::stoi(key.substr(0, arrow));
      b = std::stoi(key.substr(arrow + 2));
    } catch (const std::exception&) {
      throw ValidationError(path + ".sigma: key '" + key + "' is not of the form 'a->b'");
    }
    if (!val.is_object())
      throw ValidationError(path + ".sigma['" + key + "']: expected an object");
    std::map<int, int> transport;
    for (const auto& [from, to] : val.items()) {
      int x;
      try {
        x = std::stoi(from);
      } catch (const std::exception&) {
        throw ValidationError(path + ".sigma['" + key + "']: non-integer fiber vertex");
      }
      transport[x] = int_of(to, path + ".sigma['" + key + "']['" + from + "']");
    }
    c.sigma[{a, b}] = std::move(transport);
  }
  return c;
}

json json_of_covering(const Covering& c) {
  json j;
  j["total"] = json_of_graph(c.total);
  j["base"] = json_of_graph(c.base);
  j["vertex_map"] = c.vertex_map;
  json sigma = json::object();
  for (const auto& [edge, transport] : c.sigma) {
    json t = json::object();
    for (const auto& [x, y] : transport) t[std::to_string(x)] = y;
    sigma[std::to_string(edge.first) + "->" + std::to_string(edge.second)] = std::move(t);
  }
  j["sigma"] = std::move(sigma);
  return j;
}

Fibration fibration_of_json(const json& j, const std::string& path) {
  Fibration f;
  f.extension = map_of_json(field(j, "extension", path), path + ".extension");
  try {
    require_extension(f.extension);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ".extension: " + e.what());
  }
  f.fibre = algebra_of_json(field(j, "fibre", path), path + ".fibre");
  std::size_t dB = f.extension.target.dim, dC = f.fibre.dim;
  Matrix law = matrix_of_json(field(j, "law_matrix", path), path + ".law_matrix");
  if (law.rows() != dB * dC || law.cols() != dC * dB)
    throw ValidationError(path + ".law_matrix: expected " + std::to_string(dB * dC) + " x " +
                          std::to_string(dC * dB));
  f.law = {f.extension.target, f.fibre, SparseMatrix::from_dense(law)};
  f.tensor_square = tensor_square_of(f.extension);
  Matrix can = matrix_of_json(field(j, "can_matrix", path), path + ".can_matrix");
  if (can.rows() != dB * dC || can.cols() != dB * dB)
    throw ValidationError(path + ".can_matrix: expected " + std::to_string(dB * dC) + " x " +
                          std::to_string(dB * dB) + " ambient columns");
  f.can = SparseMatrix::from_dense(can) * f.tensor_square.section;
  const json& jg = field(j, "invariance_generators", path);
  if (!jg.is_array()) throw ValidationError(path + ".invariance_generators: expected an array");
  for (std::size_t i = 0; i < jg.size(); ++i) {
    Vec g = vec_of_json(jg[i], path + ".invariance_generators[" + std::to_string(i) + "]");
    if (g.size() != f.extension.source.dim)
      throw ValidationError(path + ".invariance_generators[" + std::to_string(i) +
                            "]: wrong length");
    f.invariance_generators.push_back(std::move(g));
  }
  f.fibre_coefficients = regular_bimodule(f.fibre);
  f.base_colored = trivial_colored(f.extension.source);
  f.total_colored = trivial_colored(f.extension.target);
  return f;
}

}  // namespace homalg
