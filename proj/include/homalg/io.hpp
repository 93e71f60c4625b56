#ifndef HOMALG_IO_HPP
#define HOMALG_IO_HPP

#include <string>

#include "homalg/fibration.hpp"
#include "homalg/graphcov.hpp"
#include "json.hpp"

namespace homalg {

// Document schema: rationals are "p" or "p/q" strings (integers are also
// accepted as JSON numbers); matrices are row-major arrays of rows.  Parse
// errors carry the offending path.

Rational rational_of_json(const nlohmann::json& j, const std::string& path);
nlohmann::json json_of_rational(const Rational& r);

Vec vec_of_json(const nlohmann::json& j, const std::string& path);
nlohmann::json json_of_vec(const Vec& v);

Matrix matrix_of_json(const nlohmann::json& j, const std::string& path);
nlohmann::json json_of_matrix(const Matrix& m);

// {dim, labels[], structure[i][j] = dense product vector, unit[]}
Algebra algebra_of_json(const nlohmann::json& j, const std::string& path = "algebra");
nlohmann::json json_of_algebra(const Algebra& a);

// {source: algebra, target: algebra, matrix}
AlgebraMap map_of_json(const nlohmann::json& j, const std::string& path = "map");
nlohmann::json json_of_map(const AlgebraMap& m);

// {over: algebra, dim, left[a] = matrix, right[a] = matrix}
Bimodule bimodule_of_json(const nlohmann::json& j, const std::string& path = "bimodule");
nlohmann::json json_of_bimodule(const Bimodule& x);

// {vertices[], edges[[a,b]]}
Graph graph_of_json(const nlohmann::json& j, const std::string& path = "graph");
nlohmann::json json_of_graph(const Graph& g);

// {total: graph, base: graph, vertex_map[], sigma{"a->b": {"x": y}}}
Covering covering_of_json(const nlohmann::json& j, const std::string& path = "covering");
nlohmann::json json_of_covering(const Covering& c);

// {extension: map, fibre: algebra, law_matrix, can_matrix, invariance_generators[]}
// can_matrix has ambient B (x) B columns; it is pushed through the computed
// tensor square on parse.
Fibration fibration_of_json(const nlohmann::json& j, const std::string& path = "fibration");

}  // namespace homalg

#endif
