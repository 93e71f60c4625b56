#ifndef HOMALG_GRAPHCOV_HPP
#define HOMALG_GRAPHCOV_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "homalg/algebra.hpp"
#include "homalg/cyclic.hpp"
#include "homalg/fibration.hpp"

namespace homalg {

// Simple graph: no loops, no multiple edges.
struct Graph {
  std::vector<std::string> vertices;
  std::vector<std::pair<int, int>> edges;  // unordered pairs

  std::size_t order() const { return vertices.size(); }
  bool has_edge(int a, int b) const;
  std::vector<std::string> validate() const;
  bool connected() const;
};

Graph cycle_graph(std::size_t n);
Graph path_graph(std::size_t vertices);
Graph star_graph(std::size_t leaves);

struct Covering {
  Graph total;
  Graph base;
  std::vector<int> vertex_map;  // total vertex -> base vertex
  // Per directed base edge (a,b), the fiber transport f^{-1}(a) -> f^{-1}(b).
  std::map<std::pair<int, int>, std::map<int, int>> sigma;
};

Covering identity_cover(const Graph& g);
// The unique connected k-fold cover C_{kn} -> C_n, transport stepping by one.
Covering cycle_cover(std::size_t k, std::size_t n);

struct CoveringReport {
  bool valid = false;
  std::optional<std::size_t> fold;  // constant fiber size when present
  std::vector<std::string> problems;
};
CoveringReport is_unramified_covering(const Covering& c);

// Reduced vertex sequence; (v,w,v) factors cancel to v.
using PathWord = std::vector<int>;

PathWord reduce_path(const Graph& g, const PathWord& p);

struct SpanningTree {
  int root = 0;
  std::vector<int> parent;  // -1 at the root
};
SpanningTree spanning_tree(const Graph& g, int root);
PathWord tree_path(const SpanningTree& t, int v);  // root .. v

// One reduced cycle at the root per non-tree edge.
std::vector<PathWord> pi1_generators(const Graph& g, int root, const SpanningTree& t);

struct MonodromyData {
  int base_vertex = 0;
  std::vector<int> fiber;  // total vertices over base_vertex
  std::vector<std::vector<int>> generators;      // fiber permutations
  std::vector<std::vector<int>> group_elements;  // closure; element 0 is the identity
  FiniteGroup group;
  std::vector<bool> stabilizer;  // acts trivially on the fiber
};
MonodromyData monodromy(const Covering& c, int base_vertex);

// Basis p_{w,v} with p_{w,u} p_{u,v} = p_{w,v}; index w*|V|+v.
Algebra canonical_groupoid_algebra(const Graph& g);

struct MonodromyAlgebra {
  Algebra algebra;  // basis (w,v,m), index (w*|V|+v)*|M|+m
  AlgebraMap iota;  // canonical groupoid algebra of the base, p_{w,v} -> (w,v,e)
  MonodromyData data;
};
MonodromyAlgebra monodromy_groupoid_algebra(const Covering& c, int base_vertex);

Fibration build_graph_fibration(const Covering& c);

// Reduced relative complex CH_*(B|A, B) of a monodromy groupoid algebra, with
// chain groups in the monodromy-word normal form (m_0,...,m_n).  The closed
// form is certified at runtime against the generic balancing relations.
struct CertifiedRelative {
  ChainComplex complex;
  std::vector<Quotient> q;
};
CertifiedRelative monodromy_relative_chains(const MonodromyAlgebra& ma, std::size_t n_top,
                                            std::size_t budget = 20000);

// Amitsur complex A -> B -> B (x)_A B -> ... of a monodromy groupoid algebra
// in the root-factored normal form (w, v, m_1..m_j).  The projection from the
// generic tensor strings is certified at runtime: it splits, kills every
// balancing relation, and intertwines the generic coface maps.
AmitsurReport graph_amitsur(const MonodromyAlgebra& ma, std::size_t n_top,
                            std::size_t budget = 20000);

struct LocalCoefficientsReport {
  std::size_t monodromy_order = 0;
  std::size_t dim_a = 0;
  std::size_t dim_b = 0;
  std::size_t coinvariant_dim = 0;   // dim B/[B,A] over the ground field
  std::size_t coinvariant_rank = 0;  // dim B/[B,A] divided by dim k[M]
  bool ext_reduced_flat = false;
  std::vector<std::size_t> relative_hh;  // dim HH_n(B|A,B), degrees 0..N-1
  std::vector<std::size_t> fibre_hh;     // dim HH_n(k[M]), degrees 0..N-1
  bool vanishing = false;                // agreement in degrees 1..N-1
  std::size_t hc_top = 0;                // truncation used for the HC tables
  std::vector<std::size_t> hc_b;         // computed HC_n(B)
  std::vector<std::size_t> hc_fibre;     // hc(k[M]) comparison table
  bool matches_paper_claim = false;      // every entry of hc_b equal to 1
  std::vector<std::string> findings;     // open findings, reported verbatim
  std::optional<std::size_t> first_violation;
  bool pass = false;  // parts (i) and (ii)
};
LocalCoefficientsReport verify_local_coefficients(const Covering& c, std::size_t n_top,
                                                  std::size_t budget = 20000);

struct TreeCoverReport {
  std::vector<std::size_t> hh_a, hh_b;  // degrees 0..N-1
  std::vector<std::size_t> hc_a, hc_b;  // degrees 0..N-2
  bool pass = false;
};
TreeCoverReport tree_unramified_check(const Covering& c, std::size_t n_top,
                                      std::size_t budget = 20000);

}  // namespace homalg

#endif
