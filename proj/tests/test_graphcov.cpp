#include <algorithm>

#include "doctest.h"
#include "homalg/graphcov.hpp"

using namespace homalg;

TEST_CASE("path reduction") {
  Graph g = path_graph(3);
  CHECK(reduce_path(g, {0, 1, 0}) == PathWord{0});
  CHECK(reduce_path(g, {0}) == PathWord{0});
  CHECK(reduce_path(g, {0, 1, 2, 1, 0}) == PathWord{0});
  CHECK(reduce_path(g, {0, 1, 2}) == PathWord{0, 1, 2});
  CHECK(reduce_path(g, reduce_path(g, {0, 1, 2, 1, 2})) ==
        reduce_path(g, {0, 1, 2, 1, 2}));
  CHECK_THROWS_AS(reduce_path(g, {0, 2}), ValidationError);
}

TEST_CASE("fundamental group generator counts") {
  Graph tri = cycle_graph(3);
  Graph two;
  two.vertices = {"a", "b", "c", "d", "e"};
  two.edges = {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}};
  for (const auto& [g, expect] :
       {std::pair<Graph, std::size_t>{path_graph(4), 0},
        {star_graph(3), 0},
        {tri, 1},
        {two, 2}}) {
    auto t = spanning_tree(g, 0);
    auto gens = pi1_generators(g, 0, t);
    CHECK(gens.size() == expect);
    for (const auto& w : gens) {
      CHECK(w.front() == 0);
      CHECK(w.back() == 0);
      CHECK(reduce_path(g, w) == w);
    }
  }
}

TEST_CASE("unramified covering recognition") {
  auto id = identity_cover(cycle_graph(4));
  auto rep = is_unramified_covering(id);
  CHECK(rep.valid);
  CHECK(rep.fold == 1);

  auto dbl = cycle_cover(2, 3);
  rep = is_unramified_covering(dbl);
  CHECK(rep.valid);
  CHECK(rep.fold == 2);

  Covering collapse = identity_cover(cycle_graph(3));
  collapse.total = path_graph(4);
  collapse.vertex_map = {0, 1, 2, 0};
  rep = is_unramified_covering(collapse);
  CHECK_FALSE(rep.valid);
  CHECK_FALSE(rep.problems.empty());
}

TEST_CASE("monodromy groups of cycle covers") {
  CHECK(monodromy(identity_cover(cycle_graph(5)), 0).group.order == 1);
  CHECK(monodromy(cycle_cover(2, 3), 0).group.order == 2);
  CHECK(monodromy(cycle_cover(3, 3), 0).group.order == 3);
  auto md = monodromy(cycle_cover(4, 3), 0);
  CHECK(md.group.order == 4);
  CHECK(md.fiber.size() == 4);
  CHECK(md.stabilizer == std::vector<bool>{true, false, false, false});
}

TEST_CASE("canonical groupoid algebra") {
  Graph pt;
  pt.vertices = {"v"};
  Algebra one = canonical_groupoid_algebra(pt);
  CHECK(one.dim == 1);
  Algebra a = canonical_groupoid_algebra(cycle_graph(3));
  CHECK(a.dim == 9);
  CHECK(radical(a).dim() == 0);
  CHECK(center(a).dim() == 1);
}

TEST_CASE("monodromy groupoid algebra") {
  auto id = monodromy_groupoid_algebra(identity_cover(cycle_graph(3)), 0);
  CHECK(id.algebra.dim == 9);
  CHECK(id.iota.source.dim == 9);

  auto six = monodromy_groupoid_algebra(cycle_cover(2, 3), 0);
  CHECK(six.algebra.dim == 18);
  CHECK(six.iota.source.dim == 9);
  CHECK(is_injective(six.iota));

  auto nine = monodromy_groupoid_algebra(cycle_cover(3, 3), 0);
  CHECK(nine.algebra.dim == 27);
  CHECK(nine.data.group.order == 3);
}

TEST_CASE("graph fibration of the identity cover") {
  Fibration f = build_graph_fibration(identity_cover(cycle_graph(3)));
  CHECK(f.fibre.dim == 1);
  auto fl = classify(f);
  CHECK(fl.is_fibration);
  CHECK(fl.galois);
  CHECK(fl.unramified);
}

TEST_CASE("graph fibration of the double cover of the triangle") {
  Fibration f = build_graph_fibration(cycle_cover(2, 3));
  CHECK(f.extension.source.dim == 9);
  CHECK(f.extension.target.dim == 18);
  CHECK(f.fibre.dim == 2);
  CHECK(is_distributive_law(f.law));
  auto fl = classify(f);
  CHECK(fl.is_fibration);
  CHECK(fl.galois);
  CHECK(fl.unramified);
  CHECK(fl.etale);
  CHECK(fl.smooth_fibration);
  CHECK(fl.ext_faithfully_flat);
  CHECK(fl.ext_reduced_flat);
}

TEST_CASE("graph fibration of the triple cover of the triangle") {
  Fibration f = build_graph_fibration(cycle_cover(3, 3));
  CHECK(f.extension.target.dim == 27);
  auto fl = classify(f);
  CHECK(fl.galois);
  CHECK(fl.unramified);
  CHECK(fl.ext_faithfully_flat);
}

TEST_CASE("local coefficients on the identity cover") {
  auto r = verify_local_coefficients(identity_cover(cycle_graph(3)), 3);
  CHECK(r.monodromy_order == 1);
  CHECK(r.coinvariant_rank == 1);
  CHECK(r.relative_hh[1] == 0);
  CHECK(r.relative_hh[2] == 0);
  CHECK(r.pass);
}

TEST_CASE("local coefficients on the double cover") {
  auto r = verify_local_coefficients(cycle_cover(2, 3), 4);
  CHECK(r.monodromy_order == 2);
  CHECK(r.dim_a == 9);
  CHECK(r.dim_b == 18);
  CHECK(r.coinvariant_dim == 2);
  CHECK(r.coinvariant_rank == 1);
  CHECK(r.ext_reduced_flat);
  CHECK(r.vanishing);
  for (std::size_t d = 1; d < 4; ++d) CHECK(r.relative_hh[d] == 0);
  CHECK(r.pass);
}

TEST_CASE("local coefficients on the triple cover") {
  auto r = verify_local_coefficients(cycle_cover(3, 3), 4, 60000);
  CHECK(r.monodromy_order == 3);
  CHECK(r.dim_b == 27);
  CHECK(r.coinvariant_rank == 1);
  for (std::size_t d = 1; d < 4; ++d) CHECK(r.relative_hh[d] == 0);
  CHECK(r.pass);
}

TEST_CASE("tree covers") {
  auto r = tree_unramified_check(identity_cover(path_graph(2)), 4);
  CHECK(r.pass);
  CHECK(r.hh_a == std::vector<std::size_t>{1, 0, 0, 0});
  CHECK(r.hc_a == r.hc_b);
  CHECK(tree_unramified_check(identity_cover(star_graph(3)), 3).pass);
  CHECK_THROWS_AS(tree_unramified_check(identity_cover(cycle_graph(3)), 3),
                  ValidationError);
}
