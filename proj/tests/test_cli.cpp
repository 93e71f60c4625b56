#include <fstream>
#include <sstream>

#include "doctest.h"
#include "homalg/driver.hpp"
#include "homalg/io.hpp"

using namespace homalg;
using nlohmann::json;

namespace {

json load_fixture(const std::string& name) {
  std::ifstream in(std::string(FIXTURE_DIR) + "/" + name);
  REQUIRE(in.good());
  return json::parse(in);
}

json minimal_field_doc() {
  return json{{"dim", 1},
              {"labels", {"1"}},
              {"structure", {{{"1"}}}},
              {"unit", {"1"}}};
}

JobSpec job_of(const std::string& task, json input) {
  JobSpec j;
  j.task = task;
  j.input = std::move(input);
  return j;
}

}  // namespace

TEST_CASE("minimal algebra document") {
  Algebra a = algebra_of_json(minimal_field_doc());
  CHECK(a.dim == 1);
  CHECK(a.unit == Vec{Rational(1)});
}

TEST_CASE("algebra document roundtrip") {
  json doc = load_fixture("dual_numbers.json")["algebra"];
  Algebra a = algebra_of_json(doc);
  CHECK(json_of_algebra(a) == doc);
  json cov = load_fixture("c6_c3_cover.json");
  CHECK(json_of_covering(covering_of_json(cov)) == cov);
}

TEST_CASE("non-associative table is rejected naming the triple") {
  json doc = json::parse(R"({
    "dim": 3,
    "labels": ["1", "x", "y"],
    "structure": [
      [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
      [["0", "1", "0"], ["0", "0", "1"], ["1", "0", "0"]],
      [["0", "0", "1"], ["0", "0", "0"], ["0", "0", "0"]]
    ],
    "unit": ["1", "0", "0"]
  })");
  try {
    algebra_of_json(doc);
    FAIL("expected rejection");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("associativity fails at (") != std::string::npos);
  }
}

TEST_CASE("bundled covering fixture is a valid covering") {
  Covering c = covering_of_json(load_fixture("c6_c3_cover.json"));
  auto rep = is_unramified_covering(c);
  CHECK(rep.valid);
  CHECK(rep.fold == 2);
}

TEST_CASE("algebra homology job") {
  auto r = run(job_of("algebra-homology", load_fixture("dual_numbers.json")));
  CHECK(r.pass);
  CHECK(r.doc["tables"]["HH"]["dims"] == json({2, 1, 1, 1}));
}

TEST_CASE("cyclic job on the ground field") {
  JobSpec j = job_of("cyclic", json{{"algebra", minimal_field_doc()}});
  j.max_degree = 5;
  auto r = run(j);
  CHECK(r.doc["tables"]["HC"]["dims"] == json({1, 0, 1, 0}));
}

TEST_CASE("extension analyze on the identity extension") {
  json alg = load_fixture("dual_numbers.json")["algebra"];
  Matrix id = Matrix::identity(2);
  json doc{{"map", {{"source", alg}, {"target", alg}, {"matrix", json_of_matrix(id)}}}};
  auto r = run(job_of("extension-analyze", doc));
  CHECK(r.pass);
  auto dims = r.doc["tables"]["HH(B|A,B)"]["dims"];
  CHECK(dims[1] == 0);
  CHECK(dims[2] == 0);
  CHECK(dims[3] == 0);
}

TEST_CASE("extension analyze flags the non faithfully flat fixture") {
  auto r = run(job_of("extension-analyze", load_fixture("nonff_extension.json")));
  CHECK_FALSE(r.doc["flags"]["faithfully_flat"].get<bool>());
}

TEST_CASE("graph cover job") {
  auto r = run(job_of("graph-cover", load_fixture("c6_c3_cover.json")));
  CHECK(r.pass);
  CHECK(r.doc["monodromy_order"] == 2);
  CHECK(r.doc["dim_a"] == 9);
  CHECK(r.doc["dim_b"] == 18);
  CHECK(r.doc["coinvariant_rank"] == 1);
  CHECK(r.doc["flags"]["galois"] == true);
  CHECK(r.doc["flags"]["unramified"] == true);
  CHECK(r.doc["tables"]["HH(B|A,B)"]["dims"][1] == 0);
}

TEST_CASE("jz verify job") {
  auto r = run(job_of("jz-verify", load_fixture("nonff_extension.json")));
  CHECK(r.doc["tables"].contains("HH(A)"));
  CHECK(r.doc["tables"].contains("HH(B)"));
  CHECK(r.doc["verdicts"].size() == 2);
}

TEST_CASE("determinism") {
  JobSpec j = job_of("graph-cover", load_fixture("c6_c3_cover.json"));
  std::string one = emit(run(j), "json");
  std::string two = emit(run(j), "json");
  CHECK(one == two);
  json parsed = json::parse(one);
  CHECK(parsed.dump(2) + "\n" == one);
}

TEST_CASE("markdown rendering") {
  JobSpec j = job_of("jz-verify", load_fixture("nonff_extension.json"));
  std::string md = emit(run(j), "markdown");
  CHECK(md.find("### HH(A)") != std::string::npos);
  CHECK(md.find("### HH(B)") != std::string::npos);
  CHECK(md.find("### HH(B|A,B)") != std::string::npos);
  CHECK(md.find("| dim |") != std::string::npos);
}

TEST_CASE("empty report emits a valid document") {
  Report r;
  r.doc = json::object();
  r.doc["job"] = {{"task", "none"}, {"max_degree", 2}, {"budget", 1}};
  r.doc["verdicts"] = json::array();
  r.doc["pass"] = true;
  CHECK_FALSE(emit(r, "json").empty());
  CHECK_FALSE(emit(r, "markdown").empty());
}

TEST_CASE("exit codes") {
  std::ostringstream out, err;
  JobSpec ok = job_of("algebra-homology", load_fixture("dual_numbers.json"));
  CHECK(execute(ok, out, err) == 0);

  JobSpec bad = job_of("algebra-homology", json{{"algebra", json{{"dim", 1}}}});
  CHECK(execute(bad, out, err) == 2);
  CHECK(err.str().find("invalid input") != std::string::npos);

  JobSpec tiny = ok;
  tiny.budget = 1;
  CHECK(execute(tiny, out, err) == 3);

  // a perturbed flip law fails the distributive-law verifier
  json alg = load_fixture("dual_numbers.json")["algebra"];
  json unitmap{{"source", minimal_field_doc()},
               {"target", alg},
               {"matrix", {{"1"}, {"0"}}}};
  Matrix law = Matrix::identity(2);
  law(0, 1) = 1;
  Matrix can(2, 4);
  can(0, 0) = 1;
  can(1, 1) = 1;
  can(1, 2) = 1;
  json fib{{"fibration",
            {{"extension", unitmap},
             {"fibre", minimal_field_doc()},
             {"law_matrix", json_of_matrix(law)},
             {"can_matrix", json_of_matrix(can)},
             {"invariance_generators", {json{"1"}}}}}};
  CHECK(execute(job_of("fibration-verify", fib), out, err) == 1);
}
