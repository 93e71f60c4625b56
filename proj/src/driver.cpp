#include "homalg/driver.hpp"

#include <ostream>
#include <sstream>

#include "homalg/cyclic.hpp"
#include "homalg/io.hpp"

namespace homalg {

namespace {

using nlohmann::json;

json table_json(const std::vector<std::size_t>& dims, std::size_t lo, std::size_t hi) {
  json t;
  t["dims"] = dims;
  t["reliable"] = json::array({lo, hi});
  return t;
}

void add_verdict(json& doc, bool& pass, const std::string& check, bool ok,
                 const std::string& detail = "") {
  json v;
  v["check"] = check;
  v["pass"] = ok;
  if (!detail.empty()) v["detail"] = detail;
  doc["verdicts"].push_back(std::move(v));
  pass = pass && ok;
}

std::string degree_detail(const std::string& what, std::optional<std::size_t> degree) {
  if (!degree) return "";
  return what + " at degree " + std::to_string(*degree);
}

// A bare object document is accepted in place of {key: object}.
const json& section(const json& input, const char* key) {
  if (input.is_object() && input.contains(key)) return input.at(key);
  return input;
}

void run_algebra_homology(const JobSpec& job, json& doc, bool&) {
  Algebra a = algebra_of_json(section(job.input, "algebra"));
  Bimodule x;
  if (job.coefficients.is_null()) x = regular_bimodule(a);
  else {
    x = bimodule_of_json(job.coefficients, "coefficients");
    if (x.over.dim != a.dim)
      throw ValidationError("coefficients: bimodule is not over the input algebra");
  }
  doc["tables"]["HH"] = table_json(hh(a, x, job.max_degree, job.budget).dims, 0,
                                   job.max_degree - 1);
}

void run_cyclic(const JobSpec& job, json& doc, bool&) {
  Algebra a = algebra_of_json(section(job.input, "algebra"));
  doc["tables"]["HC"] =
      table_json(hc(a, job.max_degree, job.budget).dims, 0, job.max_degree - 2);
}

void run_extension_analyze(const JobSpec& job, json& doc, bool&) {
  AlgebraMap iota = map_of_json(section(job.input, "map"));
  require_extension(iota);
  const Algebra& a = iota.source;
  const Algebra& b = iota.target;
  doc["flags"]["faithfully_flat"] = is_faithfully_flat(iota);
  doc["flags"]["reduced_flat"] =
      radical(a).dim() == 0 ? true : is_projective(over_enveloping(mho(iota).module));
  doc["flags"]["smooth"] =
      radical(b).dim() == 0 ? true : is_projective(over_enveloping(sigma(iota).module));
  std::vector<Vec> gens;
  for (std::size_t i = 0; i < b.dim; ++i) gens.push_back(b.basis_vector(i));
  doc["flags"]["separable"] = separable_extension(iota, tensor_square_of(iota), gens);
  auto rel = hochschild_chain(trivial_colored(b), iota, regular_bimodule(b), job.max_degree,
                              job.budget);
  doc["tables"]["HH(B|A,B)"] =
      table_json(homology_dims(rel.complex).dims, 0, job.max_degree - 1);
}

void run_jz_verify(const JobSpec& job, json& doc, bool& pass) {
  AlgebraMap iota = map_of_json(section(job.input, "map"));
  auto r = jz_verify(iota, trivial_colored(iota.source), trivial_colored(iota.target),
                     regular_bimodule(iota.target), job.max_degree, job.budget);
  doc["tables"]["HH(A)"] = table_json(r.a.dims, 0, job.max_degree - 1);
  doc["tables"]["HH(B)"] = table_json(r.b.dims, 0, job.max_degree - 1);
  doc["tables"]["HH(B|A,B)"] = table_json(r.rel.dims, 0, job.max_degree - 1);
  bool exact = true;
  for (bool e : r.exact_mid) exact = exact && e;
  add_verdict(doc, pass, "Jacobi-Zariski exactness", exact,
              degree_detail("Jacobi-Zariski exactness fails", exact ? std::optional<std::size_t>{}
                                                  : r.first_violation));
  bool book = true;
  for (bool e : r.bookkeeping) book = book && e;
  add_verdict(doc, pass, "Jacobi-Zariski bookkeeping", book,
              degree_detail("Jacobi-Zariski bookkeeping fails",
                            book ? std::optional<std::size_t>{} : r.first_violation));
}

void flags_json(json& doc, const FibrationFlags& fl) {
  doc["flags"]["is_fibration"] = fl.is_fibration;
  doc["flags"]["unramified"] = fl.unramified;
  doc["flags"]["etale"] = fl.etale;
  doc["flags"]["separable_fibration"] = fl.separable_fibration;
  doc["flags"]["smooth_fibration"] = fl.smooth_fibration;
  doc["flags"]["galois"] = fl.galois;
  doc["flags"]["ext_reduced_flat"] = fl.ext_reduced_flat;
  doc["flags"]["ext_smooth"] = fl.ext_smooth;
  doc["flags"]["ext_separable"] = fl.ext_separable;
  doc["flags"]["ext_faithfully_flat"] = fl.ext_faithfully_flat;
}

void run_fibration_verify(const JobSpec& job, json& doc, bool& pass) {
  Fibration f = fibration_of_json(section(job.input, "fibration"));
  add_verdict(doc, pass, "distributive law", is_distributive_law(f.law),
              "pentagon or unit triangle violated");
  FibrationFlags fl = classify(f);
  flags_json(doc, fl);
  add_verdict(doc, pass, "fibration (law, invariance, can intertwining)", fl.is_fibration);
}

void run_graph_cover(const JobSpec& job, json& doc, bool& pass) {
  Covering cov = covering_of_json(section(job.input, "covering"));
  auto r = verify_local_coefficients(cov, job.max_degree, job.budget);
  doc["monodromy_order"] = r.monodromy_order;
  doc["dim_a"] = r.dim_a;
  doc["dim_b"] = r.dim_b;
  doc["coinvariant_dim"] = r.coinvariant_dim;
  doc["coinvariant_rank"] = r.coinvariant_rank;
  doc["tables"]["HH(B|A,B)"] = table_json(r.relative_hh, 0, job.max_degree - 1);
  doc["tables"]["HH(k[M])"] = table_json(r.fibre_hh, 0, job.max_degree - 1);
  doc["tables"]["HC(B)"] = table_json(r.hc_b, 0, r.hc_top - 2);
  doc["tables"]["HC(k[M])"] = table_json(r.hc_fibre, 0, r.hc_top - 2);
  FibrationFlags fl = classify(build_graph_fibration(cov));
  flags_json(doc, fl);
  add_verdict(doc, pass, "LocalCoefficients reduced flatness", r.ext_reduced_flat);
  add_verdict(doc, pass, "LocalCoefficients relative vanishing", r.vanishing,
              degree_detail("LocalCoefficients dimension mismatch",
                            r.vanishing ? std::optional<std::size_t>{} : r.first_violation));
  doc["findings"] = r.findings;
}

std::string markdown_table(const std::string& name, const json& t) {
  std::ostringstream os;
  os << "### " << name << "\n\n| n |";
  const auto& dims = t.at("dims");
  for (std::size_t i = 0; i < dims.size(); ++i) os << " " << i << " |";
  os << "\n|---|";
  for (std::size_t i = 0; i < dims.size(); ++i) os << "---|";
  os << "\n| dim |";
  for (const auto& d : dims) os << " " << d.get<std::size_t>() << " |";
  os << "\n\nreliable degrees " << t.at("reliable")[0].get<std::size_t>() << ".."
     << t.at("reliable")[1].get<std::size_t>() << "\n";
  return os.str();
}

}  // namespace

Report run(const JobSpec& job) {
  if (job.max_degree < 2) throw ValidationError("max_degree must be at least 2");
  if (job.budget == 0) throw ValidationError("size_budget must be positive");
  Report r;
  r.pass = true;
  r.doc["job"]["task"] = job.task;
  r.doc["job"]["max_degree"] = job.max_degree;
  r.doc["job"]["budget"] = job.budget;
  r.doc["verdicts"] = json::array();
  if (job.task == "algebra-homology") run_algebra_homology(job, r.doc, r.pass);
  else if (job.task == "cyclic") run_cyclic(job, r.doc, r.pass);
  else if (job.task == "extension-analyze") run_extension_analyze(job, r.doc, r.pass);
  else if (job.task == "jz-verify") run_jz_verify(job, r.doc, r.pass);
  else if (job.task == "fibration-verify") run_fibration_verify(job, r.doc, r.pass);
  else if (job.task == "graph-cover") run_graph_cover(job, r.doc, r.pass);
  else throw ValidationError("unknown task '" + job.task + "'");
  r.doc["pass"] = r.pass;
  return r;
}

std::string emit(const Report& r, const std::string& format) {
  if (format == "json") return r.doc.dump(2) + "\n";
  if (format != "markdown") throw ValidationError("unknown format '" + format + "'");
  std::ostringstream os;
  os << "# homalg report\n\n";
  const auto& job = r.doc.at("job");
  os << "- task: " << job.at("task").get<std::string>() << "\n";
  os << "- max degree: " << job.at("max_degree").get<std::size_t>() << "\n";
  os << "- budget: " << job.at("budget").get<std::size_t>() << "\n";
  for (const auto& key : {"monodromy_order", "dim_a", "dim_b", "coinvariant_dim",
                          "coinvariant_rank"})
    if (r.doc.contains(key)) os << "- " << key << ": " << r.doc.at(key).get<std::size_t>() << "\n";
  os << "\n";
  if (r.doc.contains("flags")) {
    os << "## flags\n\n| flag | value |\n|---|---|\n";
    for (const auto& [name, val] : r.doc.at("flags").items())
      os << "| " << name << " | " << (val.get<bool>() ? "true" : "false") << " |\n";
    os << "\n";
  }
  if (r.doc.contains("tables")) {
    os << "## homology\n\n";
    for (const auto& [name, t] : r.doc.at("tables").items())
      os << markdown_table(name, t) << "\n";
  }
  if (!r.doc.at("verdicts").empty()) {
    os << "## verdicts\n\n";
    for (const auto& v : r.doc.at("verdicts")) {
      os << "- " << (v.at("pass").get<bool>() ? "pass" : "FAIL") << ": "
         << v.at("check").get<std::string>();
      if (!v.at("pass").get<bool>() && v.contains("detail"))
        os << " (" << v.at("detail").get<std::string>() << ")";
      os << "\n";
    }
    os << "\n";
  }
  if (r.doc.contains("findings") && !r.doc.at("findings").empty()) {
    os << "## findings\n\n";
    for (const auto& f : r.doc.at("findings")) os << "- " << f.get<std::string>() << "\n";
    os << "\n";
  }
  os << "overall: " << (r.doc.at("pass").get<bool>() ? "pass" : "FAIL") << "\n";
  return os.str();
}

int execute(const JobSpec& job, std::ostream& out, std::ostream& err) {
  try {
    Report r = run(job);
    out << emit(r, job.format);
    return r.pass ? 0 : 1;
  } catch (const BudgetError& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "verification error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace homalg
