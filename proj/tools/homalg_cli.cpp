#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "homalg/driver.hpp"
#include "homalg/rational.hpp"

namespace {

nlohmann::json load_document(const std::string& path) {
  std::ostringstream buf;
  if (path.empty() || path == "-") buf << std::cin.rdbuf();
  else {
    std::ifstream in(path);
    if (!in) throw homalg::ValidationError("cannot open '" + path + "'");
    buf << in.rdbuf();
  }
  try {
    return nlohmann::json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw homalg::ValidationError(std::string("json parse error: ") + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hochschild and cyclic homology of finite-dimensional algebras"};
  app.require_subcommand(1);

  homalg::JobSpec job;
  std::string input_path, output_path, coefficients_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("input", input_path, "input document (json file, or '-' for stdin)");
    sub->add_option("--max-degree", job.max_degree, "top chain degree N (default 4)");
    sub->add_option("--budget", job.budget, "max chain-space dimension (default 20000)");
    sub->add_option("--format", job.format, "json or markdown")
        ->check(CLI::IsMember({"json", "markdown"}));
    sub->add_option("--output", output_path, "output file (default stdout)");
  };

  const std::pair<const char*, const char*> kinds[] = {
      {"homology", "algebra-homology"},     {"cyclic", "cyclic"},
      {"analyze-extension", "extension-analyze"}, {"jz-verify", "jz-verify"},
      {"fibration-verify", "fibration-verify"},   {"graph-cover", "graph-cover"},
  };
  for (const auto& [name, task] : kinds) {
    CLI::App* sub = app.add_subcommand(name, task);
    add_common(sub);
    if (std::string(name) == "homology")
      sub->add_option("--coefficients", coefficients_path, "bimodule document");
    sub->callback([&job, task = task] { job.task = task; });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    job.input = load_document(input_path);
    if (!coefficients_path.empty())
      job.coefficients = load_document(coefficients_path);
  } catch (const homalg::ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  }

  if (output_path.empty()) return homalg::execute(job, std::cout, std::cerr);
  std::ofstream out(output_path);
  if (!out) {
    std::cerr << "cannot open '" << output_path << "'\n";
    return 2;
  }
  return homalg::execute(job, out, std::cerr);
}
