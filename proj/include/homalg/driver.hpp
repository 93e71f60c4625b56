#ifndef HOMALG_DRIVER_HPP
#define HOMALG_DRIVER_HPP

#include <iosfwd>
#include <string>

#include "json.hpp"

namespace homalg {

struct JobSpec {
  // algebra-homology | extension-analyze | fibration-verify | graph-cover |
  // jz-verify | cyclic
  std::string task;
  nlohmann::json input;
  nlohmann::json coefficients;  // optional bimodule document
  std::size_t max_degree = 4;
  std::size_t budget = 20000;
  std::string format = "json";  // json | markdown
};

struct Report {
  nlohmann::json doc;
  bool pass = false;
};

// Deterministic: identical jobs give identical documents.
Report run(const JobSpec& job);

// json output is canonical (sorted keys); markdown renders one table per
// homology result.
std::string emit(const Report& r, const std::string& format);

// Runs the job and writes the report; 0 = all verdicts pass, 1 = a verifier
// failed, 2 = input invalid, 3 = budget exceeded.
int execute(const JobSpec& job, std::ostream& out, std::ostream& err);

}  // namespace homalg

#endif
