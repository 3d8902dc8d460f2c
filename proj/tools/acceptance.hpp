#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace plancherel {

struct CriterionResult {
  int id = 0;
  enum Status { pass, fail, skip } status = fail;
  std::string line;
  double seconds = 0;
};

struct AcceptanceOptions {
  bool quick = false;  // skips the slow oracle comparison, lower genus where allowed
  int threads = 1;
};

// Runs criteria 1..12 in order, printing one line per criterion to `out` as
// soon as it is decided.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt, std::ostream& out);

}  // namespace plancherel
