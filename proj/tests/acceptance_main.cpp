#include "acceptance.hpp"

#include <iostream>

int main() {
  auto res = plancherel::run_acceptance({false, 1}, std::cout);
  int failed = 0;
  for (const auto& r : res) failed += r.status == plancherel::CriterionResult::fail;
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << "\n";
  return failed ? 1 : 0;
}
