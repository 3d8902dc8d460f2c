#pragma once

#include <CLI11.hpp>

#include <functional>

namespace plancherel::cli {

enum ExitCode {
  kOk = 0,
  kCheckFailed = 1,
  kBadFlags = 2,
  kNumericFailure = 3,
  kOutOfRegime = 4,
  kTruncation = 5,
};

// Adds every subcommand to `app`; after a successful parse, `run()` executes
// the selected one and returns its exit code.
class Commands {
 public:
  explicit Commands(CLI::App& app);
  int run();

 private:
  CLI::App& app_;
  std::vector<std::pair<CLI::App*, std::function<int()>>> subs_;
};

}  // namespace plancherel::cli
