#include "commands.hpp"

#include "plancherel/numeric.hpp"

#include <iostream>

int main(int argc, char** argv) {
  using namespace plancherel;
  try {
    precision_from_env();
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kBadFlags;
  }

  CLI::App app{"Asymptotics of Plancherel and q-deformed Plancherel partition sums"};
  app.require_subcommand(1);
  cli::Commands cmds(app);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kBadFlags;
  }
  return cmds.run();
}
