#include <iostream>

#include "common.hpp"
#include "tailtau/error.hpp"
#include "tailtau/version.hpp"

int main(int argc, char** argv) {
  using namespace tailtau;

  CLI::App app("Directional tail dependence: estimation, simulation, theory, experiments "
               "and pairwise river-gauge analysis.",
               "tailtau");
  app.option_defaults()->always_capture_default();
  app.set_version_flag("--version", std::string(kVersion));
  app.set_config("--config", "", "Read options from a config file (key=value, [sections])");
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand

  cli::Context ctx;
  ctx.app = &app;
  app.add_option("--precision", ctx.precision, "Significant digits in printed numbers")
      ->check(CLI::Range(1, 17));

  cli::add_estimate(app, ctx);
  cli::add_simulate(app, ctx);
  cli::add_theory(app, ctx);
  cli::add_experiment(app, ctx);
  cli::add_hydro(app, ctx);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (ctx.action) ctx.action();
  } catch (const InsufficientData& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
