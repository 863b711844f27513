#include "tclb/cli.hpp"
#include "tclb/sim.hpp"

#include <ostream>

namespace tclb::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    const RunConfig config = parse_args(args);
    if (config.command == "verify-contraction") return cmd_verify_contraction(config, out, err);
    if (config.command == "verify-expansion") return cmd_verify_expansion(config, out, err);
    if (config.command == "bounds table") return cmd_bounds_table(config, out, err);
    if (config.command == "simulate cache") return cmd_simulate_cache(config, out, err);
    if (config.command == "simulate parallel") return cmd_simulate_parallel(config, out, err);
    throw UsageError("no command given");
  } catch (const HelpRequested& e) {
    out << e.what();
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const SimulationError& e) {
    err << "validation error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace tclb::cli
