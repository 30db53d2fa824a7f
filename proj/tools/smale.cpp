// Command line front end: inspect | measures | enumerate | trace-run |
// theorem13 | verify.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "smale/config.hpp"
#include "smale/errors.hpp"
#include "smale/experiments.hpp"

namespace {

using namespace smale;

struct Options {
  std::string config;
  std::optional<std::string> out;
  std::optional<int> kmax;
  std::optional<int> window;
  bool no_timestamp = false;
  int n_max = 15;
  unsigned threads = 0;
};

ExperimentConfig require_config(const Options& opt) {
  if (opt.config.empty()) throw ValidationError("--config PATH is required for this command");
  ExperimentConfig config = load_config(opt.config);
  if (opt.window) config.window = *opt.window;
  return config;
}

int run(const std::string& command, const Options& opt) {
  if (command == "inspect") {
    cmd_inspect(require_config(opt), std::cout);
  } else if (command == "measures") {
    cmd_measures(require_config(opt), std::cout);
  } else if (command == "enumerate") {
    const ExperimentConfig config = require_config(opt);
    cmd_enumerate(config, config.window, std::cout);
  } else if (command == "trace-run") {
    TraceRunOptions trace{opt.out, opt.kmax, !opt.no_timestamp, opt.threads};
    return cmd_trace_run(require_config(opt), trace, std::cout);
  } else if (command == "theorem13") {
    return cmd_theorem13(require_config(opt), opt.kmax.value_or(opt.n_max), std::cout);
  } else if (command == "verify") {
    RunSummary summary;
    if (opt.config.empty()) {
      summary.checks = run_acceptance_suite();
      summary.print(std::cout);
    } else {
      summary = cmd_verify(require_config(opt), std::cout);
    }
    return summary.all_passed() ? kExitOk : kExitNumerical;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heteroclinic algebras of shifts of finite type: traces, measures, checks"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* c = sub->add_option("--config", opt.config, "Experiment configuration (JSON)");
    if (config_required) c->required();
    sub->add_option("--window", opt.window, "Enumeration / oracle window");
  };
  auto* inspect = app.add_subcommand("inspect", "Perron data, entropy and Parry 1-cylinder measures");
  add_common(inspect, true);
  auto* measures = app.add_subcommand("measures", "Leaf measures, their identities, and tau_s(a), tau_u(b)");
  add_common(measures, true);
  auto* enumerate = app.add_subcommand("enumerate", "List heteroclinic points inside [-W, W]");
  add_common(enumerate, true);
  auto* trace = app.add_subcommand("trace-run", "Scaled traces lambda^-2k Tr(alpha^k(a) alpha^-k(b)) to CSV");
  add_common(trace, true);
  trace->add_option("--out", opt.out, "CSV path ('-' for standard output)");
  trace->add_option("--kmax", opt.kmax, "Largest k (overrides the config)");
  trace->add_flag("--no-timestamp", opt.no_timestamp, "Omit the '# generated' comment line");
  trace->add_option("--threads", opt.threads, "Worker threads (0 = hardware concurrency)");
  auto* theorem13 = app.add_subcommand("theorem13", "Finite rank products, vanishing products, commutator decay");
  add_common(theorem13, true);
  theorem13->add_option("--kmax", opt.kmax, "Largest n for the product and commutator sweeps");
  auto* verify = app.add_subcommand("verify", "Run the acceptance suite (plus config checks when given)");
  add_common(verify, false);

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    return run(command, opt);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ValidationError& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kExitValidation;
  } catch (const NotPrimitive& e) {
    std::cerr << "not primitive: " << e.what() << '\n';
    return kExitValidation;
  } catch (const WindowOverflow& e) {
    std::cerr << "resource cap: " << e.what() << '\n';
    return kExitResource;
  } catch (const WindowTooSmall& e) {
    std::cerr << "resource cap: " << e.what() << '\n';
    return kExitResource;
  } catch (const NoConvergence& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}
