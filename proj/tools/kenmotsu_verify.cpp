// kenmotsu-verify: numerically checks the Kenmotsu and non-symmetric
// non-metric connection identities on the built-in example charts.
//
// Exit codes: 0 every expectation met, 1 expectation mismatch, 2 usage error.

#include "kenmotsu/examples.hpp"
#include "kenmotsu/runner.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <string>
#include <vector>

namespace {

constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

void print_catalog() {
  for (const auto& ex : kenmotsu::catalog()) {
    std::cout << ex.name << "  dim=" << ex.manifold.dim() << "  kenmotsu=" << (ex.expected_kenmotsu ? "yes" : "no")
              << "  einstein=" << (ex.expected_einstein ? "yes" : "no") << "\n    " << ex.notes << "\n    sample box:";
    for (const auto& iv : ex.sample_box) std::cout << " (" << iv.lo << ", " << iv.hi << ")";
    std::cout << "\n";
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verify Kenmotsu structure and non-symmetric non-metric connection identities on example charts"};

  kenmotsu::RunConfig config;
  std::vector<std::string> suite_names;
  std::vector<std::string> tolerance_specs;
  bool no_richardson = false;
  bool as_json = false;
  bool list = false;

  app.add_option("--manifold", config.manifold_names, "Example chart to check (repeatable; default: all)");
  app.add_option("--suite", suite_names,
                 "Suite to run: axioms, kenmotsu, section2, section3, theorem31, section4, weyl_tachibana, all "
                 "(repeatable; default: all)");
  app.add_option("--points", config.num_points, "Number of sample points per manifold")->capture_default_str();
  app.add_option("--seed", config.seed, "Sampling seed")->capture_default_str();
  app.add_option("--step", config.step, "Central-difference step")->capture_default_str();
  app.add_flag("--no-richardson", no_richardson, "Disable step-halving Richardson extrapolation");
  app.add_option("--tol", tolerance_specs, "Tolerance override IDENTITY=VALUE (repeatable)");
  app.add_flag("--json", as_json, "Emit the machine-readable report");
  app.add_flag("--list", list, "Print the example catalog and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (list) {
    print_catalog();
    return 0;
  }

  try {
    for (const auto& name : suite_names)
      for (auto s : kenmotsu::parse_suite(name)) config.suites.push_back(s);
    for (const auto& spec : tolerance_specs) {
      const auto eq = spec.find('=');
      if (eq == std::string::npos || eq == 0) throw kenmotsu::UsageError("--tol expects IDENTITY=VALUE, got '" + spec + "'");
      double value = 0.0;
      try {
        std::size_t used = 0;
        value = std::stod(spec.substr(eq + 1), &used);
        if (used != spec.size() - eq - 1) throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        throw kenmotsu::UsageError("--tol: cannot parse value in '" + spec + "'");
      }
      config.tolerance_overrides[spec.substr(0, eq)] = value;
    }
    config.richardson = !no_richardson;
    config.output_format = as_json ? kenmotsu::OutputFormat::Json : kenmotsu::OutputFormat::Text;

    const kenmotsu::RunReport report = kenmotsu::run(config);
    std::cout << (as_json ? kenmotsu::to_json(report) : kenmotsu::to_text(report));
    return report.exit_status == 0 ? 0 : kExitMismatch;
  } catch (const kenmotsu::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
