#pragma once

// Verification runs over the example catalog: sampling, suite ordering,
// expectations per manifold, and text/json rendering.
//
// JSON layout (field names are stable):
//   { "config": {...},
//     "manifolds": [ { "name", "dim", "expected": {...},
//                      "suites": [ { "suite", "identity", "status", "expectation",
//                                    "matches_expectation", "max_residual", "tolerance",
//                                    "passed", "note", "details": {...},
//                                    "points": [ { "point", "residual", "signed_residual",
//                                                  "error"? } ] } ],
//                      "verdicts": {...} } ],
//     "exit_status": 0 }

#include "kenmotsu/errors.hpp"
#include "kenmotsu/examples.hpp"
#include "kenmotsu/report.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kenmotsu {

/// Bad run configuration (unknown manifold or suite, malformed override).
class UsageError : public Error {
public:
  using Error::Error;
};

enum class Suite { Axioms, Kenmotsu, CurvatureIdentities, Connection, Irregularity, Semisymmetry, WeylTachibana };

enum class OutputFormat { Text, Json };

std::string to_string(Suite suite);
/// Accepts every suite name plus "all" (returned as the full list). Throws UsageError.
std::vector<Suite> parse_suite(const std::string& name);
const std::vector<Suite>& all_suites();

/// Every identity name a run can produce, for validating tolerance overrides.
const std::vector<std::string>& known_identities();

struct RunConfig {
  /// Empty means the whole catalog.
  std::vector<std::string> manifold_names;
  /// Empty means all suites.
  std::vector<Suite> suites;
  std::size_t num_points = 20;
  std::uint64_t seed = 0;
  double step = 1e-4;
  bool richardson = true;
  std::map<std::string, double> tolerance_overrides;
  OutputFormat output_format = OutputFormat::Text;
};

struct Verdicts {
  bool axioms_hold = false;
  bool kenmotsu = false;
  bool einstein = false;
  double einstein_a = 0.0;
  double einstein_fit_residual = 0.0;
  double tilde_fit_a = 0.0;
  double tilde_fit_b = 0.0;
  double tilde_fit_residual = 0.0;
  double r = 0.0;
  double r_tilde = 0.0;
  double scalar_shift = 0.0;
  double scalar_shift_expected = 0.0;
  bool computed = false;
  std::string error;
};

struct IdentityEntry {
  Suite suite;
  IdentityResidualReport report;
};

struct ManifoldReport {
  std::string name;
  std::size_t dim = 0;
  bool expected_kenmotsu = false;
  bool expected_einstein = false;
  bool expected_conformally_flat = false;
  std::vector<IdentityEntry> identities;
  Verdicts verdicts;

  bool expectations_met() const;
  const IdentityResidualReport* find(const std::string& identity) const;
};

struct RunReport {
  RunConfig config;
  std::vector<ManifoldReport> manifolds;
  int exit_status = 0;
};

/// Points drawn uniformly from the example's sample box shrunk by 10 * step.
/// The stream depends only on (seed, example name).
std::vector<Point> sample_points(const NamedExample& example, std::size_t count, std::uint64_t seed, double step);

/// Throws UsageError for unknown manifolds or an invalid configuration.
RunReport run(const RunConfig& config);

/// One manifold outside the catalog (manifold_names is ignored).
ManifoldReport run_example(const NamedExample& example, const RunConfig& config);

std::string to_json(const RunReport& report);
std::string to_text(const RunReport& report);

} // namespace kenmotsu
