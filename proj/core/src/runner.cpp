#include "kenmotsu/runner.hpp"

#include "kenmotsu/almost_contact.hpp"
#include "kenmotsu/curvature_conditions.hpp"
#include "kenmotsu/nsnm_connection.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <random>
#include <set>
#include <sstream>

namespace kenmotsu {

namespace {

using json = nlohmann::ordered_json;

constexpr double kAxiomTolerance = 1e-10;
constexpr double kTorsionTolerance = 1e-8;
constexpr double kFirstOrderTolerance = 1e-5;
constexpr double kFitTolerance = 1e-4;
constexpr double kEinsteinThreshold = 1e-4;

const std::vector<std::pair<Suite, std::string>>& suite_names() {
  static const std::vector<std::pair<Suite, std::string>> names{
      {Suite::Axioms, "axioms"},       {Suite::Kenmotsu, "kenmotsu"},   {Suite::CurvatureIdentities, "section2"},
      {Suite::Connection, "section3"},   {Suite::Irregularity, "theorem31"}, {Suite::Semisymmetry, "section4"},
      {Suite::WeylTachibana, "weyl_tachibana"},
  };
  return names;
}

// Which flags an identity's validity rests on.
enum class Requires { AlmostContact, KenmotsuGate, Kenmotsu, KenmotsuEinstein, ConformallyFlat, RelationDim5 };

Requires requirement(const std::string& id) {
  static const std::set<std::string> always{"almost_contact_axioms", "torsion", "nonmetricity", "weyl_traceless",
                                            "tachibana_metric"};
  static const std::set<std::string> einstein{"ricci_semisymmetry_condition", "einstein", "tilde_eta_einstein",
                                              "scalar_curvature", "tilde_scalar_constant"};
  if (always.count(id)) return Requires::AlmostContact;
  if (id == "kenmotsu") return Requires::KenmotsuGate;
  if (einstein.count(id)) return Requires::KenmotsuEinstein;
  if (id == "weyl_vanishing") return Requires::ConformallyFlat;
  if (id == "weyl_tachibana_relation") return Requires::RelationDim5;
  return Requires::Kenmotsu;
}

Expectation expectation_for(const std::string& id, const NamedExample& ex) {
  const bool k = ex.expected_kenmotsu;
  switch (requirement(id)) {
    case Requires::AlmostContact: return Expectation::Holds;
    case Requires::KenmotsuGate: return k ? Expectation::Holds : Expectation::Fails;
    case Requires::Kenmotsu: return k ? Expectation::Holds : Expectation::Informational;
    case Requires::KenmotsuEinstein:
      if (!k) return Expectation::Informational;
      return ex.expected_einstein ? Expectation::Holds : Expectation::Fails;
    case Requires::ConformallyFlat: return ex.expected_conformally_flat ? Expectation::Holds : Expectation::Fails;
    case Requires::RelationDim5:
      if (ex.manifold.dim() < 5) return Expectation::NotApplicable;
      return k && ex.expected_einstein ? Expectation::Holds : Expectation::Informational;
  }
  return Expectation::Informational;
}

struct Tolerances {
  const NamedExample& example;
  const std::map<std::string, double>& overrides;

  double operator()(const std::string& id) const {
    if (auto it = overrides.find(id); it != overrides.end()) return it->second;
    if (id == "almost_contact_axioms") return kAxiomTolerance;
    if (id == "torsion") return kTorsionTolerance;
    if (id == "tachibana_metric") return 1e-12;
    if (id == "kenmotsu" || id == "nonmetricity" || id == "nabla_tilde_xi" || id == "beta")
      return kFirstOrderTolerance;
    if (id == "einstein" || id == "tilde_eta_einstein" || id == "scalar_curvature" || id == "tilde_scalar_constant")
      return kFitTolerance;
    return example.curvature_tolerance;
  }
};

// Re-judges a report against an overridden tolerance.
void retolerance(IdentityResidualReport& r, double tol) {
  if (r.status == Status::Skipped || r.status == Status::NotApplicable) return;
  r.tolerance = tol;
  finalize(r);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

Verdicts compute_verdicts(const NsnmConnection& conn, std::span<const Point> points) {
  Verdicts v;
  const ChartManifold& M = conn.base();
  const double n = static_cast<double>(M.half_dim());
  double c = 0.0;
  try {
    v.einstein = true;
    for (const Point& p : points) {
      const TildeCurvatureBundle b = tilde_curvature(conn, p);
      const StructureAt s = evaluate_structure(M, conn.structure(), p);
      const EinsteinFit e = fit_eta_einstein(b.ricci, s.g, s.eta, false);
      const EinsteinFit t = fit_eta_einstein(b.s_tilde, s.g, s.eta, true);
      v.einstein_a += e.a;
      v.einstein_fit_residual = std::max(v.einstein_fit_residual, e.residual);
      v.tilde_fit_a += t.a;
      v.tilde_fit_b += t.b;
      v.tilde_fit_residual = std::max(v.tilde_fit_residual, t.residual);
      v.r += b.scalar;
      v.r_tilde += b.r_tilde_scalar;
      c += 1.0;
    }
    if (c > 0.0) {
      v.einstein_a /= c;
      v.tilde_fit_a /= c;
      v.tilde_fit_b /= c;
      v.r /= c;
      v.r_tilde /= c;
    }
    v.einstein = v.einstein_fit_residual < kEinsteinThreshold;
    v.scalar_shift = v.r_tilde - v.r;
    v.scalar_shift_expected = 2.0 * n * (2.0 * n + 3.0);
    v.computed = true;
  } catch (const Error& e) {
    v.computed = false;
    v.error = e.what();
  }
  return v;
}

ManifoldReport run_manifold(const NamedExample& ex, const RunConfig& config, const std::vector<Suite>& suites) {
  ManifoldReport out;
  out.name = ex.name;
  out.dim = ex.manifold.dim();
  out.expected_kenmotsu = ex.expected_kenmotsu;
  out.expected_einstein = ex.expected_einstein;
  out.expected_conformally_flat = ex.expected_conformally_flat;

  const DifferentiationConfig cfg{config.step, config.richardson};
  const std::vector<Point> points = sample_points(ex, config.num_points, config.seed, config.step);
  const Tolerances tol{ex, config.tolerance_overrides};
  auto wants = [&](Suite s) { return std::find(suites.begin(), suites.end(), s) != suites.end(); };

  auto add = [&](Suite s, IdentityResidualReport r) {
    r.expectation = expectation_for(r.identity, ex);
    out.identities.push_back({s, std::move(r)});
  };

  // Axioms gate everything downstream.
  IdentityResidualReport axioms = check_almost_contact(ex.manifold, ex.structure, points, tol("almost_contact_axioms"));
  out.verdicts.axioms_hold = axioms.passed;
  if (wants(Suite::Axioms)) add(Suite::Axioms, axioms);

  auto skip_rest = [&](const std::string& reason) {
    static const std::map<Suite, std::vector<std::string>> ids{
        {Suite::Kenmotsu, {"kenmotsu"}},
        {Suite::CurvatureIdentities, {"eta_of_curvature", "curvature_on_reeb", "curvature_from_reeb", "ricci_on_reeb"}},
        {Suite::Connection,
         {"torsion", "nonmetricity", "nabla_tilde_xi", "beta", "tilde_curvature_crosscheck", "tilde_ricci",
          "tilde_ricci_symmetry", "tilde_ricci_operator", "tilde_scalar"}},
        {Suite::Irregularity, {"irregularity"}},
        {Suite::Semisymmetry,
         {"ricci_semisymmetry_identity", "ricci_semisymmetry_condition", "einstein", "tilde_eta_einstein",
          "scalar_curvature", "tilde_scalar_constant"}},
        {Suite::WeylTachibana, {"weyl_traceless", "weyl_vanishing", "tachibana_metric", "weyl_tachibana_relation"}},
    };
    for (Suite s : suites) {
      if (s == Suite::Axioms) continue;
      for (const auto& id : ids.at(s)) add(s, skipped_report(id, reason));
    }
  };

  if (!axioms.passed) {
    skip_rest("skipped: prerequisite failed (almost_contact_axioms)");
    return out;
  }

  const bool needs_more = std::any_of(suites.begin(), suites.end(), [](Suite s) { return s != Suite::Axioms; });
  if (!needs_more) return out;

  IdentityResidualReport kenmotsu = check_kenmotsu(ex.manifold, ex.structure, points, cfg, tol("kenmotsu"));
  out.verdicts.kenmotsu = kenmotsu.passed;
  if (!out.verdicts.kenmotsu) kenmotsu.note = "non-Kenmotsu: downstream identities are reported for contrast";
  if (wants(Suite::Kenmotsu)) add(Suite::Kenmotsu, kenmotsu);

  const NsnmConnection conn = build_nsnm(ex.manifold, ex.structure, cfg, points);
  auto add_all = [&](Suite s, std::vector<IdentityResidualReport> reports) {
    for (auto& r : reports) {
      retolerance(r, tol(r.identity));
      add(s, std::move(r));
    }
  };

  if (wants(Suite::CurvatureIdentities))
    add_all(Suite::CurvatureIdentities,
            check_kenmotsu_curvature_identities(ex.manifold, ex.structure, points, cfg, ex.curvature_tolerance));
  if (wants(Suite::Connection)) {
    std::vector<IdentityResidualReport> r;
    r.push_back(check_torsion(conn, points, tol("torsion")));
    r.push_back(check_nonmetricity(conn, points, tol("nonmetricity")));
    r.push_back(check_nabla_tilde_xi(conn, points, tol("nabla_tilde_xi")));
    r.push_back(check_beta(conn, points, tol("beta")));
    for (auto& t : check_tilde_curvature(conn, points, ex.curvature_tolerance)) r.push_back(std::move(t));
    add_all(Suite::Connection, std::move(r));
  }
  if (wants(Suite::Irregularity)) add_all(Suite::Irregularity, {check_irregularity(conn, points, tol("irregularity"))});
  if (wants(Suite::Semisymmetry)) {
    std::vector<IdentityResidualReport> r;
    r.push_back(check_semisymmetry_identity(conn, points, tol("ricci_semisymmetry_identity")));
    for (auto& c : check_semisymmetry_condition(conn, points, ex.curvature_tolerance, kFitTolerance))
      r.push_back(std::move(c));
    add_all(Suite::Semisymmetry, std::move(r));
  }
  if (wants(Suite::WeylTachibana))
    add_all(Suite::WeylTachibana, check_weyl_tachibana(ex.manifold, points, cfg, ex.curvature_tolerance));

  out.verdicts = [&] {
    Verdicts v = compute_verdicts(conn, points);
    v.axioms_hold = true;
    v.kenmotsu = kenmotsu.passed;
    return v;
  }();
  return out;
}

std::string format_sci(double v, int precision = 3) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*e", precision, v);
  return buf;
}

std::string format_fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.8f", v);
  return buf;
}

} // namespace

std::string to_string(Suite suite) {
  for (const auto& [s, name] : suite_names())
    if (s == suite) return name;
  return "?";
}

const std::vector<Suite>& all_suites() {
  static const std::vector<Suite> suites = [] {
    std::vector<Suite> v;
    for (const auto& [s, name] : suite_names()) v.push_back(s);
    return v;
  }();
  return suites;
}

std::vector<Suite> parse_suite(const std::string& name) {
  if (name == "all") return all_suites();
  for (const auto& [s, n] : suite_names())
    if (n == name) return {s};
  throw UsageError("unknown suite '" + name + "'");
}

const std::vector<std::string>& known_identities() {
  static const std::vector<std::string> ids{
      "almost_contact_axioms", "kenmotsu", "eta_of_curvature", "curvature_on_reeb", "curvature_from_reeb",
      "ricci_on_reeb", "torsion", "nonmetricity", "nabla_tilde_xi", "beta", "tilde_curvature_crosscheck",
      "tilde_ricci", "tilde_ricci_symmetry", "tilde_ricci_operator", "tilde_scalar", "irregularity",
      "ricci_semisymmetry_identity", "ricci_semisymmetry_condition", "einstein", "tilde_eta_einstein",
      "scalar_curvature", "tilde_scalar_constant", "weyl_traceless", "weyl_vanishing", "tachibana_metric",
      "weyl_tachibana_relation"};
  return ids;
}

bool ManifoldReport::expectations_met() const {
  return std::all_of(identities.begin(), identities.end(),
                     [](const IdentityEntry& e) { return e.report.matches_expectation(); });
}

const IdentityResidualReport* ManifoldReport::find(const std::string& identity) const {
  for (const auto& e : identities)
    if (e.report.identity == identity) return &e.report;
  return nullptr;
}

std::vector<Point> sample_points(const NamedExample& example, std::size_t count, std::uint64_t seed, double step) {
  const Box box = shrink(example.sample_box, 10.0 * step);
  std::mt19937_64 engine(seed ^ fnv1a(example.name));
  std::vector<Point> points;
  points.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    Point p(box.size());
    for (std::size_t i = 0; i < box.size(); ++i) {
      // 53 random bits -> [0, 1); mt19937_64 output is fixed by the standard, unlike the distributions.
      const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
      p[i] = box[i].lo + u * (box[i].hi - box[i].lo);
    }
    points.push_back(std::move(p));
  }
  return points;
}

static void validate(const RunConfig& config) {
  if (config.num_points < 1) throw UsageError("--points must be at least 1");
  if (!(config.step > 0.0)) throw UsageError("--step must be positive");
  for (const auto& [id, value] : config.tolerance_overrides) {
    if (std::find(known_identities().begin(), known_identities().end(), id) == known_identities().end())
      throw UsageError("unknown identity '" + id + "' in tolerance override");
    if (!(value > 0.0)) throw UsageError("tolerance for '" + id + "' must be positive");
  }
}

// Dependency order regardless of the order requested.
static std::vector<Suite> resolve_suites(const RunConfig& config) {
  std::vector<Suite> suites;
  for (Suite s : all_suites())
    if (config.suites.empty() || std::find(config.suites.begin(), config.suites.end(), s) != config.suites.end())
      suites.push_back(s);
  return suites;
}

ManifoldReport run_example(const NamedExample& example, const RunConfig& config) {
  validate(config);
  return run_manifold(example, config, resolve_suites(config));
}

RunReport run(const RunConfig& config) {
  validate(config);

  std::vector<NamedExample> examples;
  if (config.manifold_names.empty()) {
    examples = catalog();
  } else {
    for (const auto& name : config.manifold_names) {
      auto ex = find_example(name);
      if (!ex) throw UsageError("unknown manifold '" + name + "' (see --list)");
      examples.push_back(std::move(*ex));
    }
  }

  const std::vector<Suite> suites = resolve_suites(config);

  RunReport report;
  report.config = config;
  std::vector<std::future<ManifoldReport>> pending;
  pending.reserve(examples.size());
  for (const auto& ex : examples)
    pending.push_back(std::async(std::launch::async, [&ex, &config, &suites] { return run_manifold(ex, config, suites); }));
  for (auto& f : pending) report.manifolds.push_back(f.get());

  const bool ok = std::all_of(report.manifolds.begin(), report.manifolds.end(),
                              [](const ManifoldReport& m) { return m.expectations_met(); });
  report.exit_status = ok ? 0 : 1;
  return report;
}

std::string to_json(const RunReport& report) {
  json root;
  const RunConfig& c = report.config;
  json cfg;
  cfg["manifolds"] = c.manifold_names;
  json suites = json::array();
  for (Suite s : c.suites.empty() ? all_suites() : c.suites) suites.push_back(to_string(s));
  cfg["suites"] = suites;
  cfg["points"] = c.num_points;
  cfg["seed"] = c.seed;
  cfg["step"] = c.step;
  cfg["richardson"] = c.richardson;
  json overrides = json::object();
  for (const auto& [id, v] : c.tolerance_overrides) overrides[id] = v;
  cfg["tolerance_overrides"] = overrides;
  root["config"] = cfg;

  json manifolds = json::array();
  for (const auto& m : report.manifolds) {
    json jm;
    jm["name"] = m.name;
    jm["dim"] = m.dim;
    jm["expected"] = {{"kenmotsu", m.expected_kenmotsu},
                      {"einstein", m.expected_einstein},
                      {"conformally_flat", m.expected_conformally_flat}};
    json ids = json::array();
    for (const auto& e : m.identities) {
      const auto& r = e.report;
      json jr;
      jr["suite"] = to_string(e.suite);
      jr["identity"] = r.identity;
      jr["status"] = to_string(r.status);
      jr["expectation"] = to_string(r.expectation);
      jr["matches_expectation"] = r.matches_expectation();
      jr["max_residual"] = r.max_residual;
      jr["tolerance"] = r.tolerance;
      jr["passed"] = r.passed;
      jr["note"] = r.note;
      json details = json::object();
      for (const auto& [k, v] : r.details) details[k] = v;
      jr["details"] = details;
      json pts = json::array();
      for (const auto& p : r.per_point) {
        json jp;
        jp["point"] = p.point;
        jp["residual"] = p.residual ? json(*p.residual) : json(nullptr);
        jp["signed_residual"] = p.signed_residual;
        if (!p.error.empty()) jp["error"] = p.error;
        pts.push_back(jp);
      }
      jr["points"] = pts;
      ids.push_back(jr);
    }
    jm["suites"] = ids;
    const Verdicts& v = m.verdicts;
    json jv;
    jv["axioms"] = v.axioms_hold;
    jv["kenmotsu"] = v.kenmotsu;
    if (v.computed) {
      jv["einstein"] = v.einstein;
      jv["einstein_fit"] = {{"a", v.einstein_a}, {"residual", v.einstein_fit_residual}};
      jv["eta_einstein_fit_tilde"] = {{"a", v.tilde_fit_a}, {"b", v.tilde_fit_b}, {"residual", v.tilde_fit_residual}};
      jv["r"] = v.r;
      jv["r_tilde"] = v.r_tilde;
      jv["r_tilde_minus_r"] = v.scalar_shift;
      jv["r_tilde_minus_r_expected"] = v.scalar_shift_expected;
    } else if (!v.error.empty()) {
      jv["error"] = v.error;
    }
    jv["expectations_met"] = m.expectations_met();
    jm["verdicts"] = jv;
    manifolds.push_back(jm);
  }
  root["manifolds"] = manifolds;
  root["exit_status"] = report.exit_status;
  return root.dump(2) + "\n";
}

std::string to_text(const RunReport& report) {
  std::ostringstream os;
  for (const auto& m : report.manifolds) {
    os << "== " << m.name << " (dim " << m.dim << ", expected kenmotsu=" << (m.expected_kenmotsu ? "yes" : "no")
       << ", einstein=" << (m.expected_einstein ? "yes" : "no") << ")\n";
    for (const auto& e : m.identities) {
      const auto& r = e.report;
      os << "  [" << to_string(r.status) << "] " << to_string(e.suite) << "/" << r.identity;
      if (r.status == Status::Pass || r.status == Status::Fail) {
        os << "  max=" << format_sci(r.max_residual) << "  tol=" << format_sci(r.tolerance, 1);
      }
      os << "  expect=" << to_string(r.expectation);
      if (!r.matches_expectation()) os << "  <-- MISMATCH";
      if (!r.note.empty()) os << "  (" << r.note << ")";
      os << "\n";
      if (const std::size_t aborted = r.aborted_points(); aborted > 0 && r.status != Status::Skipped)
        os << "        " << aborted << " point(s) aborted; first: " << [&] {
          for (const auto& p : r.per_point)
            if (!p.error.empty()) return p.error;
          return std::string();
        }() << "\n";
    }
    const Verdicts& v = m.verdicts;
    os << "  verdicts: axioms=" << (v.axioms_hold ? "yes" : "no") << " kenmotsu=" << (v.kenmotsu ? "yes" : "no");
    if (v.computed) {
      os << " einstein=" << (v.einstein ? "yes" : "no") << "\n"
         << "    S ~ a g:               a=" << format_fixed(v.einstein_a)
         << "  fit residual=" << format_sci(v.einstein_fit_residual) << "\n"
         << "    S~ ~ a g + b eta.eta:  a=" << format_fixed(v.tilde_fit_a) << "  b=" << format_fixed(v.tilde_fit_b)
         << "  fit residual=" << format_sci(v.tilde_fit_residual) << "\n"
         << "    r=" << format_fixed(v.r) << "  r~=" << format_fixed(v.r_tilde) << "  r~-r=" << format_fixed(v.scalar_shift)
         << " (expected " << format_fixed(v.scalar_shift_expected) << ")\n";
    } else {
      os << "\n";
    }
    os << "  expectations " << (m.expectations_met() ? "met" : "NOT met") << "\n";
  }
  os << "exit status " << report.exit_status << "\n";
  return os.str();
}

} // namespace kenmotsu
