#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kenmotsu/runner.hpp"
#include "json.hpp"

using namespace kenmotsu;

TEST_CASE("suite names round-trip and 'all' expands in dependency order") {
  for (Suite s : all_suites()) {
    const auto parsed = parse_suite(to_string(s));
    REQUIRE(parsed.size() == 1);
    CHECK(parsed.front() == s);
  }
  CHECK(parse_suite("all") == all_suites());
  CHECK_THROWS_AS(parse_suite("section5"), UsageError);
}

TEST_CASE("sampling is deterministic per (seed, name) and stays inside the shrunk box") {
  const auto ex = find_example("ne5").value();
  const auto a = sample_points(ex, 10, 42, 1e-4);
  const auto b = sample_points(ex, 10, 42, 1e-4);
  const auto c = sample_points(ex, 10, 43, 1e-4);
  CHECK(a == b);
  CHECK(a != c);
  // A prefix of a longer run is the shorter run.
  const auto longer = sample_points(ex, 15, 42, 1e-4);
  CHECK(std::equal(a.begin(), a.end(), longer.begin()));
  for (const auto& p : a) CHECK(inside(ex.sample_box, p, 1e-3));
  // Different manifolds get different streams for the same seed.
  const auto h5 = sample_points(find_example("h5").value(), 10, 42, 1e-4);
  CHECK(h5 != a);
}

TEST_CASE("h3 full run: expectations met, r = -6, r~ = 4") {
  RunConfig cfg;
  cfg.manifold_names = {"h3"};
  cfg.seed = 42;
  const auto rep = run(cfg);
  CHECK(rep.exit_status == 0);
  REQUIRE(rep.manifolds.size() == 1);
  const auto& m = rep.manifolds.front();
  CHECK(m.verdicts.kenmotsu);
  CHECK(m.verdicts.r == doctest::Approx(-6.0).epsilon(1e-6));
  CHECK(m.verdicts.r_tilde == doctest::Approx(4.0).epsilon(1e-6));
  CHECK(m.verdicts.scalar_shift == doctest::Approx(10.0).epsilon(1e-6));
  CHECK(m.verdicts.scalar_shift_expected == 10.0);
  CHECK(m.find("weyl_tachibana_relation")->status == Status::NotApplicable);
  for (const auto& e : m.identities) CHECK_MESSAGE(e.report.matches_expectation(), e.report.identity);
}

TEST_CASE("flat control: not Kenmotsu, yet every expectation is met") {
  RunConfig cfg;
  cfg.manifold_names = {"euclidean3"};
  cfg.suites = {Suite::Kenmotsu};
  const auto rep = run(cfg);
  CHECK(rep.exit_status == 0);
  const auto& m = rep.manifolds.front();
  CHECK_FALSE(m.verdicts.kenmotsu);
  const auto* k = m.find("kenmotsu");
  REQUIRE(k);
  CHECK(k->status == Status::Fail);
  CHECK(k->expectation == Expectation::Fails);
  CHECK(k->matches_expectation());
}

TEST_CASE("ne5 section4: the condition fails, the identity holds, exit 0") {
  RunConfig cfg;
  cfg.manifold_names = {"ne5"};
  cfg.suites = {Suite::Semisymmetry};
  cfg.seed = 7;
  const auto rep = run(cfg);
  CHECK(rep.exit_status == 0);
  const auto& m = rep.manifolds.front();
  CHECK(m.find("ricci_semisymmetry_identity")->passed);
  const auto* cond = m.find("ricci_semisymmetry_condition");
  CHECK(cond->status == Status::Fail);
  CHECK(cond->expectation == Expectation::Fails);
  CHECK(cond->points_above(cond->tolerance) == cfg.num_points);
  CHECK(m.find("axioms") == nullptr);
  CHECK(m.find("kenmotsu") == nullptr);
}

TEST_CASE("requested suites run in dependency order") {
  RunConfig cfg;
  cfg.manifold_names = {"h3"};
  cfg.suites = {Suite::WeylTachibana, Suite::Axioms, Suite::Connection};
  const auto rep = run(cfg);
  const auto& ids = rep.manifolds.front().identities;
  REQUIRE_FALSE(ids.empty());
  CHECK(ids.front().suite == Suite::Axioms);
  CHECK(ids.back().suite == Suite::WeylTachibana);
  for (std::size_t i = 1; i < ids.size(); ++i) CHECK(static_cast<int>(ids[i - 1].suite) <= static_cast<int>(ids[i].suite));
}

TEST_CASE("json output is byte-identical for identical runs and parses") {
  RunConfig cfg;
  cfg.seed = 11;
  cfg.num_points = 5;
  const std::string a = to_json(run(cfg));
  const std::string b = to_json(run(cfg));
  CHECK(a == b);
  const auto j = nlohmann::json::parse(a);
  CHECK(j.at("exit_status") == 0);
  REQUIRE(j.at("manifolds").size() == 4);
  const auto& first = j.at("manifolds").at(0);
  CHECK(first.at("name") == "euclidean3");
  for (const char* key : {"name", "dim", "expected", "suites", "verdicts"}) CHECK(first.contains(key));
  const auto& entry = first.at("suites").at(0);
  for (const char* key : {"suite", "identity", "status", "expectation", "matches_expectation", "max_residual",
                          "tolerance", "passed", "note", "details", "points"})
    CHECK_MESSAGE(entry.contains(key), key);
  CHECK(entry.at("points").size() == 5);
}

TEST_CASE("text output lists each identity") {
  RunConfig cfg;
  cfg.manifold_names = {"h3"};
  cfg.suites = {Suite::Irregularity};
  const std::string text = to_text(run(cfg));
  CHECK(text.find("irregularity") != std::string::npos);
  CHECK(text.find("[PASS]") != std::string::npos);
}

TEST_CASE("usage errors") {
  RunConfig cfg;
  cfg.manifold_names = {"nowhere"};
  CHECK_THROWS_AS(run(cfg), UsageError);
  cfg = {};
  cfg.num_points = 0;
  CHECK_THROWS_AS(run(cfg), UsageError);
  cfg = {};
  cfg.step = -1.0;
  CHECK_THROWS_AS(run(cfg), UsageError);
  cfg = {};
  cfg.tolerance_overrides = {{"not_an_identity", 1e-3}};
  CHECK_THROWS_AS(run(cfg), UsageError);
  cfg.tolerance_overrides = {{"einstein", 0.0}};
  CHECK_THROWS_AS(run(cfg), UsageError);
}

TEST_CASE("tolerance override flips a report and the exit status") {
  RunConfig cfg;
  cfg.manifold_names = {"h5"};
  cfg.suites = {Suite::Irregularity};
  cfg.tolerance_overrides = {{"irregularity", 1e-30}};
  const auto rep = run(cfg);
  const auto* r = rep.manifolds.front().find("irregularity");
  CHECK(r->tolerance == 1e-30);
  CHECK_FALSE(r->passed);
  CHECK(rep.exit_status == 1);
}

TEST_CASE("a structure failing the axioms skips everything downstream") {
  auto ex = find_example("h3").value();
  ex.name = "h3_broken";
  ex.structure.phi = [](const Point&) { return MultiTensor::identity(3); };
  RunConfig cfg;
  cfg.num_points = 4;
  const auto m = run_example(ex, cfg);
  CHECK_FALSE(m.verdicts.axioms_hold);
  const auto* axioms = m.find("almost_contact_axioms");
  REQUIRE(axioms);
  CHECK(axioms->status == Status::Fail);
  CHECK_FALSE(axioms->matches_expectation());
  std::size_t skipped = 0;
  for (const auto& e : m.identities) {
    if (e.report.identity == "almost_contact_axioms") continue;
    CHECK(e.report.status == Status::Skipped);
    CHECK(e.report.note.find("almost_contact_axioms") != std::string::npos);
    ++skipped;
  }
  CHECK(skipped == known_identities().size() - 1);
  CHECK_FALSE(m.expectations_met());
}
