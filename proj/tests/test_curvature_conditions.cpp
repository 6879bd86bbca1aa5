#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kenmotsu/curvature_conditions.hpp"
#include "kenmotsu/errors.hpp"
#include "kenmotsu/examples.hpp"
#include "oracles.hpp"

#include <random>

using namespace kenmotsu;

namespace {

NamedExample example(const std::string& name) { return find_example(name).value(); }

std::vector<Point> sample(const NamedExample& ex, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Point> pts;
  for (std::size_t k = 0; k < count; ++k) {
    Point p(ex.sample_box.size());
    for (std::size_t i = 0; i < p.size(); ++i)
      p[i] = std::uniform_real_distribution<double>(ex.sample_box[i].lo, ex.sample_box[i].hi)(rng);
    pts.push_back(p);
  }
  return pts;
}

const IdentityResidualReport& by_name(const std::vector<IdentityResidualReport>& reports, const std::string& id) {
  for (const auto& r : reports)
    if (r.identity == id) return r;
  throw std::runtime_error("missing report " + id);
}

const Variance kCurv{Slot::Up, Slot::Down, Slot::Down, Slot::Down};

MultiTensor random_symmetric(std::mt19937_64& rng, std::size_t d) {
  MultiTensor a = oracle::random_tensor(rng, d, covariant(2));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < i; ++j) a(j, i) = a(i, j);
  return a;
}

// Kulkarni-Nomizu product as a (1,3) curvature tensor:
// R_{lkij} = A_jk B_il + B_jk A_il - A_ik B_jl - B_ik A_jl, then raise l.
MultiTensor kulkarni_nomizu(const MultiTensor& A, const MultiTensor& B, const MetricPair& g) {
  const std::size_t d = A.dim();
  MultiTensor R4(d, covariant(4));
  for (std::size_t l = 0; l < d; ++l)
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          R4(l, k, i, j) = A(j, k) * B(i, l) + B(j, k) * A(i, l) - A(i, k) * B(j, l) - B(i, k) * A(j, l);
  return raise(R4, 0, g);
}

// Direct loop for the derivation action on a (0,2) target, written out independently.
MultiTensor derivation_oracle(const MultiTensor& B, const MultiTensor& T) {
  const std::size_t d = T.dim();
  MultiTensor out(d, covariant(4));
  for (std::size_t z1 = 0; z1 < d; ++z1)
    for (std::size_t z2 = 0; z2 < d; ++z2)
      for (std::size_t x = 0; x < d; ++x)
        for (std::size_t y = 0; y < d; ++y) {
          double s = 0.0;
          for (std::size_t l = 0; l < d; ++l) s += B(l, z1, x, y) * T(l, z2) + B(l, z2, x, y) * T(z1, l);
          out(z1, z2, x, y) = -s;
        }
  return out;
}

} // namespace

TEST_CASE("derivation_action matches a direct loop on random inputs") {
  std::mt19937_64 rng(1);
  for (std::size_t d : {3u, 5u}) {
    const MultiTensor B = oracle::random_tensor(rng, d, kCurv);
    const MultiTensor T = oracle::random_tensor(rng, d, covariant(2));
    const MultiTensor D = derivation_action(B, T);
    CHECK(D.variance() == covariant(4));
    CHECK(max_abs(D - derivation_oracle(B, T)) < 1e-12);
  }
}

TEST_CASE("derivation_action rejects unsupported ranks and slot types") {
  std::mt19937_64 rng(2);
  const MultiTensor B = oracle::random_tensor(rng, 3, kCurv);
  CHECK_THROWS_AS(derivation_action(B, MultiTensor(3, covariant(1))), RankError);
  CHECK_THROWS_AS(derivation_action(B, MultiTensor(3, covariant(3))), RankError);
  CHECK_THROWS_AS(derivation_action(B, MultiTensor(3, {Slot::Up, Slot::Down})), Error);
  CHECK_THROWS_AS(derivation_action(MultiTensor(3, covariant(4)), MultiTensor(3, covariant(2))), Error);
}

TEST_CASE("property: derivation_action is linear in both arguments and keeps trailing antisymmetry") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t d = trial % 2 ? 5 : 3;
    const std::size_t rank = trial % 3 ? 2 : 4;
    MultiTensor B = oracle::random_tensor(rng, d, kCurv);
    const std::vector<std::size_t> swap_last{0, 1, 3, 2};
    B = B - permute(B, swap_last);  // antisymmetric in x, y
    const MultiTensor B2 = oracle::random_tensor(rng, d, kCurv);
    const MultiTensor T = oracle::random_tensor(rng, d, covariant(rank));
    const MultiTensor U = oracle::random_tensor(rng, d, covariant(rank));

    CHECK(max_abs(derivation_action(B, T + 2.0 * U) - derivation_action(B, T) - 2.0 * derivation_action(B, U)) < 1e-10);
    CHECK(max_abs(derivation_action(B + B2, T) - derivation_action(B, T) - derivation_action(B2, T)) < 1e-10);

    const MultiTensor D = derivation_action(B, T);
    std::vector<std::size_t> swap_xy(rank + 2);
    for (std::size_t s = 0; s < rank + 2; ++s) swap_xy[s] = s;
    std::swap(swap_xy[rank], swap_xy[rank + 1]);
    CHECK(max_abs(D + permute(D, swap_xy)) < 1e-10);
  }
}

TEST_CASE("curvature annihilates the metric; h3 is Ricci semi-symmetric, ne5 is not") {
  for (const auto& ex : catalog()) {
    for (const auto& p : sample(ex, 3, 4)) {
      const MetricPair g = ex.manifold.metric_pair(p);
      const MultiTensor R = riemann(ex.manifold, p, {});
      CHECK(max_abs(derivation_action(R, g.lower())) < 1e-6);
      const double rs = max_abs(derivation_action(R, ricci_from_riemann(R)));
      if (ex.name == "ne5") CHECK(rs > 0.01);
      else CHECK(rs < 1e-5);
    }
  }
}

TEST_CASE("Tachibana tensor: Q(g,g) = 0, Q(g,R) = 0 on space forms, Q(g,S) != 0 on ne5") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const MetricPair g = MetricPair::from_lower(oracle::random_metric(rng, 5));
    CHECK(max_abs(tachibana(g, g.lower())) < 1e-12);
  }
  for (const char* name : {"h3", "h5"}) {
    const auto ex = example(name);
    const Point p = sample(ex, 1, 6).front();
    const MetricPair g = ex.manifold.metric_pair(p);
    CHECK(max_abs(tachibana(g, lower(riemann(ex.manifold, p, {}), 0, g))) < 1e-5);
  }
  const auto ne5 = example("ne5");
  const Point p = sample(ne5, 1, 7).front();
  CHECK(max_abs(tachibana(ne5.manifold.metric_pair(p), ricci(ne5.manifold, p, {}))) > 0.01);
}

TEST_CASE("metric_wedge has curvature-tensor shape and equals the -1 space form up to sign") {
  const std::vector<double> w{2.0, 3.0, 0.5};
  const MetricPair g = MetricPair::from_lower(oracle::diag_metric(w));
  CHECK(max_abs(metric_wedge(g) + oracle::space_form_riemann(w, -1.0)) < 1e-14);
}

TEST_CASE("Weyl tensor vanishes on h3 and h5 and not on ne5") {
  for (const auto& ex : catalog()) {
    for (const auto& p : sample(ex, 3, 8)) {
      const double c = max_abs(weyl_tensor(ex.manifold, p, {}));
      if (ex.expected_conformally_flat) CHECK_MESSAGE(c < 1e-5, ex.name);
      else CHECK_MESSAGE(c > 0.01, ex.name);
    }
  }
}

TEST_CASE("property: Weyl of a random algebraic curvature tensor is traceless, and of h (.) g it vanishes") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t d = trial % 2 ? 5 : 7;
    const MetricPair g = MetricPair::from_lower(oracle::random_metric(rng, d));
    const MultiTensor A = random_symmetric(rng, d), B = random_symmetric(rng, d);
    const MultiTensor R = kulkarni_nomizu(A, B, g) + kulkarni_nomizu(B, B, g);
    const MultiTensor C = weyl_from_riemann(R, g);
    CHECK(max_trace(C, g) < 1e-9);
    CHECK(max_trace(R, g) > 1e-3);
    CHECK(max_abs(weyl_from_riemann(kulkarni_nomizu(A, g.lower(), g), g)) < 1e-9);
  }
}

TEST_CASE("Einstein fits") {
  const std::vector<double> w{2.0, 2.0, 1.0};
  const MetricPair g = MetricPair::from_lower(oracle::diag_metric(w));
  MultiTensor eta(3, covariant(1));
  eta(2) = 1.0;
  MultiTensor T = 2.0 * g.lower();
  T(2, 2) -= 2.0;
  const auto fit = fit_eta_einstein(T, g, eta);
  CHECK(fit.a == doctest::Approx(2.0));
  CHECK(fit.b == doctest::Approx(-2.0));
  CHECK(fit.residual < 1e-12);
  const auto pure = fit_eta_einstein(T, g, eta, false);
  CHECK(pure.b == 0.0);
  CHECK(pure.residual > 0.5);
  CHECK_THROWS_AS(fit_eta_einstein(eta, g, eta), Error);
}

TEST_CASE("property: fit recovers a, b from a g + b eta (x) eta under a random metric") {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = trial % 2 ? 3 : 5;
    const MetricPair g = MetricPair::from_lower(oracle::random_metric(rng, d));
    const MultiTensor eta = oracle::random_tensor(rng, d, covariant(1));
    const double a = u(rng), b = u(rng);
    const MultiTensor T = a * g.lower() + b * outer(eta, eta);
    const auto fit = fit_eta_einstein(T, g, eta);
    CHECK(fit.a == doctest::Approx(a).epsilon(1e-9));
    CHECK(fit.b == doctest::Approx(b).epsilon(1e-9));
    CHECK(fit.residual < 1e-9);
  }
}

TEST_CASE("property: semi-symmetry defect vanishes exactly for S = c g") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const MetricPair g = MetricPair::from_lower(oracle::random_metric(rng, 5));
    CHECK(max_abs(semisymmetry_defect(-4.0 * g.lower(), g)) < 1e-10);
    CHECK(max_abs(semisymmetry_defect(random_symmetric(rng, 5), g)) > 1e-3);
  }
}

TEST_CASE("semi-symmetry identity holds on every Kenmotsu example") {
  for (const auto& ex : catalog()) {
    if (!ex.expected_kenmotsu) continue;
    const auto conn = build_nsnm(ex.manifold, ex.structure, {}, sample(ex, 2, 0));
    const auto rep = check_semisymmetry_identity(conn, sample(ex, 20, 12), ex.curvature_tolerance);
    CHECK_MESSAGE(rep.passed, ex.name);
  }
}

TEST_CASE("semi-symmetry condition and Einstein chain: space forms pass, ne5 fails") {
  for (const auto& ex : catalog()) {
    if (!ex.expected_kenmotsu) continue;
    const auto conn = build_nsnm(ex.manifold, ex.structure, {}, sample(ex, 2, 0));
    const auto reps = check_semisymmetry_condition(conn, sample(ex, 20, 13), ex.curvature_tolerance);
    REQUIRE(reps.size() == 5);
    const double n = static_cast<double>(ex.manifold.half_dim());
    for (const auto& r : reps) CHECK_MESSAGE(r.passed == ex.expected_einstein, ex.name << " " << r.identity);
    if (ex.expected_einstein) {
      CHECK(*by_name(reps, "einstein").detail("a_mean") == doctest::Approx(-2.0 * n).epsilon(1e-6));
      CHECK(*by_name(reps, "tilde_eta_einstein").detail("a_mean") == doctest::Approx(2.0).epsilon(1e-6));
      CHECK(*by_name(reps, "tilde_eta_einstein").detail("b_mean") == doctest::Approx(-2.0).epsilon(1e-6));
      CHECK(*by_name(reps, "scalar_curvature").detail("r_mean") ==
            doctest::Approx(-2.0 * n * (2.0 * n + 1.0)).epsilon(1e-6));
      CHECK(*by_name(reps, "tilde_scalar_constant").detail("r_tilde_mean") == doctest::Approx(4.0 * n).epsilon(1e-6));
    } else {
      // Far from tolerance, not marginal.
      CHECK(by_name(reps, "ricci_semisymmetry_condition").max_residual > 0.1);
      CHECK(by_name(reps, "einstein").max_residual > 0.1);
    }
  }
}

TEST_CASE("Weyl/Tachibana reports") {
  const auto h3 = example("h3");
  auto reps = check_weyl_tachibana(h3.manifold, sample(h3, 5, 14), {}, h3.curvature_tolerance);
  REQUIRE(reps.size() == 4);
  CHECK(by_name(reps, "weyl_traceless").passed);
  CHECK(by_name(reps, "weyl_vanishing").passed);
  CHECK(by_name(reps, "tachibana_metric").passed);
  CHECK(by_name(reps, "tachibana_metric").tolerance == 1e-12);
  CHECK(by_name(reps, "weyl_tachibana_relation").status == Status::NotApplicable);

  const auto h5 = example("h5");
  reps = check_weyl_tachibana(h5.manifold, sample(h5, 5, 15), {}, h5.curvature_tolerance);
  const auto& rel = by_name(reps, "weyl_tachibana_relation");
  CHECK(rel.passed);
  CHECK(*rel.detail("degenerate") == 1.0);
  CHECK_FALSE(rel.note.empty());

  const auto ne5 = example("ne5");
  reps = check_weyl_tachibana(ne5.manifold, sample(ne5, 5, 16), {}, ne5.curvature_tolerance);
  CHECK(by_name(reps, "weyl_traceless").passed);
  CHECK_FALSE(by_name(reps, "weyl_vanishing").passed);
  const auto& nrel = by_name(reps, "weyl_tachibana_relation");
  CHECK_FALSE(nrel.passed);
  CHECK(*nrel.detail("degenerate") == 0.0);
  CHECK(*nrel.detail("Q_g_R_max") > 0.01);
}
