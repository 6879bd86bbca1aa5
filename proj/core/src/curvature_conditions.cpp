#include "kenmotsu/curvature_conditions.hpp"

#include "kenmotsu/almost_contact.hpp"
#include "kenmotsu/errors.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>

namespace kenmotsu {

namespace {

double delta(std::size_t a, std::size_t b) { return a == b ? 1.0 : 0.0; }

const Variance kCurvatureVariance{Slot::Up, Slot::Down, Slot::Down, Slot::Down};

void require_curvature(const MultiTensor& t, const char* op) {
  if (t.variance() != kCurvatureVariance)
    throw SlotError(std::string(op) + ": expected a (1,3) tensor, got " + to_string(t.variance()));
}

} // namespace

MultiTensor derivation_action(const MultiTensor& B, const MultiTensor& target) {
  require_curvature(B, "derivation_action");
  const std::size_t k = target.rank();
  if (k != 2 && k != 4) throw RankError("derivation_action: target rank must be 2 or 4, got " + std::to_string(k));
  if (target.variance() != covariant(k))
    throw SlotError("derivation_action: target must be covariant, got " + to_string(target.variance()));
  const std::size_t d = B.dim();
  if (target.dim() != d) throw Error("derivation_action: dimension mismatch");

  MultiTensor out(d, covariant(k + 2));
  std::array<std::size_t, MultiTensor::kMaxRank> src{};
  for_each_index(d, k + 2, [&](std::span<const std::size_t> idx) {
    const std::size_t x = idx[k];
    const std::size_t y = idx[k + 1];
    double sum = 0.0;
    for (std::size_t s = 0; s < k; ++s) {
      std::copy(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k), src.begin());
      for (std::size_t l = 0; l < d; ++l) {
        const double b = B(l, idx[s], x, y);
        if (b == 0.0) continue;
        src[s] = l;
        sum += b * target.at(std::span<const std::size_t>(src.data(), k));
      }
    }
    out.at(idx) = -sum;
  });
  return out;
}

MultiTensor metric_wedge(const MetricPair& g) {
  const std::size_t d = g.dim();
  const MultiTensor& G = g.lower();
  MultiTensor out(d, kCurvatureVariance);
  for (std::size_t l = 0; l < d; ++l)
    for (std::size_t z = 0; z < d; ++z)
      for (std::size_t x = 0; x < d; ++x)
        for (std::size_t y = 0; y < d; ++y) out(l, z, x, y) = G(y, z) * delta(l, x) - G(x, z) * delta(l, y);
  return out;
}

MultiTensor tachibana(const MetricPair& g, const MultiTensor& target) {
  return derivation_action(metric_wedge(g), target);
}

MultiTensor weyl_from_riemann(const MultiTensor& R, const MetricPair& g) {
  require_curvature(R, "weyl_from_riemann");
  const std::size_t d = R.dim();
  const double m = static_cast<double>(d);
  const MultiTensor S = ricci_from_riemann(R);
  const MultiTensor& G = g.lower();
  const MultiTensor Sup = raise(S, 1, g);  // [i, l] = g^{la} S_ia = (Q d_i)^l
  const double r = scalar_from_ricci(S, g);
  const double c1 = 1.0 / (m - 2.0);
  const double c2 = r / ((m - 1.0) * (m - 2.0));

  MultiTensor C = R;
  for (std::size_t l = 0; l < d; ++l)
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
          const double ricci_part =
              S(j, k) * delta(l, i) - S(i, k) * delta(l, j) + G(j, k) * Sup(i, l) - G(i, k) * Sup(j, l);
          const double metric_part = G(j, k) * delta(l, i) - G(i, k) * delta(l, j);
          C(l, k, i, j) += -c1 * ricci_part + c2 * metric_part;
        }
  return C;
}

MultiTensor weyl_tensor(const ChartManifold& manifold, const Point& p, const DifferentiationConfig& cfg) {
  return weyl_from_riemann(riemann(manifold, p, cfg), manifold.metric_pair(p));
}

double max_trace(const MultiTensor& curvature, const MetricPair& g) {
  require_curvature(curvature, "max_trace");
  const MultiTensor lowered = lower(curvature, 0, g);
  double m = 0.0;
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = a + 1; b < 4; ++b) m = std::max(m, max_abs(contract(raise(lowered, a, g), a, b)));
  return m;
}

EinsteinFit fit_eta_einstein(const MultiTensor& tensor, const MetricPair& g, const MultiTensor& eta, bool with_eta) {
  if (tensor.variance() != covariant(2)) throw SlotError("fit_eta_einstein: expected a (0,2) tensor");
  const auto n = static_cast<Eigen::Index>(g.dim());
  Eigen::MatrixXd G(n, n), T(n, n);
  Eigen::VectorXd e(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    e(i) = eta(std::size_t(i));
    for (Eigen::Index j = 0; j < n; ++j) {
      G(i, j) = g.lower()(std::size_t(i), std::size_t(j));
      T(i, j) = tensor(std::size_t(i), std::size_t(j));
    }
  }
  // Orthonormal frame: g = L L^T, so L^{-1} g L^{-T} = I.
  const Eigen::LLT<Eigen::MatrixXd> llt(G);
  if (llt.info() != Eigen::Success) throw DegenerateMetricError("fit_eta_einstein: metric not positive definite");
  const Eigen::MatrixXd L = llt.matrixL();
  const Eigen::MatrixXd Linv = L.triangularView<Eigen::Lower>().solve(Eigen::MatrixXd::Identity(n, n));
  const Eigen::MatrixXd Tn = Linv * T * Linv.transpose();
  const Eigen::VectorXd en = Linv * e;
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd E = en * en.transpose();

  EinsteinFit fit;
  if (!with_eta) {
    fit.a = Tn.trace() / static_cast<double>(n);
  } else {
    Eigen::Matrix2d normal;
    normal << I.cwiseProduct(I).sum(), I.cwiseProduct(E).sum(), E.cwiseProduct(I).sum(), E.cwiseProduct(E).sum();
    const Eigen::Vector2d rhs(I.cwiseProduct(Tn).sum(), E.cwiseProduct(Tn).sum());
    const Eigen::Vector2d ab = normal.fullPivLu().solve(rhs);
    fit.a = ab(0);
    fit.b = ab(1);
  }
  fit.residual = (Tn - fit.a * I - fit.b * E).cwiseAbs().maxCoeff();
  return fit;
}

MultiTensor semisymmetry_defect(const MultiTensor& S, const MetricPair& g) {
  const std::size_t d = g.dim();
  const MultiTensor& G = g.lower();
  MultiTensor out(d, covariant(4));
  for (std::size_t z = 0; z < d; ++z)
    for (std::size_t u = 0; u < d; ++u)
      for (std::size_t x = 0; x < d; ++x)
        for (std::size_t y = 0; y < d; ++y)
          out(z, u, x, y) = -G(y, z) * S(x, u) + G(x, z) * S(y, u) - G(y, u) * S(z, x) + G(x, u) * S(z, y);
  return out;
}

IdentityResidualReport check_semisymmetry_identity(const NsnmConnection& connection,
                                                   std::span<const Point> points, double tolerance) {
  return evaluate_identity("ricci_semisymmetry_identity", points, tolerance, [&](const Point& p) {
    const TildeCurvatureBundle b = tilde_curvature(connection, p);
    const MetricPair g = connection.base().metric_pair(p);
    const MultiTensor lhs = derivation_action(b.r_tilde_direct, b.s_tilde);
    const MultiTensor rhs = derivation_action(b.riemann, b.ricci) + semisymmetry_defect(b.ricci, g);
    return residual_of(lhs - rhs);
  });
}

std::vector<IdentityResidualReport> check_semisymmetry_condition(const NsnmConnection& connection,
                                                                 std::span<const Point> points,
                                                                 double tolerance, double fit_tolerance) {
  const ChartManifold& M = connection.base();
  const double n = static_cast<double>(M.half_dim());
  struct Sums {
    double einstein_a = 0.0, einstein_fit = 0.0, tilde_a = 0.0, tilde_b = 0.0, tilde_fit = 0.0, r = 0.0, r_tilde = 0.0;
    std::size_t count = 0;
  } sums;

  auto condition = evaluate_identities({"ricci_semisymmetry_condition"}, points, tolerance, [&](const Point& p) {
    const MetricPair g = M.metric_pair(p);
    return std::vector<Residual>{residual_of(semisymmetry_defect(ricci(M, p, connection.config()), g))};
  });

  auto fits = evaluate_identities(
      {"einstein", "tilde_eta_einstein", "scalar_curvature", "tilde_scalar_constant"}, points, fit_tolerance,
      [&](const Point& p) {
        const TildeCurvatureBundle b = tilde_curvature(connection, p);
        const StructureAt s = evaluate_structure(M, connection.structure(), p);
        const EinsteinFit e = fit_eta_einstein(b.ricci, s.g, s.eta, false);
        const EinsteinFit t = fit_eta_einstein(b.s_tilde, s.g, s.eta, true);
        sums.einstein_a += e.a;
        sums.einstein_fit = std::max(sums.einstein_fit, e.residual);
        sums.tilde_a += t.a;
        sums.tilde_b += t.b;
        sums.tilde_fit = std::max(sums.tilde_fit, t.residual);
        sums.r += b.scalar;
        sums.r_tilde += b.r_tilde_scalar;
        ++sums.count;
        const double da = e.a + 2.0 * n;
        const double dr = b.scalar + 2.0 * n * (2.0 * n + 1.0);
        const double drt = b.r_tilde_scalar - 4.0 * n;
        return std::vector<Residual>{
            worst({e.residual, e.residual}, {std::abs(da), da}),
            worst(worst({t.residual, t.residual}, {std::abs(t.a - 2.0), t.a - 2.0}), {std::abs(t.b + 2.0), t.b + 2.0}),
            {std::abs(dr), dr},
            {std::abs(drt), drt},
        };
      });

  if (sums.count > 0) {
    const double c = static_cast<double>(sums.count);
    fits[0].set_detail("a_mean", sums.einstein_a / c);
    fits[0].set_detail("a_expected", -2.0 * n);
    fits[0].set_detail("fit_residual_max", sums.einstein_fit);
    fits[1].set_detail("a_mean", sums.tilde_a / c);
    fits[1].set_detail("b_mean", sums.tilde_b / c);
    fits[1].set_detail("fit_residual_max", sums.tilde_fit);
    fits[2].set_detail("r_mean", sums.r / c);
    fits[2].set_detail("r_expected", -2.0 * n * (2.0 * n + 1.0));
    fits[3].set_detail("r_tilde_mean", sums.r_tilde / c);
    fits[3].set_detail("r_tilde_expected", 4.0 * n);
  }

  std::vector<IdentityResidualReport> out;
  out.push_back(std::move(condition.front()));
  for (auto& f : fits) out.push_back(std::move(f));
  return out;
}

std::vector<IdentityResidualReport> check_weyl_tachibana(const ChartManifold& manifold,
                                                         std::span<const Point> points,
                                                         const DifferentiationConfig& cfg, double tolerance) {
  std::vector<IdentityResidualReport> out;
  auto weyl = evaluate_identities({"weyl_traceless", "weyl_vanishing"}, points, tolerance, [&](const Point& p) {
    const MetricPair g = manifold.metric_pair(p);
    const MultiTensor C = weyl_from_riemann(riemann(manifold, p, cfg), g);
    const double tr = max_trace(C, g);
    return std::vector<Residual>{{tr, tr}, residual_of(C)};
  });
  for (auto& r : weyl) out.push_back(std::move(r));

  out.push_back(evaluate_identity("tachibana_metric", points, 1e-12, [&](const Point& p) {
    const MetricPair g = manifold.metric_pair(p);
    return residual_of(tachibana(g, g.lower()));
  }));

  if (manifold.dim() < 5) {
    out.push_back(not_applicable_report("weyl_tachibana_relation",
                                        "requires dimension >= 5; chart has dimension " +
                                            std::to_string(manifold.dim())));
    return out;
  }

  const double m = static_cast<double>(manifold.dim());
  const double n = static_cast<double>(manifold.half_dim());
  double cr_rc = 0.0, q_r = 0.0, q_c = 0.0, total_dim = 0.0, half_dim = 0.0;
  auto relation = evaluate_identity("weyl_tachibana_relation", points, tolerance, [&](const Point& p) {
    const MetricPair g = manifold.metric_pair(p);
    const MultiTensor R = riemann(manifold, p, cfg);
    const MultiTensor C = weyl_from_riemann(R, g);
    const MultiTensor R04 = lower(R, 0, g);
    const MultiTensor C04 = lower(C, 0, g);
    const double r = scalar_from_ricci(ricci_from_riemann(R), g);

    const MultiTensor commutator = derivation_action(C, R04) - derivation_action(R, C04);  // C.R - R.C
    const MultiTensor qgr = tachibana(g, R04);
    const MultiTensor qgc = tachibana(g, C04);
    cr_rc = std::max(cr_rc, max_abs(commutator));
    q_r = std::max(q_r, max_abs(qgr));
    q_c = std::max(q_c, max_abs(qgc));
    // R.C - C.R = k Q(g,R) for both readings of the dimension symbol.
    total_dim = std::max(total_dim, max_abs((-1.0 * commutator) - (r / (m * (m - 1.0))) * qgr));
    half_dim = std::max(half_dim, max_abs((-1.0 * commutator) - (r / (n * (n - 1.0))) * qgr));
    return worst(residual_of(commutator - qgr), residual_of(qgr - qgc));
  });
  relation.set_detail("CR_minus_RC_max", cr_rc);
  relation.set_detail("Q_g_R_max", q_r);
  relation.set_detail("Q_g_C_max", q_c);
  relation.set_detail("normalized_by_total_dimension_residual_max", total_dim);
  relation.set_detail("normalized_by_half_dimension_residual_max", half_dim);
  const bool degenerate = cr_rc < tolerance && q_r < tolerance && q_c < tolerance;
  relation.set_detail("degenerate", degenerate ? 1.0 : 0.0);
  if (degenerate) relation.note = "degenerate regime: every term vanishes individually";
  out.push_back(std::move(relation));
  return out;
}

} // namespace kenmotsu
