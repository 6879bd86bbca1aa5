#include "kenmotsu/nsnm_connection.hpp"

#include "kenmotsu/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace kenmotsu {

namespace {

double delta(std::size_t a, std::size_t b) { return a == b ? 1.0 : 0.0; }

// Q~^a_b stored [a, b] from a (0,2) tensor S_bc: raise the second slot, then swap.
MultiTensor ricci_operator(const MultiTensor& S, const MetricPair& g) {
  const std::array<std::size_t, 2> swap{1, 0};
  return permute(raise(S, 1, g), swap);
}

} // namespace

NsnmConnection::NsnmConnection(ChartManifold base, AlmostContactStructure structure, DifferentiationConfig cfg)
    : base_(std::move(base)), structure_(std::move(structure)), cfg_(cfg) {}

ConnectionCoefficients NsnmConnection::coefficients(const Point& p) const {
  const std::size_t d = base_.dim();
  ConnectionCoefficients c = christoffel(base_, p, cfg_);
  const MultiTensor g = base_.metric(p);
  const MultiTensor xi = structure_.xi(p);
  const MultiTensor eta = structure_.eta(p);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        c.gamma(k, i, j) -= eta(j) * delta(k, i) + g(i, j) * xi(k);
  c.is_levi_civita = false;
  return c;
}

ConnectionField NsnmConnection::field() const {
  return [self = *this](const Point& p) { return self.coefficients(p); };
}

ConnectionField NsnmConnection::levi_civita_field() const { return levi_civita(base_, cfg_); }

NsnmConnection build_nsnm(const ChartManifold& manifold, const AlmostContactStructure& structure,
                          const DifferentiationConfig& cfg, std::span<const Point> validation_points) {
  const auto axioms = check_almost_contact(manifold, structure, validation_points);
  if (!axioms.passed) {
    throw StructureError("almost contact axioms fail (max residual " + std::to_string(axioms.max_residual) +
                         "); the connection is undefined for this structure");
  }
  return NsnmConnection(manifold, structure, cfg);
}

MultiTensor tilde_riemann_formula(const MultiTensor& R, const StructureAt& s) {
  const std::size_t d = R.dim();
  const MultiTensor& g = s.g.lower();
  MultiTensor out = R;
  for (std::size_t l = 0; l < d; ++l)
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          out(l, k, i, j) += g(j, k) * delta(l, i) - g(i, k) * delta(l, j) +
                             2.0 * (g(j, k) * s.eta(i) - g(i, k) * s.eta(j)) * s.xi(l);
  return out;
}

TildeCurvatureBundle tilde_curvature(const NsnmConnection& connection, const Point& p) {
  const ChartManifold& M = connection.base();
  const DifferentiationConfig& cfg = connection.config();
  const std::size_t d = M.dim();
  const double n = static_cast<double>(M.half_dim());
  const StructureAt s = evaluate_structure(M, connection.structure(), p);
  const MultiTensor& g = s.g.lower();

  TildeCurvatureBundle b;
  b.riemann = riemann_of_connection(M, connection.levi_civita_field(), p, cfg);
  b.ricci = ricci_from_riemann(b.riemann);
  b.ricci_operator = ricci_operator(b.ricci, s.g);
  b.scalar = contract(b.ricci_operator, 0, 1).value();

  b.r_tilde_direct = riemann_of_connection(M, connection.field(), p, cfg);
  b.r_tilde_formula = tilde_riemann_formula(b.riemann, s);

  b.s_tilde = ricci_from_riemann(b.r_tilde_direct);
  b.s_tilde_formula = b.ricci + 2.0 * (n + 1.0) * g - 2.0 * outer(s.eta, s.eta);

  b.q_tilde = ricci_operator(b.s_tilde, s.g);
  b.q_tilde_formula = b.ricci_operator + 2.0 * (n + 1.0) * MultiTensor::identity(d) - 2.0 * outer(s.xi, s.eta);

  b.r_tilde_scalar = contract(b.q_tilde, 0, 1).value();
  b.r_tilde_scalar_formula = b.scalar + 2.0 * n * (2.0 * n + 3.0);

  const MultiTensor nabla_eta =
      covariant_derivative(M, connection.structure().eta, connection.levi_civita_field(), p, cfg);
  b.beta = nabla_eta + outer(s.eta, s.eta) + g;
  return b;
}

IdentityResidualReport check_torsion(const NsnmConnection& connection, std::span<const Point> points,
                                     double tolerance) {
  return evaluate_identity("torsion", points, tolerance, [&](const Point& p) {
    const std::size_t d = connection.base().dim();
    const MultiTensor eta = connection.structure().eta(p);
    MultiTensor T = torsion(connection.coefficients(p));  // [k, i, j]
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) T(k, i, j) -= eta(i) * delta(k, j) - eta(j) * delta(k, i);
    return residual_of(T);
  });
}

IdentityResidualReport check_nonmetricity(const NsnmConnection& connection, std::span<const Point> points,
                                          double tolerance) {
  const ChartManifold& M = connection.base();
  const TensorField metric = [&M](const Point& q) { return M.metric(q); };
  return evaluate_identity("nonmetricity", points, tolerance, [&](const Point& p) {
    const std::size_t d = M.dim();
    const StructureAt s = evaluate_structure(M, connection.structure(), p);
    const MultiTensor& g = s.g.lower();
    MultiTensor dg = covariant_derivative(M, metric, connection.field(), p, connection.config());  // [i, j, k]
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) dg(i, j, k) -= 2.0 * s.eta(j) * g(i, k) + 2.0 * s.eta(k) * g(i, j);
    return residual_of(dg);
  });
}

IdentityResidualReport check_nabla_tilde_xi(const NsnmConnection& connection, std::span<const Point> points,
                                            double tolerance) {
  const ChartManifold& M = connection.base();
  return evaluate_identity("nabla_tilde_xi", points, tolerance, [&](const Point& p) {
    const std::size_t d = M.dim();
    const StructureAt s = evaluate_structure(M, connection.structure(), p);
    MultiTensor dxi =
        covariant_derivative(M, connection.structure().xi, connection.field(), p, connection.config());  // [i, k]
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k) dxi(i, k) += 2.0 * s.eta(i) * s.xi(k);
    return residual_of(dxi);
  });
}

IdentityResidualReport check_beta(const NsnmConnection& connection, std::span<const Point> points,
                                  double tolerance) {
  const ChartManifold& M = connection.base();
  return evaluate_identity("beta", points, tolerance, [&](const Point& p) {
    const StructureAt s = evaluate_structure(M, connection.structure(), p);
    const MultiTensor nabla_eta =
        covariant_derivative(M, connection.structure().eta, connection.levi_civita_field(), p, connection.config());
    const MultiTensor beta = nabla_eta + outer(s.eta, s.eta) + s.g.lower();
    return residual_of(beta - 2.0 * s.g.lower());
  });
}

std::vector<IdentityResidualReport> check_tilde_curvature(const NsnmConnection& connection,
                                                          std::span<const Point> points, double tolerance) {
  const std::vector<std::string> names{"tilde_curvature_crosscheck", "tilde_ricci", "tilde_ricci_symmetry",
                                       "tilde_ricci_operator", "tilde_scalar"};
  const std::array<std::size_t, 2> swap{1, 0};
  double shift_sum = 0.0;
  std::size_t shift_count = 0;
  auto reports = evaluate_identities(names, points, tolerance, [&](const Point& p) {
    const TildeCurvatureBundle b = tilde_curvature(connection, p);
    const double scalar_diff = b.r_tilde_scalar - b.r_tilde_scalar_formula;
    shift_sum += b.r_tilde_scalar - b.scalar;
    ++shift_count;
    return std::vector<Residual>{
        residual_of(b.r_tilde_direct - b.r_tilde_formula),
        residual_of(b.s_tilde - b.s_tilde_formula),
        residual_of(b.s_tilde - permute(b.s_tilde, swap)),
        residual_of(b.q_tilde - b.q_tilde_formula),
        {std::abs(scalar_diff), scalar_diff},
    };
  });
  const double n = static_cast<double>(connection.base().half_dim());
  if (shift_count > 0) {
    reports.back().set_detail("scalar_shift_mean", shift_sum / static_cast<double>(shift_count));
    reports.back().set_detail("scalar_shift_expected", 2.0 * n * (2.0 * n + 3.0));
  }
  return reports;
}

IdentityResidualReport check_irregularity(const NsnmConnection& connection, std::span<const Point> points,
                                          double tolerance) {
  const ChartManifold& M = connection.base();
  const std::size_t d = M.dim();
  double contrast = 0.0;
  auto apply_to_xi = [d](const MultiTensor& R, const MultiTensor& xi) {
    MultiTensor out(d, {Slot::Up, Slot::Down, Slot::Down});  // [l, i, j]
    for (std::size_t l = 0; l < d; ++l)
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
          double v = 0.0;
          for (std::size_t k = 0; k < d; ++k) v += R(l, k, i, j) * xi(k);
          out(l, i, j) = v;
        }
    return out;
  };
  auto report = evaluate_identity("irregularity", points, tolerance, [&](const Point& p) {
    const MultiTensor xi = connection.structure().xi(p);
    const MultiTensor r_tilde = riemann_of_connection(M, connection.field(), p, connection.config());
    const MultiTensor r = riemann_of_connection(M, connection.levi_civita_field(), p, connection.config());
    contrast = std::max(contrast, max_abs(apply_to_xi(r, xi)));
    return residual_of(apply_to_xi(r_tilde, xi));
  });
  report.set_detail("levi_civita_contrast_max", contrast);
  return report;
}

} // namespace kenmotsu
