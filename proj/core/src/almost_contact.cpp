#include "kenmotsu/almost_contact.hpp"

#include "kenmotsu/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>

namespace kenmotsu {

namespace {

void require_variance(const MultiTensor& t, const Variance& expected, std::size_t dim, const char* what) {
  if (t.variance() != expected || t.dim() != dim) {
    throw SlotError(std::string(what) + ": expected " + to_string(expected) + " in dim " +
                    std::to_string(dim) + ", got " + to_string(t.variance()) + " in dim " +
                    std::to_string(t.dim()));
  }
}

} // namespace

StructureAt evaluate_structure(const ChartManifold& manifold, const AlmostContactStructure& acs,
                               const Point& p) {
  StructureAt s{manifold.metric_pair(p), acs.phi(p), acs.xi(p), acs.eta(p)};
  const std::size_t d = manifold.dim();
  require_variance(s.phi, {Slot::Up, Slot::Down}, d, "phi");
  require_variance(s.xi, {Slot::Up}, d, "xi");
  require_variance(s.eta, {Slot::Down}, d, "eta");
  return s;
}

AxiomResiduals almost_contact_residuals(const StructureAt& s) {
  const std::size_t d = s.g.dim();
  const MultiTensor& g = s.g.lower();
  MultiTensor sq(d, {Slot::Up, Slot::Down});
  MultiTensor compat(d, covariant(2));
  double eta_xi = 0.0;
  for (std::size_t a = 0; a < d; ++a) eta_xi += s.eta(a) * s.xi(a);

  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      double v = (a == b ? 1.0 : 0.0) - s.xi(a) * s.eta(b);
      for (std::size_t c = 0; c < d; ++c) v += s.phi(a, c) * s.phi(c, b);
      sq(a, b) = v;
    }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      double v = -g(i, j) + s.eta(i) * s.eta(j);
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t c = 0; c < d; ++c) v += g(a, c) * s.phi(a, i) * s.phi(c, j);
      compat(i, j) = v;
    }
  return {residual_of(sq), {std::abs(eta_xi - 1.0), eta_xi - 1.0}, residual_of(compat)};
}

IdentityResidualReport check_almost_contact(const ChartManifold& manifold, const AlmostContactStructure& acs,
                                            std::span<const Point> points, double tolerance) {
  double phi_max = 0.0, eta_xi_max = 0.0, compat_max = 0.0;
  auto report = evaluate_identity("almost_contact_axioms", points, tolerance, [&](const Point& p) {
    const AxiomResiduals r = almost_contact_residuals(evaluate_structure(manifold, acs, p));
    phi_max = std::max(phi_max, r.phi_squared.magnitude);
    eta_xi_max = std::max(eta_xi_max, r.eta_of_xi.magnitude);
    compat_max = std::max(compat_max, r.compatibility.magnitude);
    return worst(worst(r.phi_squared, r.eta_of_xi), r.compatibility);
  });
  report.set_detail("phi_squared_max", phi_max);
  report.set_detail("eta_of_xi_max", eta_xi_max);
  report.set_detail("compatibility_max", compat_max);
  return report;
}

KenmotsuResiduals kenmotsu_residuals(const ChartManifold& manifold, const AlmostContactStructure& acs,
                                     const Point& p, const DifferentiationConfig& cfg) {
  const StructureAt s = evaluate_structure(manifold, acs, p);
  const ConnectionField lc = levi_civita(manifold, cfg);
  const std::size_t d = manifold.dim();

  MultiTensor reeb = covariant_derivative(manifold, acs.xi, lc, p, cfg);  // [i, k] = (nabla_i xi)^k
  MultiTensor form = covariant_derivative(manifold, acs.eta, lc, p, cfg);  // [i, j] = (nabla_i eta)_j
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      reeb(i, k) -= (i == k ? 1.0 : 0.0) - s.eta(i) * s.xi(k);
      form(i, k) -= s.g.lower()(i, k) - s.eta(i) * s.eta(k);
    }
  return {residual_of(reeb), residual_of(form)};
}

IdentityResidualReport check_kenmotsu(const ChartManifold& manifold, const AlmostContactStructure& acs,
                                      std::span<const Point> points, const DifferentiationConfig& cfg,
                                      double tolerance) {
  double reeb_max = 0.0, form_max = 0.0;
  auto report = evaluate_identity("kenmotsu", points, tolerance, [&](const Point& p) {
    const KenmotsuResiduals r = kenmotsu_residuals(manifold, acs, p, cfg);
    reeb_max = std::max(reeb_max, r.reeb.magnitude);
    form_max = std::max(form_max, r.contact_form.magnitude);
    return worst(r.reeb, r.contact_form);
  });
  report.set_detail("reeb_max", reeb_max);
  report.set_detail("contact_form_max", form_max);
  return report;
}

std::vector<IdentityResidualReport> check_kenmotsu_curvature_identities(
    const ChartManifold& manifold, const AlmostContactStructure& acs, std::span<const Point> points,
    const DifferentiationConfig& cfg, double tolerance) {
  const std::size_t d = manifold.dim();
  const double two_n = 2.0 * static_cast<double>(manifold.half_dim());
  const std::vector<std::string> names{"eta_of_curvature", "curvature_on_reeb", "curvature_from_reeb",
                                       "ricci_on_reeb"};
  return evaluate_identities(names, points, tolerance, [&](const Point& p) {
    const StructureAt s = evaluate_structure(manifold, acs, p);
    const MultiTensor& g = s.g.lower();
    const MultiTensor R = riemann(manifold, p, cfg);
    const MultiTensor S = ricci_from_riemann(R);
    auto delta = [](std::size_t a, std::size_t b) { return a == b ? 1.0 : 0.0; };

    MultiTensor eta_r(d, covariant(3));                               // [i, j, k]
    MultiTensor r_xi(d, {Slot::Up, Slot::Down, Slot::Down});          // [l, i, j]
    MultiTensor xi_r(d, {Slot::Up, Slot::Down, Slot::Down});          // [l, j, k]
    MultiTensor s_xi(d, covariant(1));                                // [i]
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) {
          double v = -(s.eta(j) * g(i, k) - s.eta(i) * g(j, k));
          for (std::size_t l = 0; l < d; ++l) v += s.eta(l) * R(l, k, i, j);
          eta_r(i, j, k) = v;
        }
    for (std::size_t l = 0; l < d; ++l)
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
          double v = -(s.eta(i) * delta(l, j) - s.eta(j) * delta(l, i));
          for (std::size_t k = 0; k < d; ++k) v += R(l, k, i, j) * s.xi(k);
          r_xi(l, i, j) = v;
        }
    for (std::size_t l = 0; l < d; ++l)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) {
          double v = -(s.eta(k) * delta(l, j) - g(j, k) * s.xi(l));
          for (std::size_t i = 0; i < d; ++i) v += s.xi(i) * R(l, k, i, j);
          xi_r(l, j, k) = v;
        }
    for (std::size_t i = 0; i < d; ++i) {
      double v = two_n * s.eta(i);
      for (std::size_t k = 0; k < d; ++k) v += S(i, k) * s.xi(k);
      s_xi(i) = v;
    }
    return std::vector<Residual>{residual_of(eta_r), residual_of(r_xi), residual_of(xi_r), residual_of(s_xi)};
  });
}

std::vector<double> phi_singular_values(const AlmostContactStructure& acs, const Point& p) {
  const MultiTensor phi = acs.phi(p);
  const auto n = static_cast<Eigen::Index>(phi.dim());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b) m(a, b) = phi(a, b);
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues();
  std::vector<double> out(sv.data(), sv.data() + sv.size());
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace kenmotsu
