#pragma once

// Almost contact metric structures (phi, xi, eta, g) and the Kenmotsu checks.
//
// phi is a (1,1) field stored [a, b] = phi^a_b with phi(d_b) = phi^a_b d_a,
// xi a vector field [a], eta a 1-form [a]. All identity checks quantify over
// the coordinate frame: the identities are multilinear, so frame coverage is
// complete coverage.

#include "kenmotsu/chart.hpp"
#include "kenmotsu/report.hpp"
#include "kenmotsu/tensor.hpp"

#include <span>
#include <vector>

namespace kenmotsu {

struct AlmostContactStructure {
  TensorField phi;
  TensorField xi;
  TensorField eta;
};

/// The structure and metric evaluated at one point, shapes validated.
struct StructureAt {
  MetricPair g;
  MultiTensor phi;
  MultiTensor xi;
  MultiTensor eta;
};

StructureAt evaluate_structure(const ChartManifold& manifold, const AlmostContactStructure& acs,
                               const Point& p);

struct AxiomResiduals {
  Residual phi_squared;    // phi^2 + I - eta (x) xi
  Residual eta_of_xi;      // eta(xi) - 1
  Residual compatibility;  // g(phi X, phi Y) - g(X, Y) + eta(X) eta(Y)
};

AxiomResiduals almost_contact_residuals(const StructureAt& s);

/// Residual at p is the worst of the three axiom residuals.
IdentityResidualReport check_almost_contact(const ChartManifold& manifold, const AlmostContactStructure& acs,
                                            std::span<const Point> points, double tolerance = 1e-10);

struct KenmotsuResiduals {
  Residual reeb;          // nabla_X xi - X + eta(X) xi
  Residual contact_form;  // (nabla_X eta)(Y) - g(X, Y) + eta(X) eta(Y)
};

KenmotsuResiduals kenmotsu_residuals(const ChartManifold& manifold, const AlmostContactStructure& acs,
                                     const Point& p, const DifferentiationConfig& cfg);

/// Checks both equivalent forms; the residual is the worse of the two, and
/// each form's maximum is kept in the details ("reeb_max", "contact_form_max").
IdentityResidualReport check_kenmotsu(const ChartManifold& manifold, const AlmostContactStructure& acs,
                                      std::span<const Point> points, const DifferentiationConfig& cfg,
                                      double tolerance);

/// Curvature identities every Kenmotsu manifold satisfies, one report each:
///   "eta_of_curvature"     eta(R(X,Y)Z) = eta(Y) g(X,Z) - eta(X) g(Y,Z)
///   "curvature_on_reeb"    R(X,Y) xi = eta(X) Y - eta(Y) X
///   "curvature_from_reeb"  R(xi,X) Y = eta(Y) X - g(X,Y) xi
///   "ricci_on_reeb"        S(X, xi) = -2n eta(X)
std::vector<IdentityResidualReport> check_kenmotsu_curvature_identities(
    const ChartManifold& manifold, const AlmostContactStructure& acs, std::span<const Point> points,
    const DifferentiationConfig& cfg, double tolerance);

/// Singular values of the phi matrix at p, ascending. On an almost contact
/// structure the smallest is 0 (kernel spanned by xi).
std::vector<double> phi_singular_values(const AlmostContactStructure& acs, const Point& p);

} // namespace kenmotsu
