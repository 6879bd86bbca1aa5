#pragma once

// The non-symmetric non-metric connection of a Kenmotsu manifold,
//
//   nabla~_X Y = nabla_X Y - eta(Y) X - g(X, Y) xi,
//
// i.e. Gamma~^k_{ij} = Gamma^k_{ij} - eta_j delta^k_i - g_ij xi^k.
//
// Its curvature is computed twice: directly from the coefficient field (the
// oracle every downstream check consumes) and from the closed form in terms of
// the Levi-Civita curvature. The closed form only feeds cross-checks.

#include "kenmotsu/almost_contact.hpp"
#include "kenmotsu/chart.hpp"
#include "kenmotsu/report.hpp"
#include "kenmotsu/tensor.hpp"

#include <span>
#include <vector>

namespace kenmotsu {

class NsnmConnection {
public:
  NsnmConnection(ChartManifold base, AlmostContactStructure structure, DifferentiationConfig cfg);

  const ChartManifold& base() const { return base_; }
  const AlmostContactStructure& structure() const { return structure_; }
  const DifferentiationConfig& config() const { return cfg_; }

  ConnectionCoefficients coefficients(const Point& p) const;
  ConnectionField field() const;
  ConnectionField levi_civita_field() const;

private:
  ChartManifold base_;
  AlmostContactStructure structure_;
  DifferentiationConfig cfg_;
};

/// Throws StructureError when the almost contact axioms fail (tolerance 1e-10)
/// at any of the validation points.
NsnmConnection build_nsnm(const ChartManifold& manifold, const AlmostContactStructure& structure,
                          const DifferentiationConfig& cfg, std::span<const Point> validation_points);

struct TildeCurvatureBundle {
  // Levi-Civita side.
  MultiTensor riemann;  // R^l_{kij}
  MultiTensor ricci;    // S_jk
  MultiTensor ricci_operator;  // Q^a_b
  double scalar = 0.0;

  MultiTensor r_tilde_direct;   // from the coefficient field
  MultiTensor r_tilde_formula;  // R + g(Y,Z)X - g(X,Z)Y + 2[g(Y,Z)eta(X) - g(X,Z)eta(Y)]xi
  MultiTensor s_tilde;          // contraction of r_tilde_direct
  MultiTensor s_tilde_formula;  // S + 2(n+1) g - 2 eta(x)eta
  MultiTensor q_tilde;          // raised s_tilde, [a, b] = Q~^a_b
  MultiTensor q_tilde_formula;  // Q + 2(n+1) I - 2 xi(x)eta
  double r_tilde_scalar = 0.0;          // trace of q_tilde
  double r_tilde_scalar_formula = 0.0;  // r + 2n(2n+3)
  MultiTensor beta;  // (nabla_X eta)(Y) + eta(X)eta(Y) + g(X,Y)
};

TildeCurvatureBundle tilde_curvature(const NsnmConnection& connection, const Point& p);

/// Closed form of the curvature of nabla~ in terms of the Levi-Civita curvature.
MultiTensor tilde_riemann_formula(const MultiTensor& riemann, const StructureAt& s);

/// Torsion T~(d_i, d_j) = eta(d_i) d_j - eta(d_j) d_i; purely algebraic.
IdentityResidualReport check_torsion(const NsnmConnection& connection, std::span<const Point> points,
                                     double tolerance = 1e-8);

/// (nabla~_X g)(Y, Z) = 2 eta(Y) g(X, Z) + 2 eta(Z) g(X, Y).
IdentityResidualReport check_nonmetricity(const NsnmConnection& connection, std::span<const Point> points,
                                          double tolerance);

/// nabla~_X xi = -2 eta(X) xi.
IdentityResidualReport check_nabla_tilde_xi(const NsnmConnection& connection, std::span<const Point> points,
                                            double tolerance);

/// beta = 2 g.
IdentityResidualReport check_beta(const NsnmConnection& connection, std::span<const Point> points,
                                  double tolerance);

/// Cross-checks of the direct curvature of nabla~ against the closed forms:
///   "tilde_curvature_crosscheck"  direct vs closed-form curvature
///   "tilde_ricci"                 contracted direct curvature vs S + 2(n+1)g - 2 eta(x)eta
///   "tilde_ricci_symmetry"        antisymmetric part of the contracted direct curvature
///   "tilde_ricci_operator"        raised contraction vs Q + 2(n+1)I - 2 xi(x)eta
///   "tilde_scalar"                trace vs r + 2n(2n+3)
/// The crosscheck report carries the signed extreme of the difference.
std::vector<IdentityResidualReport> check_tilde_curvature(const NsnmConnection& connection,
                                                          std::span<const Point> points, double tolerance);

/// R~(X, Y) xi = 0 from the direct curvature. The Levi-Civita contrast
/// max |R(d_i, d_j) xi| is recorded under "levi_civita_contrast_max".
IdentityResidualReport check_irregularity(const NsnmConnection& connection, std::span<const Point> points,
                                          double tolerance);

} // namespace kenmotsu
