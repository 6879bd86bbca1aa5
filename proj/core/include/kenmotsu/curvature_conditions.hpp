#pragma once

// Curvature operators acting on tensors, Einstein-type fits and the Ricci
// semi-symmetry comparison between nabla and nabla~.

#include "kenmotsu/chart.hpp"
#include "kenmotsu/nsnm_connection.hpp"
#include "kenmotsu/report.hpp"
#include "kenmotsu/tensor.hpp"

#include <span>
#include <vector>

namespace kenmotsu {

/// (B(X,Y) . T)(Z_1, ..., Z_k) = -sum_s T(Z_1, ..., B(X,Y) Z_s, ..., Z_k) for a
/// (1,3) endomorphism-valued B stored [l, z, x, y] (B(d_x, d_y) d_z = B^l_{zxy} d_l)
/// and a (0,k) target, k in {2, 4}. Result is (0,k+2), indexed [z_1..z_k, x, y].
/// Throws RankError for other ranks.
MultiTensor derivation_action(const MultiTensor& endomorphism, const MultiTensor& target);

/// (X wedge_g Y) Z = g(Y,Z) X - g(X,Z) Y, stored like a curvature tensor.
MultiTensor metric_wedge(const MetricPair& g);

/// Tachibana tensor Q(g, T): the derivation action of X wedge_g Y.
MultiTensor tachibana(const MetricPair& g, const MultiTensor& target);

/// Conformal curvature from a Levi-Civita curvature tensor:
/// C = R - 1/(m-2)[S(Y,Z)X - S(X,Z)Y + g(Y,Z)QX - g(X,Z)QY] + r/((m-1)(m-2))[g(Y,Z)X - g(X,Z)Y].
MultiTensor weyl_from_riemann(const MultiTensor& riemann, const MetricPair& g);

MultiTensor weyl_tensor(const ChartManifold& manifold, const Point& p, const DifferentiationConfig& cfg);

/// Largest |g-trace| of a (1,3) curvature-like tensor over every pair of slots.
double max_trace(const MultiTensor& curvature, const MetricPair& g);

/// Least-squares fit T ~ a g + b eta (x) eta in an orthonormal frame of g
/// ("normalized components"); residual is the largest normalized component of
/// the misfit. With with_eta = false, b is forced to 0 (Einstein fit).
struct EinsteinFit {
  double a = 0.0;
  double b = 0.0;
  double residual = 0.0;
};

EinsteinFit fit_eta_einstein(const MultiTensor& tensor, const MetricPair& g, const MultiTensor& eta,
                             bool with_eta = true);

/// -g(Y,Z)S(X,U) + g(X,Z)S(Y,U) - g(Y,U)S(Z,X) + g(X,U)S(Z,Y), indexed [z, u, x, y].
MultiTensor semisymmetry_defect(const MultiTensor& ricci, const MetricPair& g);

/// "ricci_semisymmetry_identity": (R~ . S~) equals (R . S) plus the defect
/// above, with R~ and S~ taken from the direct curvature of nabla~.
IdentityResidualReport check_semisymmetry_identity(const NsnmConnection& connection,
                                                   std::span<const Point> points, double tolerance);

/// Reports, in order:
///   "ricci_semisymmetry_condition"  the defect vanishes (R~ . S~ = R . S);
///   "einstein"                      S = a g with a = -2n;
///   "tilde_eta_einstein"            S~ = 2 g - 2 eta (x) eta;
///   "scalar_curvature"              r = -2n(2n+1);
///   "tilde_scalar_constant"         r~ = 4n.
/// The fit reports use fit_tolerance and carry mean fitted coefficients in their details.
std::vector<IdentityResidualReport> check_semisymmetry_condition(const NsnmConnection& connection,
                                                                 std::span<const Point> points,
                                                                 double tolerance, double fit_tolerance = 1e-4);

/// Weyl and Tachibana checks, in order:
///   "weyl_traceless"          every single g-trace of C vanishes;
///   "weyl_vanishing"          max |C| (expected zero in dimension 3 and on space forms);
///   "tachibana_metric"        Q(g, g) = 0, at tolerance 1e-12;
///   "weyl_tachibana_relation" C.R - R.C = Q(g,R) = Q(g,C); not applicable below dimension 5.
/// The relation report records the individual magnitudes of C.R - R.C, Q(g,R)
/// and Q(g,C), and the residual of R.C - C.R = k Q(g,R) for both candidate
/// normalizations k = r/(m(m-1)) and k = r/(n(n-1)).
std::vector<IdentityResidualReport> check_weyl_tachibana(const ChartManifold& manifold,
                                                         std::span<const Point> points,
                                                         const DifferentiationConfig& cfg, double tolerance);

} // namespace kenmotsu
