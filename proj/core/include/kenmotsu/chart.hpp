#pragma once

// Coordinate-chart Riemannian machinery.
//
// Conventions (fixed so that the Kenmotsu curvature identities hold with the
// signs they are usually written in):
//   * connection coefficients: nabla_{d_i} d_j = Gamma^k_{ij} d_k, stored [k, i, j];
//   * curvature: R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z,
//     stored as R^l_{kij} at [l, k, i, j] with R(d_i, d_j) d_k = R^l_{kij} d_l;
//   * Ricci: S(Y,Z) = trace of X -> R(X,Y)Z, stored [j, k] = S(d_j, d_k);
//   * covariant derivative: the derivative slot is prepended, [i, ...] = (nabla_{d_i} T)(...).
// With these choices a space form of curvature -1 has R(X,Y)Z = -(g(Y,Z)X - g(X,Z)Y)
// and S = -(m-1) g.

#include "kenmotsu/tensor.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace kenmotsu {

using Point = std::vector<double>;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Per-coordinate open intervals.
using Box = std::vector<Interval>;

/// True when every coordinate satisfies lo + margin < p < hi - margin.
bool inside(const Box& box, const Point& p, double margin = 0.0);

/// Every interval narrowed by margin on both sides. Throws Error if an interval would become empty.
Box shrink(const Box& box, double margin);

using TensorField = std::function<MultiTensor(const Point&)>;

struct DifferentiationConfig {
  double step = 1e-4;
  /// One level of step-halving Richardson extrapolation on top of central differences.
  bool richardson = true;
};

class ChartManifold {
public:
  /// metric_partials, when supplied, returns the (0,3) tensor [k, i, j] = d_k g_ij.
  ChartManifold(std::size_t dim, Box domain, TensorField metric, TensorField metric_partials = {});

  std::size_t dim() const { return dim_; }
  /// n such that dim = 2n + 1.
  std::size_t half_dim() const { return (dim_ - 1) / 2; }
  const Box& domain() const { return domain_; }
  bool has_analytic_partials() const { return static_cast<bool>(metric_partials_); }

  /// Throws DomainError outside the domain.
  MultiTensor metric(const Point& p) const;
  MetricPair metric_pair(const Point& p) const;

  /// Analytic when available, otherwise central differences of the metric.
  MultiTensor metric_partials(const Point& p, const DifferentiationConfig& cfg) const;

  /// Same chart with the analytic partials dropped (forces the finite-difference path).
  ChartManifold finite_difference_only() const;

private:
  std::size_t dim_;
  Box domain_;
  TensorField metric_;
  TensorField metric_partials_;
};

/// Gradient of a tensor field: result [k, ...] = d_k f(p)[...], with a covariant slot prepended.
/// Throws DomainError if the stencil leaves the box.
MultiTensor gradient(const TensorField& f, const Point& p, const Box& domain,
                     const DifferentiationConfig& cfg);

struct ConnectionCoefficients {
  std::size_t dim = 0;
  /// Gamma^k_{ij} at [k, i, j].
  MultiTensor gamma;
  bool is_levi_civita = false;
};

using ConnectionField = std::function<ConnectionCoefficients(const Point&)>;

ConnectionCoefficients christoffel(const ChartManifold& manifold, const Point& p,
                                   const DifferentiationConfig& cfg);

/// Levi-Civita coefficients as a field over the chart.
ConnectionField levi_civita(const ChartManifold& manifold, const DifferentiationConfig& cfg);

/// Torsion T^k_{ij} = Gamma^k_{ij} - Gamma^k_{ji}, stored [k, i, j].
MultiTensor torsion(const ConnectionCoefficients& connection);

/// Curvature of an arbitrary (not necessarily symmetric or metric) connection,
/// R^l_{kij} = d_i G^l_{jk} - d_j G^l_{ik} + G^l_{ia} G^a_{jk} - G^l_{ja} G^a_{ik}.
MultiTensor riemann_of_connection(const ChartManifold& manifold, const ConnectionField& connection,
                                  const Point& p, const DifferentiationConfig& cfg);

/// Levi-Civita curvature.
MultiTensor riemann(const ChartManifold& manifold, const Point& p, const DifferentiationConfig& cfg);

/// S(d_j, d_k) = sum_i R^i_{kij}, stored [j, k].
MultiTensor ricci_from_riemann(const MultiTensor& riemann);

/// g^{jk} S_jk.
double scalar_from_ricci(const MultiTensor& ricci, const MetricPair& g);

MultiTensor ricci(const ChartManifold& manifold, const Point& p, const DifferentiationConfig& cfg);
double scalar(const ChartManifold& manifold, const Point& p, const DifferentiationConfig& cfg);

/// Covariant derivative of a tensor field under the given connection. The
/// derivative slot is prepended: [i, ...] = (nabla_{d_i} T)(...).
MultiTensor covariant_derivative(const ChartManifold& manifold, const TensorField& field,
                                 const ConnectionField& connection, const Point& p,
                                 const DifferentiationConfig& cfg);

} // namespace kenmotsu
