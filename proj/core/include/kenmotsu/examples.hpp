#pragma once

// Closed-form charts with almost contact metric structures.
//
//   euclidean3  flat R^3, xi = d_z, eta = dz. Almost contact metric, not Kenmotsu.
//   h3          (x, y, t), g = e^{2t}(dx^2 + dy^2) + dt^2. Hyperbolic space in
//               horospherical coordinates: Kenmotsu, curvature -1.
//   h5          (x1, y1, x2, y2, t), g = e^{2t}(dx1^2 + dy1^2 + dx2^2 + dy2^2) + dt^2.
//   ne5         (x1, y1, x2, y2, t), g = e^{2t}((dx1^2 + dy1^2)/y1^2 + dx2^2 + dy2^2) + dt^2.
//               Warped product over the Kaehler product H^2 x R^2: Kenmotsu, not Einstein.
//
// In every chart phi(d_x) = d_y and phi(d_y) = -d_x on each fiber pair, and
// phi(xi) = 0. Analytic metric partials are supplied for all of them.

#include "kenmotsu/almost_contact.hpp"
#include "kenmotsu/chart.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kenmotsu {

struct NamedExample {
  std::string name;
  ChartManifold manifold;
  AlmostContactStructure structure;
  bool expected_kenmotsu = false;
  bool expected_einstein = false;
  bool expected_conformally_flat = false;
  /// Interior box that sample points are drawn from (before shrinking by the stencil margin).
  Box sample_box;
  /// Absolute tolerance for identities that need second derivatives of the metric.
  double curvature_tolerance = 1e-5;
  std::string notes;
};

std::vector<NamedExample> catalog();

std::optional<NamedExample> find_example(const std::string& name);

} // namespace kenmotsu
