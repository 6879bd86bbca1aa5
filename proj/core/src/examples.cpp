#include "kenmotsu/examples.hpp"

#include <cmath>

namespace kenmotsu {

namespace {

// Fiber coordinates come in (x, y) pairs followed by t as the last coordinate.
AlmostContactStructure standard_structure(std::size_t dim) {
  AlmostContactStructure s;
  s.phi = [dim](const Point&) {
    MultiTensor phi(dim, {Slot::Up, Slot::Down});
    for (std::size_t a = 0; a + 1 < dim; a += 2) {
      phi(a + 1, a) = 1.0;   // phi(d_x) = d_y
      phi(a, a + 1) = -1.0;  // phi(d_y) = -d_x
    }
    return phi;
  };
  s.xi = [dim](const Point&) {
    MultiTensor xi(dim, {Slot::Up});
    xi(dim - 1) = 1.0;
    return xi;
  };
  s.eta = [dim](const Point&) {
    MultiTensor eta(dim, {Slot::Down});
    eta(dim - 1) = 1.0;
    return eta;
  };
  return s;
}

// Diagonal metric from per-coordinate weights and their partials.
struct DiagonalMetric {
  std::size_t dim;
  std::function<std::vector<double>(const Point&)> weights;
  // partials(p)[k][i] = d_k weight_i
  std::function<std::vector<std::vector<double>>(const Point&)> partials;

  MultiTensor metric(const Point& p) const {
    MultiTensor g(dim, covariant(2));
    const auto w = weights(p);
    for (std::size_t i = 0; i < dim; ++i) g(i, i) = w[i];
    return g;
  }

  MultiTensor metric_partials(const Point& p) const {
    MultiTensor dg(dim, covariant(3));
    const auto dw = partials(p);
    for (std::size_t k = 0; k < dim; ++k)
      for (std::size_t i = 0; i < dim; ++i) dg(k, i, i) = dw[k][i];
    return dg;
  }
};

ChartManifold diagonal_chart(DiagonalMetric m, Box domain) {
  const std::size_t dim = m.dim;
  return ChartManifold(
      dim, std::move(domain), [m](const Point& p) { return m.metric(p); },
      [m](const Point& p) { return m.metric_partials(p); });
}

NamedExample euclidean3() {
  DiagonalMetric m{3, [](const Point&) { return std::vector<double>{1.0, 1.0, 1.0}; },
                   [](const Point&) { return std::vector<std::vector<double>>(3, std::vector<double>(3, 0.0)); }};
  return NamedExample{
      "euclidean3",
      diagonal_chart(m, Box(3, Interval{-10.0, 10.0})),
      standard_structure(3),
      false,
      true,
      true,
      Box(3, Interval{-1.0, 1.0}),
      1e-5,
      "flat R^3 with the standard almost contact metric structure; nabla xi = 0, so not Kenmotsu (control)",
  };
}

// e^{2t} on every fiber coordinate, t last.
NamedExample hyperbolic(std::size_t dim, std::string name) {
  const std::size_t t = dim - 1;
  DiagonalMetric m{
      dim,
      [dim, t](const Point& p) {
        std::vector<double> w(dim, std::exp(2.0 * p[t]));
        w[t] = 1.0;
        return w;
      },
      [dim, t](const Point& p) {
        std::vector<std::vector<double>> dw(dim, std::vector<double>(dim, 0.0));
        for (std::size_t i = 0; i < t; ++i) dw[t][i] = 2.0 * std::exp(2.0 * p[t]);
        return dw;
      }};
  Box domain(dim, Interval{-3.0, 3.0});
  domain[t] = {-2.0, 2.0};
  Box sample(dim, Interval{-1.0, 1.0});
  sample[t] = {-0.5, 0.5};
  return NamedExample{
      std::move(name),
      diagonal_chart(m, std::move(domain)),
      standard_structure(dim),
      true,
      true,
      true,
      std::move(sample),
      1e-5,
      "hyperbolic space in horospherical coordinates; warped product of a line with a flat Kaehler fiber, "
      "constant curvature -1",
  };
}

NamedExample non_einstein5() {
  DiagonalMetric m{
      5,
      [](const Point& p) {
        const double e = std::exp(2.0 * p[4]);
        const double y2 = p[1] * p[1];
        return std::vector<double>{e / y2, e / y2, e, e, 1.0};
      },
      [](const Point& p) {
        const double e = std::exp(2.0 * p[4]);
        const double y = p[1];
        std::vector<std::vector<double>> dw(5, std::vector<double>(5, 0.0));
        dw[1][0] = dw[1][1] = -2.0 * e / (y * y * y);
        dw[4][0] = dw[4][1] = 2.0 * e / (y * y);
        dw[4][2] = dw[4][3] = 2.0 * e;
        return dw;
      }};
  Box domain(5, Interval{-3.0, 3.0});
  domain[1] = {0.5, 3.0};
  domain[4] = {-2.0, 2.0};
  Box sample(5, Interval{-1.0, 1.0});
  sample[1] = {0.7, 2.5};
  sample[4] = {-0.5, 0.5};
  return NamedExample{
      "ne5",
      diagonal_chart(m, std::move(domain)),
      standard_structure(5),
      true,
      false,
      false,
      std::move(sample),
      1e-4,
      "warped product of a line with the Kaehler product H^2 x R^2; Kenmotsu but not Einstein "
      "(S = -(4 + e^{-2t}) g on the H^2 block, -4 g elsewhere)",
  };
}

} // namespace

std::vector<NamedExample> catalog() {
  std::vector<NamedExample> out;
  out.push_back(euclidean3());
  out.push_back(hyperbolic(3, "h3"));
  out.push_back(hyperbolic(5, "h5"));
  out.push_back(non_einstein5());
  return out;
}

std::optional<NamedExample> find_example(const std::string& name) {
  for (auto& e : catalog())
    if (e.name == name) return e;
  return std::nullopt;
}

} // namespace kenmotsu
