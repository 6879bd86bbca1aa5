#include "kenmotsu/chart.hpp"

#include "kenmotsu/errors.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace kenmotsu {

namespace {

std::string describe(const Point& p) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
  os << ')';
  return os.str();
}

MultiTensor central_difference(const TensorField& f, const Point& p, std::size_t axis, double h) {
  Point plus = p;
  Point minus = p;
  plus[axis] += h;
  minus[axis] -= h;
  MultiTensor d = f(plus) - f(minus);
  d *= 1.0 / (2.0 * h);
  return d;
}

MultiTensor derivative(const TensorField& f, const Point& p, std::size_t axis,
                       const DifferentiationConfig& cfg) {
  MultiTensor coarse = central_difference(f, p, axis, cfg.step);
  if (!cfg.richardson) return coarse;
  // Error of the central difference is c h^2 + O(h^4); combine h and h/2 to cancel c.
  MultiTensor fine = central_difference(f, p, axis, 0.5 * cfg.step);
  MultiTensor out = 4.0 * fine - coarse;
  out *= 1.0 / 3.0;
  return out;
}

} // namespace

bool inside(const Box& box, const Point& p, double margin) {
  if (box.size() != p.size()) return false;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (!(p[i] > box[i].lo + margin && p[i] < box[i].hi - margin)) return false;
  return true;
}

Box shrink(const Box& box, double margin) {
  Box out = box;
  for (auto& iv : out) {
    iv.lo += margin;
    iv.hi -= margin;
    if (!(iv.lo < iv.hi)) throw Error("shrink: interval collapsed");
  }
  return out;
}

ChartManifold::ChartManifold(std::size_t dim, Box domain, TensorField metric, TensorField metric_partials)
    : dim_(dim), domain_(std::move(domain)), metric_(std::move(metric)),
      metric_partials_(std::move(metric_partials)) {
  if (dim_ < 3 || dim_ % 2 == 0)
    throw Error("ChartManifold: dimension must be odd and at least 3, got " + std::to_string(dim_));
  if (domain_.size() != dim_) throw Error("ChartManifold: domain box has wrong dimension");
  if (!metric_) throw Error("ChartManifold: metric function required");
}

MultiTensor ChartManifold::metric(const Point& p) const {
  if (!inside(domain_, p)) throw DomainError("point " + describe(p) + " outside chart domain");
  return metric_(p);
}

MetricPair ChartManifold::metric_pair(const Point& p) const {
  try {
    return MetricPair::from_lower(metric(p));
  } catch (const DegenerateMetricError& e) {
    throw DegenerateMetricError(std::string(e.what()) + " at " + describe(p));
  }
}

MultiTensor ChartManifold::metric_partials(const Point& p, const DifferentiationConfig& cfg) const {
  if (metric_partials_) {
    if (!inside(domain_, p)) throw DomainError("point " + describe(p) + " outside chart domain");
    return metric_partials_(p);
  }
  return gradient([this](const Point& q) { return metric(q); }, p, domain_, cfg);
}

ChartManifold ChartManifold::finite_difference_only() const {
  return ChartManifold(dim_, domain_, metric_);
}

MultiTensor gradient(const TensorField& f, const Point& p, const Box& domain,
                     const DifferentiationConfig& cfg) {
  if (!(cfg.step > 0.0)) throw Error("gradient: step must be positive");
  if (!inside(domain, p, cfg.step)) {
    throw DomainError("finite-difference stencil of half-width " + std::to_string(cfg.step) +
                      " around " + describe(p) + " leaves the chart domain");
  }
  const std::size_t d = p.size();
  std::vector<MultiTensor> slices;
  slices.reserve(d);
  for (std::size_t k = 0; k < d; ++k) slices.push_back(derivative(f, p, k, cfg));

  Variance variance{Slot::Down};
  variance.insert(variance.end(), slices.front().variance().begin(), slices.front().variance().end());
  MultiTensor out(d, variance);
  const std::size_t block = slices.front().size();
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < block; ++i) out[k * block + i] = slices[k][i];
  return out;
}

ConnectionCoefficients christoffel(const ChartManifold& manifold, const Point& p,
                                   const DifferentiationConfig& cfg) {
  const std::size_t d = manifold.dim();
  const MetricPair g = manifold.metric_pair(p);
  const MultiTensor dg = manifold.metric_partials(p, cfg);  // [k, i, j] = d_k g_ij

  // Lowered symbols Gamma_{l,ij} = 1/2 (d_i g_jl + d_j g_il - d_l g_ij).
  MultiTensor lowered(d, covariant(3));
  for (std::size_t l = 0; l < d; ++l)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        lowered(l, i, j) = 0.5 * (dg(i, j, l) + dg(j, i, l) - dg(l, i, j));

  ConnectionCoefficients out{d, raise(lowered, 0, g), true};
  return out;
}

ConnectionField levi_civita(const ChartManifold& manifold, const DifferentiationConfig& cfg) {
  return [manifold, cfg](const Point& p) { return christoffel(manifold, p, cfg); };
}

MultiTensor torsion(const ConnectionCoefficients& connection) {
  const std::size_t d = connection.dim;
  MultiTensor out(d, {Slot::Up, Slot::Down, Slot::Down});
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        out(k, i, j) = connection.gamma(k, i, j) - connection.gamma(k, j, i);
  return out;
}

MultiTensor riemann_of_connection(const ChartManifold& manifold, const ConnectionField& connection,
                                  const Point& p, const DifferentiationConfig& cfg) {
  const std::size_t d = manifold.dim();
  const ConnectionCoefficients at_p = connection(p);
  const MultiTensor& G = at_p.gamma;
  // dG[m, l, j, k] = d_m Gamma^l_{jk}
  const MultiTensor dG = gradient([&](const Point& q) { return connection(q).gamma; }, p,
                                  manifold.domain(), cfg);

  MultiTensor R(d, {Slot::Up, Slot::Down, Slot::Down, Slot::Down});
  for (std::size_t l = 0; l < d; ++l)
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
          double v = dG(i, l, j, k) - dG(j, l, i, k);
          for (std::size_t a = 0; a < d; ++a) v += G(l, i, a) * G(a, j, k) - G(l, j, a) * G(a, i, k);
          R(l, k, i, j) = v;
        }
  return R;
}

MultiTensor riemann(const ChartManifold& manifold, const Point& p, const DifferentiationConfig& cfg) {
  return riemann_of_connection(manifold, levi_civita(manifold, cfg), p, cfg);
}

MultiTensor ricci_from_riemann(const MultiTensor& R) {
  if (R.variance() != Variance{Slot::Up, Slot::Down, Slot::Down, Slot::Down})
    throw SlotError("ricci_from_riemann: expected a (1,3) tensor, got " + to_string(R.variance()));
  // contract(R, 0, 2) leaves [k, j]; transpose to [j, k].
  const std::array<std::size_t, 2> swap{1, 0};
  return permute(contract(R, 0, 2), swap);
}

double scalar_from_ricci(const MultiTensor& S, const MetricPair& g) {
  return contract(raise(S, 0, g), 0, 1).value();
}

MultiTensor ricci(const ChartManifold& manifold, const Point& p, const DifferentiationConfig& cfg) {
  return ricci_from_riemann(riemann(manifold, p, cfg));
}

double scalar(const ChartManifold& manifold, const Point& p, const DifferentiationConfig& cfg) {
  return scalar_from_ricci(ricci(manifold, p, cfg), manifold.metric_pair(p));
}

MultiTensor covariant_derivative(const ChartManifold& manifold, const TensorField& field,
                                 const ConnectionField& connection, const Point& p,
                                 const DifferentiationConfig& cfg) {
  const std::size_t d = manifold.dim();
  const MultiTensor value = field(p);
  const MultiTensor& G = connection(p).gamma;
  MultiTensor out = gradient(field, p, manifold.domain(), cfg);
  const std::size_t rank = value.rank();

  std::array<std::size_t, MultiTensor::kMaxRank> src{};
  for_each_index(d, rank + 1, [&](std::span<const std::size_t> idx) {
    const std::size_t i = idx[0];
    const auto slots = idx.subspan(1);
    double correction = 0.0;
    for (std::size_t s = 0; s < rank; ++s) {
      std::copy(slots.begin(), slots.end(), src.begin());
      for (std::size_t a = 0; a < d; ++a) {
        src[s] = a;
        const double component = value.at(std::span<const std::size_t>(src.data(), rank));
        if (value.slot(s) == Slot::Up)
          correction += G(slots[s], i, a) * component;
        else
          correction -= G(a, i, slots[s]) * component;
      }
    }
    out.at(idx) += correction;
  });
  return out;
}

} // namespace kenmotsu
