#include "kenmotsu/tensor.hpp"

#include "kenmotsu/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace kenmotsu {

namespace {

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) out *= base;
  return out;
}

void require_same_shape(const MultiTensor& a, const MultiTensor& b, const char* op) {
  if (!a.same_shape(b)) {
    throw Error(std::string(op) + ": shape mismatch (" + to_string(a.variance()) + " dim " +
                std::to_string(a.dim()) + " vs " + to_string(b.variance()) + " dim " +
                std::to_string(b.dim()) + ")");
  }
}

void require_slot(const MultiTensor& t, std::size_t slot, const char* op) {
  if (slot >= t.rank()) {
    throw SlotError(std::string(op) + ": slot " + std::to_string(slot) + " out of range for rank " +
                    std::to_string(t.rank()));
  }
}

Eigen::MatrixXd as_matrix(const MultiTensor& t) {
  const auto n = static_cast<Eigen::Index>(t.dim());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = t(i, j);
  return m;
}

// Applies a dim x dim matrix to one slot: out[.., a, ..] = sum_b m(a, b) t[.., b, ..].
MultiTensor apply_to_slot(const MultiTensor& t, std::size_t slot, const MultiTensor& m, Slot new_kind) {
  Variance variance = t.variance();
  variance[slot] = new_kind;
  MultiTensor out(t.dim(), variance);
  const std::size_t d = t.dim();
  std::array<std::size_t, MultiTensor::kMaxRank> src{};
  for_each_index(d, t.rank(), [&](std::span<const std::size_t> idx) {
    std::copy(idx.begin(), idx.end(), src.begin());
    double sum = 0.0;
    for (std::size_t b = 0; b < d; ++b) {
      src[slot] = b;
      sum += m(idx[slot], b) * t.at(std::span<const std::size_t>(src.data(), t.rank()));
    }
    out.at(idx) = sum;
  });
  return out;
}

} // namespace

Variance covariant(std::size_t rank) { return Variance(rank, Slot::Down); }
Variance contravariant(std::size_t rank) { return Variance(rank, Slot::Up); }

MultiTensor::MultiTensor(std::size_t dim, Variance variance)
    : dim_(dim), variance_(std::move(variance)) {
  if (variance_.size() > kMaxRank) {
    throw RankError("MultiTensor: rank " + std::to_string(variance_.size()) + " exceeds " +
                    std::to_string(kMaxRank));
  }
  components_.assign(ipow(dim_, variance_.size()), 0.0);
}

MultiTensor::MultiTensor(std::size_t dim, Variance variance, std::vector<double> components)
    : MultiTensor(dim, std::move(variance)) {
  if (components.size() != components_.size()) {
    throw Error("MultiTensor: expected " + std::to_string(components_.size()) + " components, got " +
                std::to_string(components.size()));
  }
  components_ = std::move(components);
}

MultiTensor MultiTensor::scalar(std::size_t dim, double value) {
  return MultiTensor(dim, {}, {value});
}

MultiTensor MultiTensor::identity(std::size_t dim) {
  MultiTensor out(dim, {Slot::Up, Slot::Down});
  for (std::size_t i = 0; i < dim; ++i) out(i, i) = 1.0;
  return out;
}

Slot MultiTensor::slot(std::size_t i) const {
  if (i >= variance_.size()) throw SlotError("slot " + std::to_string(i) + " out of range");
  return variance_[i];
}

double MultiTensor::value() const {
  if (rank() != 0) throw RankError("value(): tensor has rank " + std::to_string(rank()));
  return components_[0];
}

std::size_t MultiTensor::offset(std::span<const std::size_t> index) const {
  std::size_t flat = 0;
  for (std::size_t i : index) flat = flat * dim_ + i;
  return flat;
}

MultiTensor& MultiTensor::operator+=(const MultiTensor& other) {
  require_same_shape(*this, other, "operator+=");
  for (std::size_t i = 0; i < components_.size(); ++i) components_[i] += other.components_[i];
  return *this;
}

MultiTensor& MultiTensor::operator-=(const MultiTensor& other) {
  require_same_shape(*this, other, "operator-=");
  for (std::size_t i = 0; i < components_.size(); ++i) components_[i] -= other.components_[i];
  return *this;
}

MultiTensor& MultiTensor::operator*=(double factor) {
  for (double& c : components_) c *= factor;
  return *this;
}

MultiTensor operator+(MultiTensor lhs, const MultiTensor& rhs) { return lhs += rhs; }
MultiTensor operator-(MultiTensor lhs, const MultiTensor& rhs) { return lhs -= rhs; }
MultiTensor operator*(double factor, MultiTensor t) { return t *= factor; }
MultiTensor operator*(MultiTensor t, double factor) { return t *= factor; }

void for_each_index(std::size_t dim, std::size_t rank,
                    const std::function<void(std::span<const std::size_t>)>& fn) {
  std::array<std::size_t, MultiTensor::kMaxRank> idx{};
  if (rank > MultiTensor::kMaxRank) throw RankError("for_each_index: rank too large");
  const std::size_t total = ipow(dim, rank);
  for (std::size_t flat = 0; flat < total; ++flat) {
    fn(std::span<const std::size_t>(idx.data(), rank));
    for (std::size_t s = rank; s-- > 0;) {
      if (++idx[s] < dim) break;
      idx[s] = 0;
    }
  }
}

MetricPair::MetricPair(MultiTensor lower, MultiTensor upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {}

MetricPair MetricPair::from_lower(MultiTensor lower) {
  if (lower.variance() != covariant(2)) {
    throw SlotError("MetricPair: lower form must be (0,2), got " + to_string(lower.variance()));
  }
  const std::size_t d = lower.dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      if (std::abs(lower(i, j) - lower(j, i)) > 1e-12)
        throw DegenerateMetricError("metric not symmetric at component (" + std::to_string(i) + "," +
                                    std::to_string(j) + ")");

  const Eigen::MatrixXd g = as_matrix(lower);
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(g);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
      (ldlt.vectorD().array() <= 0.0).any()) {
    throw DegenerateMetricError("metric not positive definite");
  }
  const Eigen::MatrixXd inv = ldlt.solve(Eigen::MatrixXd::Identity(g.rows(), g.cols()));

  MultiTensor upper(d, contravariant(2));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      upper(i, j) = 0.5 * (inv(Eigen::Index(i), Eigen::Index(j)) + inv(Eigen::Index(j), Eigen::Index(i)));

  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      double sum = 0.0;
      for (std::size_t j = 0; j < d; ++j) sum += lower(i, j) * upper(j, k);
      if (std::abs(sum - (i == k ? 1.0 : 0.0)) > 1e-10)
        throw DegenerateMetricError("metric inverse inaccurate (ill-conditioned metric)");
    }
  }
  return MetricPair(std::move(lower), std::move(upper));
}

MultiTensor contract(const MultiTensor& t, std::size_t up_slot, std::size_t down_slot) {
  require_slot(t, up_slot, "contract");
  require_slot(t, down_slot, "contract");
  if (up_slot == down_slot) throw SlotError("contract: slots must be distinct");
  if (t.slot(up_slot) != Slot::Up || t.slot(down_slot) != Slot::Down) {
    throw SlotError("contract: need a contravariant slot paired with a covariant slot, got " +
                    to_string(t.variance()));
  }
  Variance variance;
  for (std::size_t s = 0; s < t.rank(); ++s)
    if (s != up_slot && s != down_slot) variance.push_back(t.slot(s));

  MultiTensor out(t.dim(), variance);
  std::array<std::size_t, MultiTensor::kMaxRank> src{};
  for_each_index(t.dim(), out.rank(), [&](std::span<const std::size_t> idx) {
    std::size_t k = 0;
    for (std::size_t s = 0; s < t.rank(); ++s)
      if (s != up_slot && s != down_slot) src[s] = idx[k++];
    double sum = 0.0;
    for (std::size_t a = 0; a < t.dim(); ++a) {
      src[up_slot] = a;
      src[down_slot] = a;
      sum += t.at(std::span<const std::size_t>(src.data(), t.rank()));
    }
    out.at(idx) = sum;
  });
  return out;
}

MultiTensor outer(const MultiTensor& a, const MultiTensor& b) {
  if (a.dim() != b.dim()) throw Error("outer: dimension mismatch");
  Variance variance = a.variance();
  variance.insert(variance.end(), b.variance().begin(), b.variance().end());
  MultiTensor out(a.dim(), variance);
  std::size_t flat = 0;
  for (double x : a.components())
    for (double y : b.components()) out[flat++] = x * y;
  return out;
}

MultiTensor raise(const MultiTensor& t, std::size_t slot, const MetricPair& g) {
  require_slot(t, slot, "raise");
  if (t.slot(slot) != Slot::Down) throw SlotError("raise: slot " + std::to_string(slot) + " is not covariant");
  return apply_to_slot(t, slot, g.upper(), Slot::Up);
}

MultiTensor lower(const MultiTensor& t, std::size_t slot, const MetricPair& g) {
  require_slot(t, slot, "lower");
  if (t.slot(slot) != Slot::Up) throw SlotError("lower: slot " + std::to_string(slot) + " is not contravariant");
  return apply_to_slot(t, slot, g.lower(), Slot::Down);
}

double max_abs(const MultiTensor& t) {
  double m = 0.0;
  for (double c : t.components()) m = std::max(m, std::abs(c));
  return m;
}

double signed_extreme(const MultiTensor& t) {
  double best = 0.0;
  for (double c : t.components())
    if (std::abs(c) > std::abs(best)) best = c;
  return best;
}

MultiTensor permute(const MultiTensor& t, std::span<const std::size_t> order) {
  if (order.size() != t.rank()) throw SlotError("permute: order length differs from rank");
  Variance variance(t.rank());
  for (std::size_t k = 0; k < order.size(); ++k) variance[k] = t.slot(order[k]);
  MultiTensor out(t.dim(), variance);
  std::array<std::size_t, MultiTensor::kMaxRank> src{};
  for_each_index(t.dim(), t.rank(), [&](std::span<const std::size_t> idx) {
    for (std::size_t k = 0; k < order.size(); ++k) src[order[k]] = idx[k];
    out.at(idx) = t.at(std::span<const std::size_t>(src.data(), t.rank()));
  });
  return out;
}

std::string to_string(const Variance& variance) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < variance.size(); ++i) {
    if (i) os << ',';
    os << (variance[i] == Slot::Up ? '^' : '_');
  }
  os << ')';
  return os.str();
}

} // namespace kenmotsu
