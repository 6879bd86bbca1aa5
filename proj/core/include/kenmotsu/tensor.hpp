#pragma once

// Dense multi-index tensors at a single point of a chart.
//
// Components are stored row-major: the last slot varies fastest. Variance is
// carried as data and validated by the operations that care about it
// (contraction, raising, lowering), so the same type covers every rank the
// library needs, from scalars up to the (0,6) outputs of curvature
// derivations.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace kenmotsu {

enum class Slot : std::uint8_t { Up, Down };

using Variance = std::vector<Slot>;

/// Helpers for the common variance signatures.
Variance covariant(std::size_t rank);
Variance contravariant(std::size_t rank);

class MultiTensor {
public:
  static constexpr std::size_t kMaxRank = 6;

  MultiTensor() = default;

  /// Zero tensor.
  MultiTensor(std::size_t dim, Variance variance);

  /// Throws Error when components.size() != dim^rank.
  MultiTensor(std::size_t dim, Variance variance, std::vector<double> components);

  static MultiTensor scalar(std::size_t dim, double value);

  /// Kronecker delta as a (1,1) tensor with variance {Up, Down}.
  static MultiTensor identity(std::size_t dim);

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return variance_.size(); }
  const Variance& variance() const { return variance_; }
  Slot slot(std::size_t i) const;
  std::size_t size() const { return components_.size(); }

  std::span<const double> components() const { return components_; }
  std::span<double> components() { return components_; }

  double operator[](std::size_t flat) const { return components_[flat]; }
  double& operator[](std::size_t flat) { return components_[flat]; }

  double at(std::span<const std::size_t> index) const { return components_[offset(index)]; }
  double& at(std::span<const std::size_t> index) { return components_[offset(index)]; }

  template <class... I>
  double operator()(I... index) const {
    return components_[offset_of(index...)];
  }
  template <class... I>
  double& operator()(I... index) {
    return components_[offset_of(index...)];
  }

  /// Value of a rank-0 tensor.
  double value() const;

  std::size_t offset(std::span<const std::size_t> index) const;

  MultiTensor& operator+=(const MultiTensor& other);
  MultiTensor& operator-=(const MultiTensor& other);
  MultiTensor& operator*=(double factor);

  bool same_shape(const MultiTensor& other) const {
    return dim_ == other.dim_ && variance_ == other.variance_;
  }

private:
  template <class... I>
  std::size_t offset_of(I... index) const {
    std::size_t flat = 0;
    ((flat = flat * dim_ + static_cast<std::size_t>(index)), ...);
    return flat;
  }

  std::size_t dim_ = 0;
  Variance variance_;
  std::vector<double> components_{0.0};
};

MultiTensor operator+(MultiTensor lhs, const MultiTensor& rhs);
MultiTensor operator-(MultiTensor lhs, const MultiTensor& rhs);
MultiTensor operator*(double factor, MultiTensor t);
MultiTensor operator*(MultiTensor t, double factor);

/// Calls fn(index) for every multi-index of the given rank, in storage order.
void for_each_index(std::size_t dim, std::size_t rank,
                    const std::function<void(std::span<const std::size_t>)>& fn);

/// Lower and upper forms of a metric at a point.
class MetricPair {
public:
  /// Inverts a symmetric positive-definite (0,2) tensor. Throws
  /// DegenerateMetricError if the tensor is not symmetric to 1e-12, fails a
  /// pivoted LDL^T factorization, or the computed inverse misses the identity
  /// by more than 1e-10 in any component.
  static MetricPair from_lower(MultiTensor lower);

  const MultiTensor& lower() const { return lower_; }
  const MultiTensor& upper() const { return upper_; }
  std::size_t dim() const { return lower_.dim(); }

private:
  MetricPair(MultiTensor lower, MultiTensor upper);

  MultiTensor lower_;
  MultiTensor upper_;
};

/// Sum over a paired contravariant/covariant slot. Both slots are removed;
/// the remaining slots keep their relative order.
MultiTensor contract(const MultiTensor& t, std::size_t up_slot, std::size_t down_slot);

/// Tensor product; slots of a come first.
MultiTensor outer(const MultiTensor& a, const MultiTensor& b);

/// Raise a covariant slot in place (slot position and order unchanged).
MultiTensor raise(const MultiTensor& t, std::size_t slot, const MetricPair& g);

/// Lower a contravariant slot in place.
MultiTensor lower(const MultiTensor& t, std::size_t slot, const MetricPair& g);

/// Max over components of |t|; 0 for the zero tensor.
double max_abs(const MultiTensor& t);

/// Component of largest magnitude, sign preserved.
double signed_extreme(const MultiTensor& t);

/// Reorders slots: result slot k is input slot order[k].
MultiTensor permute(const MultiTensor& t, std::span<const std::size_t> order);

std::string to_string(const Variance& variance);

} // namespace kenmotsu
