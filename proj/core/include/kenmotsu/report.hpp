#pragma once

#include "kenmotsu/chart.hpp"
#include "kenmotsu/tensor.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace kenmotsu {

enum class Status { Pass, Fail, Skipped, NotApplicable };

/// What a run expects of an identity on a given manifold.
enum class Expectation { Holds, Fails, Informational, NotApplicable };

std::string to_string(Status status);
std::string to_string(Expectation expectation);

struct Residual {
  double magnitude = 0.0;
  /// Component of largest magnitude with its sign kept, so a global sign error shows up as -2x rather than x.
  double signed_value = 0.0;
};

/// Residual of a difference tensor.
Residual residual_of(const MultiTensor& difference);
/// Larger of two residuals by magnitude.
Residual worst(Residual a, Residual b);

struct PointResidual {
  Point point;
  std::optional<double> residual;
  double signed_residual = 0.0;
  /// Non-empty when evaluation at this point aborted.
  std::string error;
};

struct IdentityResidualReport {
  std::string identity;
  std::vector<PointResidual> per_point;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  Status status = Status::Fail;
  Expectation expectation = Expectation::Holds;
  std::string note;
  /// Extra named values (signed diagnostics, fitted coefficients); kept ordered for stable output.
  std::vector<std::pair<std::string, double>> details;

  std::size_t aborted_points() const;
  std::size_t points_above(double threshold) const;
  std::optional<double> detail(const std::string& key) const;
  void set_detail(const std::string& key, double value);

  /// Whether the outcome agrees with the expectation. Informational and
  /// not-applicable reports always agree.
  bool matches_expectation() const;
};

using PointCheck = std::function<Residual(const Point&)>;

/// Runs check at every point; kenmotsu::Error at a point marks that point aborted
/// and the report failed, without stopping the remaining points.
IdentityResidualReport evaluate_identity(std::string identity, std::span<const Point> points,
                                         double tolerance, const PointCheck& check);

/// Recomputes max_residual, passed and status from per_point.
void finalize(IdentityResidualReport& report);

using MultiPointCheck = std::function<std::vector<Residual>(const Point&)>;

/// Several identities sharing one evaluation per point (e.g. everything read
/// off one curvature tensor). check must return one residual per identity.
std::vector<IdentityResidualReport> evaluate_identities(const std::vector<std::string>& identities,
                                                        std::span<const Point> points, double tolerance,
                                                        const MultiPointCheck& check);

IdentityResidualReport skipped_report(std::string identity, std::string reason);
IdentityResidualReport not_applicable_report(std::string identity, std::string reason);

} // namespace kenmotsu
