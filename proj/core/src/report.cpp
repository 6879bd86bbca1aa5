#include "kenmotsu/report.hpp"

#include "kenmotsu/errors.hpp"

#include <algorithm>
#include <cmath>

namespace kenmotsu {

std::string to_string(Status status) {
  switch (status) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::Skipped: return "SKIP";
    case Status::NotApplicable: return "N/A";
  }
  return "?";
}

std::string to_string(Expectation expectation) {
  switch (expectation) {
    case Expectation::Holds: return "holds";
    case Expectation::Fails: return "fails";
    case Expectation::Informational: return "informational";
    case Expectation::NotApplicable: return "not-applicable";
  }
  return "?";
}

Residual residual_of(const MultiTensor& difference) {
  return {max_abs(difference), signed_extreme(difference)};
}

Residual worst(Residual a, Residual b) { return b.magnitude > a.magnitude ? b : a; }

std::size_t IdentityResidualReport::aborted_points() const {
  return static_cast<std::size_t>(
      std::count_if(per_point.begin(), per_point.end(), [](const auto& p) { return !p.residual; }));
}

std::size_t IdentityResidualReport::points_above(double threshold) const {
  return static_cast<std::size_t>(std::count_if(per_point.begin(), per_point.end(), [&](const auto& p) {
    return p.residual && *p.residual > threshold;
  }));
}

std::optional<double> IdentityResidualReport::detail(const std::string& key) const {
  for (const auto& [k, v] : details)
    if (k == key) return v;
  return std::nullopt;
}

void IdentityResidualReport::set_detail(const std::string& key, double value) {
  for (auto& [k, v] : details)
    if (k == key) {
      v = value;
      return;
    }
  details.emplace_back(key, value);
}

bool IdentityResidualReport::matches_expectation() const {
  switch (expectation) {
    case Expectation::Holds: return status == Status::Pass;
    case Expectation::Fails: return status == Status::Fail && aborted_points() == 0;
    case Expectation::Informational:
    case Expectation::NotApplicable: return true;
  }
  return false;
}

void finalize(IdentityResidualReport& report) {
  if (report.status == Status::Skipped || report.status == Status::NotApplicable) {
    report.passed = false;
    return;
  }
  double m = 0.0;
  for (const auto& p : report.per_point)
    if (p.residual) m = std::max(m, *p.residual);
  report.max_residual = m;
  report.passed = !report.per_point.empty() && report.aborted_points() == 0 && m < report.tolerance;
  report.status = report.passed ? Status::Pass : Status::Fail;
}

IdentityResidualReport evaluate_identity(std::string identity, std::span<const Point> points,
                                         double tolerance, const PointCheck& check) {
  IdentityResidualReport report;
  report.identity = std::move(identity);
  report.tolerance = tolerance;
  report.per_point.reserve(points.size());
  for (const Point& p : points) {
    PointResidual entry;
    entry.point = p;
    try {
      const Residual r = check(p);
      entry.residual = std::isfinite(r.magnitude) ? std::optional<double>(r.magnitude) : std::nullopt;
      entry.signed_residual = r.signed_value;
      if (!entry.residual) entry.error = "non-finite residual";
    } catch (const Error& e) {
      entry.error = e.what();
    }
    report.per_point.push_back(std::move(entry));
  }
  finalize(report);
  return report;
}

std::vector<IdentityResidualReport> evaluate_identities(const std::vector<std::string>& identities,
                                                        std::span<const Point> points, double tolerance,
                                                        const MultiPointCheck& check) {
  std::vector<IdentityResidualReport> reports(identities.size());
  for (std::size_t k = 0; k < identities.size(); ++k) {
    reports[k].identity = identities[k];
    reports[k].tolerance = tolerance;
  }
  for (const Point& p : points) {
    std::vector<PointResidual> entries(identities.size());
    for (auto& e : entries) e.point = p;
    try {
      const std::vector<Residual> rs = check(p);
      if (rs.size() != identities.size()) throw Error("evaluate_identities: residual count mismatch");
      for (std::size_t k = 0; k < rs.size(); ++k) {
        if (std::isfinite(rs[k].magnitude)) {
          entries[k].residual = rs[k].magnitude;
          entries[k].signed_residual = rs[k].signed_value;
        } else {
          entries[k].error = "non-finite residual";
        }
      }
    } catch (const Error& e) {
      for (auto& entry : entries) entry.error = e.what();
    }
    for (std::size_t k = 0; k < identities.size(); ++k) reports[k].per_point.push_back(std::move(entries[k]));
  }
  for (auto& r : reports) finalize(r);
  return reports;
}

IdentityResidualReport skipped_report(std::string identity, std::string reason) {
  IdentityResidualReport report;
  report.identity = std::move(identity);
  report.status = Status::Skipped;
  report.note = std::move(reason);
  return report;
}

IdentityResidualReport not_applicable_report(std::string identity, std::string reason) {
  IdentityResidualReport report;
  report.identity = std::move(identity);
  report.status = Status::NotApplicable;
  report.expectation = Expectation::NotApplicable;
  report.note = std::move(reason);
  return report;
}

} // namespace kenmotsu
