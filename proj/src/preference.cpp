#include "preference.hpp"

#include <cmath>

#include "numfmt.hpp"

namespace flowsort {
namespace {

double require_threshold(const std::optional<double>& t,
                         const CriterionSpec& spec, const char* which) {
  if (!t)
    fail(errc::precondition, "criterion '" + spec.name +
                                 "' uses shape " + shape_name(spec.shape) +
                                 " but has no threshold " + which);
  return *t;
}

std::span<const double> row_span(const std::vector<double>& row) {
  return {row.data(), row.size()};
}

}  // namespace

const char* direction_name(Direction d) noexcept {
  return d == Direction::maximize ? "maximize" : "minimize";
}

const char* shape_name(PrefShape shape) noexcept {
  switch (shape) {
    case PrefShape::usual: return "usual";
    case PrefShape::u_shape: return "u_shape";
    case PrefShape::v_shape: return "v_shape";
    case PrefShape::level: return "level";
    case PrefShape::linear: return "linear";
    case PrefShape::gaussian: return "gaussian";
  }
  return "?";
}

std::optional<Direction> direction_from_name(const std::string& name) {
  if (name == "maximize" || name == "max") return Direction::maximize;
  if (name == "minimize" || name == "min") return Direction::minimize;
  return std::nullopt;
}

std::optional<PrefShape> shape_from_name(const std::string& name) {
  for (PrefShape shape :
       {PrefShape::usual, PrefShape::u_shape, PrefShape::v_shape,
        PrefShape::level, PrefShape::linear, PrefShape::gaussian})
    if (name == shape_name(shape)) return shape;
  return std::nullopt;
}

ValidationReport validate_criterion(const CriterionSpec& spec) {
  ValidationReport report;
  auto add = [&](const std::string& text) {
    report.issues.push_back("criterion '" + spec.name + "': " + text);
  };
  if (spec.name.empty()) report.issues.push_back("criterion has no name");
  switch (spec.shape) {
    case PrefShape::usual:
      break;
    case PrefShape::u_shape:
      if (!spec.q)
        add("u_shape needs threshold q");
      else if (*spec.q < 0.0)
        add("threshold q must be nonnegative, got " + num(*spec.q));
      break;
    case PrefShape::v_shape:
      if (!spec.p)
        add("v_shape needs threshold p");
      else if (*spec.p <= 0.0)
        add("threshold p must be positive, got " + num(*spec.p));
      break;
    case PrefShape::level:
    case PrefShape::linear:
      if (!spec.q || !spec.p) {
        add(std::string(shape_name(spec.shape)) +
            " needs both thresholds q and p");
      } else {
        if (*spec.q < 0.0)
          add("threshold q must be nonnegative, got " + num(*spec.q));
        if (*spec.p <= 0.0)
          add("threshold p must be positive, got " + num(*spec.p));
        if (*spec.p < *spec.q)
          add("thresholds must satisfy q <= p, got q=" + num(*spec.q) +
              ", p=" + num(*spec.p));
        if (spec.shape == PrefShape::level && *spec.p == *spec.q)
          add("level needs q < p, got q=" + num(*spec.q) +
              ", p=" + num(*spec.p));
      }
      break;
    case PrefShape::gaussian:
      if (!spec.s)
        add("gaussian needs spread s");
      else if (*spec.s <= 0.0)
        add("spread s must be positive, got " + num(*spec.s));
      break;
  }
  return report;
}

double signed_difference(const CriterionSpec& spec, double x_value,
                         double y_value) {
  return spec.direction == Direction::maximize ? x_value - y_value
                                               : y_value - x_value;
}

double preference_degree(const CriterionSpec& spec, double d) {
  if (d <= 0.0) return 0.0;
  switch (spec.shape) {
    case PrefShape::usual:
      return 1.0;
    case PrefShape::u_shape:
      return d > require_threshold(spec.q, spec, "q") ? 1.0 : 0.0;
    case PrefShape::v_shape: {
      const double p = require_threshold(spec.p, spec, "p");
      return d >= p ? 1.0 : d / p;
    }
    case PrefShape::level: {
      const double q = require_threshold(spec.q, spec, "q");
      const double p = require_threshold(spec.p, spec, "p");
      if (d <= q) return 0.0;
      return d <= p ? 0.5 : 1.0;
    }
    case PrefShape::linear: {
      const double q = require_threshold(spec.q, spec, "q");
      const double p = require_threshold(spec.p, spec, "p");
      if (d <= q) return 0.0;
      if (d > p) return 1.0;
      return (d - q) / (p - q);
    }
    case PrefShape::gaussian: {
      const double s = require_threshold(spec.s, spec, "s");
      return 1.0 - std::exp(-(d * d) / (2.0 * s * s));
    }
  }
  fail(errc::precondition, "unknown preference shape");
}

DegreeTensor::DegreeTensor(int elements, int criteria)
    : size_(elements), criteria_(criteria),
      data_(static_cast<std::size_t>(elements) * elements * criteria, 0.0) {
  if (elements < 1 || criteria < 1)
    fail(errc::structural, "degree tensor needs positive dimensions");
}

std::vector<double> degrees_between(std::span<const double> x_row,
                                    std::span<const double> y_row,
                                    std::span<const CriterionSpec> criteria) {
  if (x_row.size() != criteria.size() || y_row.size() != criteria.size())
    fail(errc::structural,
         "evaluation rows must match the criteria count " +
             std::to_string(criteria.size()));
  std::vector<double> degrees(criteria.size());
  for (std::size_t j = 0; j < criteria.size(); ++j)
    degrees[j] = preference_degree(
        criteria[j], signed_difference(criteria[j], x_row[j], y_row[j]));
  return degrees;
}

DegreeTensor pairwise_degrees(std::span<const double> alternative,
                              const ReferenceProfileSet& profiles,
                              std::span<const CriterionSpec> criteria) {
  const int k1 = profiles.profile_count();
  const int n = static_cast<int>(criteria.size());
  if (static_cast<int>(alternative.size()) != n)
    fail(errc::structural, "alternative row width " +
                               std::to_string(alternative.size()) +
                               " does not match " + std::to_string(n) +
                               " criteria");
  std::vector<std::span<const double>> rows;
  rows.reserve(k1 + 1);
  for (const auto& p : profiles.profiles) {
    if (static_cast<int>(p.size()) != n)
      fail(errc::structural, "profile row width does not match criteria");
    rows.push_back(row_span(p));
  }
  rows.push_back(alternative);
  DegreeTensor tensor(k1 + 1, n);
  for (int x = 0; x < tensor.elements(); ++x)
    for (int y = 0; y < tensor.elements(); ++y) {
      if (x == y) continue;
      for (int j = 0; j < n; ++j)
        tensor.at(x, y, j) = preference_degree(
            criteria[j],
            signed_difference(criteria[j], rows[x][j], rows[y][j]));
    }
  return tensor;
}

const char* profile_mode_name(ProfileMode mode) noexcept {
  switch (mode) {
    case ProfileMode::weak: return "weak";
    case ProfileMode::strict: return "strict";
    case ProfileMode::strong: return "strong";
  }
  return "?";
}

std::optional<ProfileMode> profile_mode_from_name(const std::string& name) {
  for (ProfileMode mode :
       {ProfileMode::weak, ProfileMode::strict, ProfileMode::strong})
    if (name == profile_mode_name(mode)) return mode;
  return std::nullopt;
}

namespace {

void check_profile_shape(const ReferenceProfileSet& profiles,
                         std::span<const CriterionSpec> criteria) {
  if (profiles.profile_count() < 2)
    fail(errc::structural,
         "need at least two profiles (one category), got " +
             std::to_string(profiles.profile_count()));
  if (profiles.category_count() != profiles.profile_count() - 1)
    fail(errc::structural,
         std::to_string(profiles.profile_count()) + " profiles delimit " +
             std::to_string(profiles.profile_count() - 1) +
             " categories, got " + std::to_string(profiles.category_count()) +
             " labels");
  if (static_cast<int>(profiles.profile_names.size()) !=
      profiles.profile_count())
    fail(errc::structural, "profile names must match the profile count");
  for (const auto& row : profiles.profiles)
    if (row.size() != criteria.size())
      fail(errc::structural, "profile row width does not match criteria");
}

}  // namespace

ValidationReport validate_profiles(const ReferenceProfileSet& profiles,
                                   std::span<const CriterionSpec> criteria,
                                   ProfileMode mode,
                                   const CapacityModel* capacity) {
  check_profile_shape(profiles, criteria);
  ValidationReport report;
  const int k1 = profiles.profile_count();
  for (int h = 0; h + 1 < k1; ++h)
    for (std::size_t j = 0; j < criteria.size(); ++j) {
      const double sd = signed_difference(criteria[j], profiles.profiles[h][j],
                                          profiles.profiles[h + 1][j]);
      if (sd < 0.0)
        report.issues.push_back(
            "profile " + profiles.profile_names[h + 1] + " is better than " +
            profiles.profile_names[h] + " on criterion '" + criteria[j].name +
            "'");
    }
  if (mode == ProfileMode::weak) return report;
  if (capacity == nullptr)
    fail(errc::precondition, std::string(profile_mode_name(mode)) +
                                 " profile validation needs the capacity");
  for (int h = 0; h < k1; ++h)
    for (int l = h + 1; l < k1; ++l) {
      const auto down = degrees_between(row_span(profiles.profiles[h]),
                                        row_span(profiles.profiles[l]),
                                        criteria);
      const auto up = degrees_between(row_span(profiles.profiles[l]),
                                      row_span(profiles.profiles[h]),
                                      criteria);
      const double ci_down = capacity->evaluate(down);
      const double ci_up = capacity->evaluate(up);
      const std::string pair = profiles.profile_names[h] + " over " +
                               profiles.profile_names[l];
      if (ci_down <= validation_tol)
        report.issues.push_back("outranking degree for " + pair + " is " +
                                num(ci_down) + ", expected positive");
      if (std::abs(ci_up) > validation_tol)
        report.issues.push_back("reverse outranking degree for " + pair +
                                " is " + num(ci_up) + ", expected 0");
      if (mode == ProfileMode::strong && std::abs(ci_down - 1.0) > validation_tol)
        report.issues.push_back("outranking degree for " + pair + " is " +
                                num(ci_down) + ", expected 1");
    }
  return report;
}

ValidationReport validate_alternative_bounds(
    const DecisionMatrix& matrix, const ReferenceProfileSet& profiles,
    std::span<const CriterionSpec> criteria) {
  check_profile_shape(profiles, criteria);
  ValidationReport report;
  if (static_cast<int>(matrix.names.size()) != matrix.alternatives())
    fail(errc::structural, "alternative names must match the row count");
  const auto& best = profiles.profiles.front();
  const auto& worst = profiles.profiles.back();
  for (int i = 0; i < matrix.alternatives(); ++i) {
    const auto& row = matrix.rows[i];
    if (row.size() != criteria.size())
      fail(errc::structural, "alternative '" + matrix.names[i] +
                                 "' row width does not match criteria");
    for (std::size_t j = 0; j < criteria.size(); ++j) {
      if (signed_difference(criteria[j], row[j], best[j]) > 0.0)
        report.issues.push_back(
            "alternative '" + matrix.names[i] + "' value " + num(row[j]) +
            " on criterion '" + criteria[j].name + "' is better than profile " +
            profiles.profile_names.front());
      if (signed_difference(criteria[j], row[j], worst[j]) < 0.0)
        report.issues.push_back(
            "alternative '" + matrix.names[i] + "' value " + num(row[j]) +
            " on criterion '" + criteria[j].name + "' is worse than profile " +
            profiles.profile_names.back());
    }
  }
  return report;
}

}  // namespace flowsort
