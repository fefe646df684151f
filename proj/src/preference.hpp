#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "capacity.hpp"
#include "errors.hpp"

namespace flowsort {

enum class Direction { maximize, minimize };

// Shapes mapping a signed evaluation difference to a preference degree in
// [0, 1]. Every shape returns 0 for d <= 0; they differ in how the degree
// climbs for d > 0.
enum class PrefShape { usual, u_shape, v_shape, level, linear, gaussian };

struct CriterionSpec {
  std::string name;
  Direction direction = Direction::maximize;
  PrefShape shape = PrefShape::usual;
  // q: indifference threshold, p: preference threshold, s: gaussian spread.
  std::optional<double> q;
  std::optional<double> p;
  std::optional<double> s;
};

const char* direction_name(Direction d) noexcept;
const char* shape_name(PrefShape shape) noexcept;
std::optional<Direction> direction_from_name(const std::string& name);
std::optional<PrefShape> shape_from_name(const std::string& name);

// Threshold requirements per shape: u_shape needs q >= 0; v_shape needs
// p > 0; level and linear need 0 <= q <= p with p > 0; gaussian needs s > 0.
ValidationReport validate_criterion(const CriterionSpec& spec);

// Difference in favour of x; minimised criteria flip the sign so that a
// positive difference always means "x better than y".
double signed_difference(const CriterionSpec& spec, double x_value,
                         double y_value);

// Degree of preference for a signed difference d. Boundary conventions are
// pinned: u_shape is 0 at d == q; level and linear are reached degrees on
// (q, p] and 1 strictly beyond p; linear with p == q degenerates to u_shape.
double preference_degree(const CriterionSpec& spec, double d);

struct DecisionMatrix {
  std::vector<std::string> names;
  std::vector<std::vector<double>> rows;

  int alternatives() const noexcept { return static_cast<int>(rows.size()); }
};

// Reference profiles ordered best to worst: profiles[0] bounds the top
// category, profiles.back() the bottom one. categories[h] labels the class
// delimited by profiles h (upper) and h+1 (lower).
struct ReferenceProfileSet {
  std::vector<std::string> profile_names;
  std::vector<std::vector<double>> profiles;
  std::vector<std::string> categories;

  int profile_count() const noexcept {
    return static_cast<int>(profiles.size());
  }
  int category_count() const noexcept {
    return static_cast<int>(categories.size());
  }
};

// Per-criterion preference degrees for every ordered element pair of a local
// reference set. Layout is (x, y, criterion) row-major so vec(x, y) is a
// contiguous degree vector ready for aggregation.
class DegreeTensor {
public:
  DegreeTensor(int elements, int criteria);

  double& at(int x, int y, int j) {
    return data_[(static_cast<std::size_t>(x) * size_ + y) * criteria_ + j];
  }
  double at(int x, int y, int j) const {
    return data_[(static_cast<std::size_t>(x) * size_ + y) * criteria_ + j];
  }
  std::span<const double> vec(int x, int y) const {
    return {data_.data() + (static_cast<std::size_t>(x) * size_ + y) * criteria_,
            static_cast<std::size_t>(criteria_)};
  }

  int elements() const noexcept { return size_; }
  int criteria() const noexcept { return criteria_; }

private:
  int size_;
  int criteria_;
  std::vector<double> data_;
};

// Degree vector of x over y, one entry per criterion.
std::vector<double> degrees_between(std::span<const double> x_row,
                                    std::span<const double> y_row,
                                    std::span<const CriterionSpec> criteria);

// Full degree tensor over the local set (r_1, ..., r_{k+1}, alternative):
// profiles first in their given order, the alternative last. Diagonal
// entries are zero by construction.
DegreeTensor pairwise_degrees(std::span<const double> alternative,
                              const ReferenceProfileSet& profiles,
                              std::span<const CriterionSpec> criteria);

enum class ProfileMode { weak, strict, strong };

const char* profile_mode_name(ProfileMode mode) noexcept;
std::optional<ProfileMode> profile_mode_from_name(const std::string& name);

// Profile separation checks, cumulative by mode.
//   weak:   componentwise dominance r_h >= r_{h+1} in preference direction;
//   strict: additionally every better profile outranks every worse one with
//           positive degree and the reverse degree is zero;
//   strong: additionally every better-over-worse degree is exactly one.
// strict and strong aggregate degrees, so they need the capacity; passing
// nullptr there is a precondition error.
ValidationReport validate_profiles(const ReferenceProfileSet& profiles,
                                   std::span<const CriterionSpec> criteria,
                                   ProfileMode mode,
                                   const CapacityModel* capacity);

// Every evaluation must lie inside the band spanned by the worst and best
// profiles, direction-aware. Violations name the alternative, criterion and
// offending bound.
ValidationReport validate_alternative_bounds(
    const DecisionMatrix& matrix, const ReferenceProfileSet& profiles,
    std::span<const CriterionSpec> criteria);

}  // namespace flowsort
