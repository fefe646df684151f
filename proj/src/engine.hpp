#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "capacity.hpp"
#include "preference.hpp"

namespace flowsort {

// Flow comparisons treat differences within this tolerance as ties, so
// category boundaries do not hinge on last-bit noise: a capacity tweak of
// order 1e-15 must not move an alternative across categories, while real
// gaps down to ~1e-13 still count.
inline constexpr double flow_tie_tol = 1e-14;

struct SortingProblem {
  std::vector<CriterionSpec> criteria;
  DecisionMatrix alternatives;
  ReferenceProfileSet profiles;
  CapacityModel capacity;
  ProfileMode mode = ProfileMode::strict;
};

// Pairwise outranking degrees over a local set; zero diagonal.
class OutrankingMatrix {
public:
  explicit OutrankingMatrix(int elements);

  double& at(int x, int y) {
    return deg_[static_cast<std::size_t>(x) * size_ + y];
  }
  double at(int x, int y) const {
    return deg_[static_cast<std::size_t>(x) * size_ + y];
  }
  int elements() const noexcept { return size_; }

private:
  int size_;
  std::vector<double> deg_;
};

// Aggregates a per-criterion degree vector into one outranking degree with
// the two-additive Choquet integral (Moebius form). Capacities that are not
// two-additive are rejected as a precondition failure.
double choquet_outranking_degree(std::span<const double> degrees,
                                 const CapacityModel& capacity);

// Plain weighted sum of degrees; the classic aggregation the Choquet variant
// generalises. Weights must be nonnegative.
double weighted_outranking_degree(std::span<const double> degrees,
                                  std::span<const double> weights);

OutrankingMatrix outranking_degrees(const DegreeTensor& degrees,
                                    const CapacityModel& capacity);

// Flows over a local set (r_1, ..., r_{k+1}, alternative). Element order
// matches the degree matrix: profiles first, alternative last.
struct FlowTable {
  int profile_count = 0;
  std::vector<double> positive;
  std::vector<double> negative;
  std::vector<double> net;

  double alt_positive() const { return positive[profile_count]; }
  double alt_negative() const { return negative[profile_count]; }
  double alt_net() const { return net[profile_count]; }
};

// Positive, negative and net flows, each sum normalised by |set| - 1.
// Profile flows must come out strictly ordered (best profile strongest);
// anything else means the profile separation assumptions do not hold and is
// reported as a validation error.
FlowTable compute_flows(const OutrankingMatrix& degrees, int profile_count);

enum class Rule { positive, negative, net };

const char* rule_name(Rule rule) noexcept;
std::optional<Rule> rule_from_name(const std::string& name);

// Category for one rule, 1-based. Scans categories best to worst and stops
// at the first boundary profile the alternative beats (positive/net: flow
// greater than the profile's; negative: flow at most the profile's). An
// alternative tying the worst profile lands in the last category. Flows
// outside the profile band beyond tolerance indicate a broken invariant and
// raise an inconsistency error.
int assign(const FlowTable& flows, Rule rule);

struct Assignment {
  int by_positive = 0;
  int by_negative = 0;
  int by_net = 0;

  int by(Rule rule) const;
};

Assignment assign_all(const FlowTable& flows);

struct AlternativeResult {
  std::string name;
  FlowTable flows;
  Assignment assignment;
};

// All semantic checks in one report: criteria, capacity, profile separation
// for the problem's mode, and alternative bounds.
ValidationReport validate_problem(const SortingProblem& problem);

// Validates, then sorts every alternative against its own local reference
// set. Profile-vs-profile degrees are computed once and shared. Evaluation
// is sequential and deterministic.
std::vector<AlternativeResult> sort_all(const SortingProblem& problem);

// Same pipeline with the weighted-sum aggregation instead of the Choquet
// integral; the behaviour the method must reduce to when all interactions
// vanish.
std::vector<AlternativeResult> weighted_sort_all(
    const SortingProblem& problem, std::span<const double> weights);

}  // namespace flowsort
