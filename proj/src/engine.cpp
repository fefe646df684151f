#include "engine.hpp"

#include <cmath>
#include <functional>

#include "numfmt.hpp"

namespace flowsort {
namespace {

// Tolerance for the can't-happen guard that an alternative's flow escapes
// the band spanned by the best and worst profile flows.
constexpr double band_tol = 1e-9;

std::span<const double> row_span(const std::vector<double>& row) {
  return {row.data(), row.size()};
}

using Aggregator = std::function<double(std::span<const double>)>;

std::vector<AlternativeResult> sort_with(const SortingProblem& problem,
                                         const Aggregator& aggregate) {
  const auto issues = validate_problem(problem);
  if (!issues.ok()) fail(errc::validation, issues.joined());

  const int k1 = problem.profiles.profile_count();
  const auto criteria =
      std::span<const CriterionSpec>(problem.criteria.data(),
                                     problem.criteria.size());

  // Profile-vs-profile degrees do not depend on the alternative; aggregate
  // them once and reuse the block for every local set.
  OutrankingMatrix profile_block(k1);
  for (int x = 0; x < k1; ++x)
    for (int y = 0; y < k1; ++y) {
      if (x == y) continue;
      profile_block.at(x, y) =
          aggregate(degrees_between(row_span(problem.profiles.profiles[x]),
                                    row_span(problem.profiles.profiles[y]),
                                    criteria));
    }

  std::vector<AlternativeResult> results;
  results.reserve(problem.alternatives.alternatives());
  for (int i = 0; i < problem.alternatives.alternatives(); ++i) {
    const auto alt = row_span(problem.alternatives.rows[i]);
    OutrankingMatrix local(k1 + 1);
    for (int x = 0; x < k1; ++x)
      for (int y = 0; y < k1; ++y) local.at(x, y) = profile_block.at(x, y);
    for (int h = 0; h < k1; ++h) {
      const auto profile = row_span(problem.profiles.profiles[h]);
      local.at(k1, h) = aggregate(degrees_between(alt, profile, criteria));
      local.at(h, k1) = aggregate(degrees_between(profile, alt, criteria));
    }
    FlowTable flows = compute_flows(local, k1);
    Assignment assignment = assign_all(flows);
    results.push_back({problem.alternatives.names[i], std::move(flows),
                       assignment});
  }
  return results;
}

}  // namespace

OutrankingMatrix::OutrankingMatrix(int elements)
    : size_(elements),
      deg_(static_cast<std::size_t>(elements) * elements, 0.0) {
  if (elements < 2)
    fail(errc::structural, "outranking matrix needs at least two elements");
}

double choquet_outranking_degree(std::span<const double> degrees,
                                 const CapacityModel& capacity) {
  if (!capacity.two_additive())
    fail(errc::precondition,
         "outranking aggregation needs a two-additive capacity");
  return choquet_two_additive(degrees, capacity.mobius());
}

double weighted_outranking_degree(std::span<const double> degrees,
                                  std::span<const double> weights) {
  if (degrees.size() != weights.size())
    fail(errc::structural, "weight vector width " +
                               std::to_string(weights.size()) +
                               " does not match " +
                               std::to_string(degrees.size()) + " degrees");
  double total = 0.0;
  for (std::size_t j = 0; j < degrees.size(); ++j) {
    if (weights[j] < 0.0)
      fail(errc::domain, "weights must be nonnegative, got " + num(weights[j]));
    total += weights[j] * degrees[j];
  }
  return total;
}

OutrankingMatrix outranking_degrees(const DegreeTensor& degrees,
                                    const CapacityModel& capacity) {
  OutrankingMatrix out(degrees.elements());
  for (int x = 0; x < degrees.elements(); ++x)
    for (int y = 0; y < degrees.elements(); ++y) {
      if (x == y) continue;
      out.at(x, y) = choquet_outranking_degree(degrees.vec(x, y), capacity);
    }
  return out;
}

FlowTable compute_flows(const OutrankingMatrix& degrees, int profile_count) {
  const int sz = degrees.elements();
  if (profile_count < 2 || profile_count + 1 != sz)
    fail(errc::structural,
         "flow computation expects the local set to hold " +
             std::to_string(profile_count) + " profiles plus one alternative");
  FlowTable flows;
  flows.profile_count = profile_count;
  flows.positive.resize(sz);
  flows.negative.resize(sz);
  flows.net.resize(sz);
  const double scale = 1.0 / (sz - 1);
  for (int x = 0; x < sz; ++x) {
    double pos = 0.0;
    double neg = 0.0;
    for (int y = 0; y < sz; ++y) {
      if (y == x) continue;
      pos += degrees.at(x, y);
      neg += degrees.at(y, x);
    }
    flows.positive[x] = pos * scale;
    flows.negative[x] = neg * scale;
    flows.net[x] = flows.positive[x] - flows.negative[x];
  }
  // Strict ordering of profile flows, best to worst. Exact comparisons: a
  // tie already breaks the boundary semantics downstream.
  for (int h = 0; h + 1 < profile_count; ++h) {
    const bool ordered = flows.positive[h] > flows.positive[h + 1] &&
                         flows.negative[h] < flows.negative[h + 1] &&
                         flows.net[h] > flows.net[h + 1];
    if (!ordered)
      fail(errc::validation,
           "profile flows not strictly ordered between positions " +
               std::to_string(h) + " and " + std::to_string(h + 1) +
               " (positive " + num(flows.positive[h]) + " vs " +
               num(flows.positive[h + 1]) + ", negative " +
               num(flows.negative[h]) + " vs " + num(flows.negative[h + 1]) +
               ", net " + num(flows.net[h]) + " vs " +
               num(flows.net[h + 1]) + ")");
  }
  return flows;
}

const char* rule_name(Rule rule) noexcept {
  switch (rule) {
    case Rule::positive: return "positive";
    case Rule::negative: return "negative";
    case Rule::net: return "net";
  }
  return "?";
}

std::optional<Rule> rule_from_name(const std::string& name) {
  for (Rule rule : {Rule::positive, Rule::negative, Rule::net})
    if (name == rule_name(rule)) return rule;
  return std::nullopt;
}

int assign(const FlowTable& flows, Rule rule) {
  const int k = flows.profile_count - 1;
  const std::vector<double>* values = nullptr;
  switch (rule) {
    case Rule::positive: values = &flows.positive; break;
    case Rule::negative: values = &flows.negative; break;
    case Rule::net: values = &flows.net; break;
  }
  const double alt = (*values)[flows.profile_count];
  // For positive/net flows the best profile has the largest value; the
  // negative flow ranks the other way around.
  const double hi = rule == Rule::negative ? (*values)[k] : (*values)[0];
  const double lo = rule == Rule::negative ? (*values)[0] : (*values)[k];
  if (alt > hi + band_tol || alt < lo - band_tol)
    fail(errc::inconsistency,
         "alternative " + std::string(rule_name(rule)) + " flow " + num(alt) +
             " escapes the profile band [" + num(lo) + ", " + num(hi) + "]");
  for (int h = 1; h <= k; ++h) {
    if (rule == Rule::negative) {
      if (alt <= (*values)[h] + flow_tie_tol) return h;
    } else {
      if (alt > (*values)[h] + flow_tie_tol) return h;
    }
  }
  return k;
}

int Assignment::by(Rule rule) const {
  switch (rule) {
    case Rule::positive: return by_positive;
    case Rule::negative: return by_negative;
    case Rule::net: return by_net;
  }
  return 0;
}

Assignment assign_all(const FlowTable& flows) {
  return {assign(flows, Rule::positive), assign(flows, Rule::negative),
          assign(flows, Rule::net)};
}

ValidationReport validate_problem(const SortingProblem& problem) {
  if (problem.capacity.criteria() !=
      static_cast<int>(problem.criteria.size()))
    fail(errc::structural,
         "capacity covers " + std::to_string(problem.capacity.criteria()) +
             " criteria, problem has " +
             std::to_string(problem.criteria.size()));
  ValidationReport report;
  auto absorb = [&](ValidationReport inner) {
    report.issues.insert(report.issues.end(),
                         std::make_move_iterator(inner.issues.begin()),
                         std::make_move_iterator(inner.issues.end()));
  };
  for (const auto& spec : problem.criteria) absorb(validate_criterion(spec));
  absorb(problem.capacity.validate());
  const auto criteria = std::span<const CriterionSpec>(
      problem.criteria.data(), problem.criteria.size());
  // Degree aggregation below assumes a plausible model; skip it when the
  // basics are already broken.
  if (report.ok())
    absorb(validate_profiles(problem.profiles, criteria, problem.mode,
                             &problem.capacity));
  absorb(validate_alternative_bounds(problem.alternatives, problem.profiles,
                                     criteria));
  return report;
}

std::vector<AlternativeResult> sort_all(const SortingProblem& problem) {
  const CapacityModel& capacity = problem.capacity;
  return sort_with(problem, [&capacity](std::span<const double> degrees) {
    return choquet_outranking_degree(degrees, capacity);
  });
}

std::vector<AlternativeResult> weighted_sort_all(
    const SortingProblem& problem, std::span<const double> weights) {
  if (weights.size() != problem.criteria.size())
    fail(errc::structural, "weight vector width " +
                               std::to_string(weights.size()) +
                               " does not match " +
                               std::to_string(problem.criteria.size()) +
                               " criteria");
  return sort_with(problem, [weights](std::span<const double> degrees) {
    return weighted_outranking_degree(degrees, weights);
  });
}

}  // namespace flowsort
