// Acceptance harness: one pass/fail line per gate, exit code = failure count.
// Every expected number below is pinned in this file so a drift in any layer
// (capacity algebra, degrees, flows, assignment, io) trips exactly one line.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "capacity.hpp"
#include "engine.hpp"
#include "preference.hpp"
#include "problem_io.hpp"
#include "verify.hpp"

using namespace flowsort;

namespace {

const std::string data_dir = FLOWSORT_DATA_DIR;

int failures = 0;

void report(bool ok, const std::string& what) {
  std::printf("%s: %s\n", ok ? "PASS" : "FAIL", what.c_str());
  if (!ok) ++failures;
}

std::string residual(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", value);
  return buf;
}

bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

// Gate 1: the two-criteria synergy capacity scores the qualitative
// speed/consumption table to (2.4, 2.4, 1.8).
void gate_qualitative_scores() {
  const MatrixDocument doc =
      load_matrix(data_dir + "/speed_consumption_quali.json");
  const BaselineReport result = run_baseline(doc, false);
  const std::array<double, 3> expected = {2.4, 2.4, 1.8};
  double worst = 0.0;
  bool ok = result.scores.size() == expected.size();
  for (std::size_t i = 0; ok && i < expected.size(); ++i)
    worst = std::max(worst, std::fabs(result.scores[i] - expected[i]));
  ok = ok && worst <= 1e-12;
  report(ok, "qualitative speed/consumption table scores to (2.4, 2.4, 1.8), "
             "max residual " + residual(worst));
}

// Gate 2: min-max normalisation of the raw table hits the exact rescaled
// rows and promotes the compromise alternative to the top score.
void gate_normalized_scores() {
  const MatrixDocument doc =
      load_matrix(data_dir + "/speed_consumption_raw.json");
  const BaselineReport result = run_baseline(doc, true);
  const std::array<std::array<double, 2>, 3> rows = {
      {{1.0, 0.0}, {0.2, 1.0}, {0.0, 1.0}}};
  const std::array<double, 3> scores = {0.4, 0.52, 0.4};
  double worst = 0.0;
  bool ok = result.scored.alternatives() == 3 && result.normalized;
  for (int i = 0; ok && i < 3; ++i) {
    for (int j = 0; j < 2; ++j)
      worst = std::max(worst,
                       std::fabs(result.scored.rows[i][j] - rows[i][j]));
    worst = std::max(worst, std::fabs(result.scores[i] - scores[i]));
  }
  ok = ok && worst <= 1e-12;
  report(ok, "min-max normalised raw table scores to (0.4, 0.52, 0.4), "
             "max residual " + residual(worst));
}

// Gate 3: the car capacity aggregates the degree profile (0, 0, 1, 1),
// wins on the two lighter criteria only, to exactly 0.58.
void gate_single_aggregation(const SortingProblem& car) {
  const std::array<double, 4> degrees = {0.0, 0.0, 1.0, 1.0};
  const double value = car.capacity.evaluate(degrees);
  const bool ok = near(value, 0.58, 1e-12);
  report(ok, "car capacity aggregates degree profile (0,0,1,1) to 0.58, got " +
                 std::to_string(value));
}

// Gate 4: per-criterion outranking degrees of the first car against the four
// reference profiles; sixteen exact zero/one entries.
void gate_degree_row(const SortingProblem& car) {
  const std::array<std::array<double, 4>, 4> expected = {{
      {0.0, 0.0, 0.0, 0.0},  // vs r1: beaten everywhere
      {0.0, 0.0, 1.0, 1.0},  // vs r2: price ties, acceleration loses
      {1.0, 1.0, 1.0, 1.0},  // vs r3
      {1.0, 1.0, 1.0, 1.0},  // vs r4
  }};
  bool ok = true;
  for (int h = 0; h < 4; ++h) {
    const auto got = degrees_between(car.alternatives.rows[0],
                                     car.profiles.profiles[h], car.criteria);
    for (int j = 0; j < 4; ++j) ok = ok && got[j] == expected[h][j];
  }
  report(ok, "first car's per-criterion degrees against all four profiles "
             "are the expected zero/one pattern");
}

// Gate 5: all 150 tabulated local flows (alternative plus its four profiles,
// three flow kinds, ten cars) within half a rounding unit of 3 decimals.
void gate_flow_table(const std::vector<AlternativeResult>& results) {
  // Row layout: phi+ (a, r1..r4), phi- (a, r1..r4), phi (a, r1..r4).
  const std::array<std::array<double, 15>, 10> expected = {{
      {0.645, 1, 0.563, 0.250, 0, 0.313, 0, 0.395, 0.750, 1,
       0.333, 1, 0.168, -0.500, -1},
      {0.375, 1, 0.688, 0.330, 0, 0.518, 0, 0.313, 0.563, 1,
       -0.143, 1, 0.375, -0.233, -1},
      {0.518, 1, 0.645, 0.333, 0, 0.478, 0, 0.375, 0.643, 1,
       0.040, 1, 0.270, -0.310, -1},
      {0.645, 1, 0.580, 0.250, 0, 0.330, 0, 0.395, 0.750, 1,
       0.315, 1, 0.185, -0.500, -1},
      {0.580, 1, 0.645, 0.250, 0, 0.395, 0, 0.330, 0.750, 1,
       0.185, 1, 0.315, -0.500, -1},
      {0.563, 1, 0.563, 0.250, 0, 0.313, 0, 0.313, 0.750, 1,
       0.250, 1, 0.250, -0.500, -1},
      {0.375, 1, 0.708, 0.250, 0, 0.458, 0, 0.313, 0.563, 1,
       -0.083, 1, 0.395, -0.313, -1},
      {0.395, 1, 0.750, 0.375, 0, 0.625, 0, 0.250, 0.645, 1,
       -0.230, 1, 0.500, -0.270, -1},
      {0.375, 1, 0.708, 0.313, 0, 0.520, 0, 0.313, 0.563, 1,
       -0.145, 1, 0.395, -0.250, -1},
      {0.288, 1, 0.750, 0.458, 0, 0.708, 0, 0.250, 0.538, 1,
       -0.420, 1, 0.500, -0.080, -1},
  }};
  constexpr double tol = 0.005;  // the pinned values carry 3 decimals
  double worst = 0.0;
  bool ok = results.size() == expected.size();
  for (std::size_t i = 0; ok && i < expected.size(); ++i) {
    const FlowTable& flows = results[i].flows;
    std::array<double, 15> got{};
    got[0] = flows.alt_positive();
    got[5] = flows.alt_negative();
    got[10] = flows.alt_net();
    for (int h = 0; h < 4; ++h) {
      got[1 + h] = flows.positive[h];
      got[6 + h] = flows.negative[h];
      got[11 + h] = flows.net[h];
    }
    for (int c = 0; c < 15; ++c)
      worst = std::max(worst, std::fabs(got[c] - expected[i][c]));
  }
  ok = ok && worst <= tol;
  report(ok, "all 150 local flow values for the ten cars match to 3 "
             "decimals, max residual " + residual(worst));
}

// Gate 6: the thirty category assignments (ten cars, three rules).
void gate_assignments(const std::vector<AlternativeResult>& results) {
  const std::array<std::array<int, 3>, 10> expected = {{
      {1, 1, 1}, {2, 2, 2}, {2, 2, 2}, {1, 1, 1}, {2, 2, 2},
      {2, 1, 2}, {2, 2, 2}, {2, 2, 2}, {2, 2, 2}, {3, 3, 3}}};
  bool ok = results.size() == expected.size();
  for (std::size_t i = 0; ok && i < expected.size(); ++i)
    ok = results[i].assignment.by_positive == expected[i][0] &&
         results[i].assignment.by_negative == expected[i][1] &&
         results[i].assignment.by_net == expected[i][2];
  report(ok, "all thirty category assignments (ten cars, three rules) match");
}

// Gate 7: the seven-scenario capacity study under the net rule, seventy
// assignments, including the sub-tolerance scenario being a no-op.
void gate_scenarios(const SortingProblem& car) {
  const ScenarioSet set =
      load_scenarios(data_dir + "/car_scenarios.json", car.criteria);
  const ScenarioReport result = run_scenarios(car, set, Rule::net);
  const std::array<std::array<int, 10>, 7> expected = {{
      {1, 3, 2, 2, 2, 2, 2, 3, 2, 3},   // additive reference
      {1, 2, 2, 2, 2, 2, 2, 3, 2, 3},   // mild synergy
      {1, 2, 2, 2, 2, 2, 2, 3, 2, 3},   // strong synergy
      {1, 3, 2, 2, 2, 2, 2, 3, 2, 3},   // synergy below the tie tolerance
      {1, 2, 2, 2, 2, 2, 2, 3, 2, 3},   // synergy just above it
      {1, 3, 2, 2, 2, 1, 2, 3, 2, 3},   // redundancy
      {1, 2, 2, 2, 2, 1, 2, 3, 2, 3},   // redundancy plus synergy
  }};
  bool ok = result.runs.size() == expected.size();
  for (std::size_t s = 0; ok && s < expected.size(); ++s)
    for (int i = 0; i < 10; ++i)
      ok = ok && result.runs[s].categories[i] == expected[s][i];
  ok = ok && result.runs[3].categories == result.runs[0].categories;
  report(ok, "all seventy net-rule assignments across the seven capacity "
             "scenarios match");
}

// Gate 8: the four production Choquet forms and the independent level-set
// oracle agree on random two-additive capacities at two input scales.
void gate_form_equivalence() {
  std::mt19937_64 rng(0xf10e5);
  std::uniform_int_distribution<int> n_dist(2, 6);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int round = 0; round < 10000; ++round) {
    const int n = n_dist(rng);
    const ShapleyInteractionModel model = gen_two_additive(n, rng, 0.8, 0.4);
    const MobiusRepresentation mobius = shapley_interaction_to_mobius(model);
    const CapacityLattice lattice = mobius_to_lattice(mobius);
    const double scale = (round % 2 == 0) ? 1.0 : 50.0;
    std::vector<double> x(n);
    for (double& v : x) v = scale * unit(rng);
    const double ref = oracle_choquet(x, lattice);
    for (double got : {choquet_lattice(x, lattice), choquet_mobius(x, mobius),
                       choquet_two_additive(x, mobius),
                       choquet_shapley_form(x, model)})
      worst = std::max(worst, std::fabs(got - ref));
  }
  const bool ok = worst < 1e-9;
  report(ok, "four Choquet forms agree with the level-set oracle over 10000 "
             "random capacities, max deviation " + residual(worst));
}

// Gate 9: the structural self-verification battery over 1000 generated
// problems finds zero violations and finishes within a minute.
void gate_verification_battery() {
  VerifyOptions options;
  options.seed = 2026;
  options.problems = 1000;
  options.min_criteria = 2;
  options.max_criteria = 6;
  options.max_categories = 5;
  options.max_alternatives = 20;
  options.mode = ProfileMode::strong;
  options.conditions = true;

  const auto start = std::chrono::steady_clock::now();
  const VerifySummary summary = run_verification(options);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  long failed = 0;
  for (const auto& check : summary.checks) failed += check.failed;
  char line[160];
  std::snprintf(line, sizeof line,
                "property battery over %ld generated problems: %ld "
                "violations in %.1f s (budget 60 s)",
                summary.problems, failed, seconds);
  report(summary.ok() && failed == 0 && seconds < 60.0, line);
}

// Gate 10: with every pair interaction at zero the Choquet pipeline must
// reproduce the weighted-sum pipeline, flows to 1e-12 and categories exactly.
void gate_weighted_sum_reduction() {
  const std::array<PrefShape, 5> shapes = {
      PrefShape::usual, PrefShape::u_shape, PrefShape::v_shape,
      PrefShape::level, PrefShape::linear};
  double worst = 0.0;
  bool ok = true;
  for (int i = 0; ok && i < 100; ++i) {
    InstanceConfig config;
    config.seed = 4000 + static_cast<std::uint64_t>(i);
    config.criteria = 2 + i % 5;
    config.categories = 2 + i % 4;
    config.alternatives = 8;
    config.mode = ProfileMode::strong;
    config.shapes = {PrefShape::usual, shapes[i % shapes.size()]};
    config.interaction_density = 0.0;
    const SortingProblem problem = gen_problem(config);
    const std::vector<double>& weights =
        problem.capacity.shapley_interaction().shapley();

    const auto choquet = sort_all(problem);
    const auto weighted = weighted_sort_all(problem, weights);
    ok = choquet.size() == weighted.size();
    for (std::size_t a = 0; ok && a < choquet.size(); ++a) {
      const FlowTable& f = choquet[a].flows;
      const FlowTable& g = weighted[a].flows;
      for (std::size_t e = 0; e < f.positive.size(); ++e) {
        worst = std::max(worst, std::fabs(f.positive[e] - g.positive[e]));
        worst = std::max(worst, std::fabs(f.negative[e] - g.negative[e]));
        worst = std::max(worst, std::fabs(f.net[e] - g.net[e]));
      }
      ok = choquet[a].assignment.by_positive ==
               weighted[a].assignment.by_positive &&
           choquet[a].assignment.by_negative ==
               weighted[a].assignment.by_negative &&
           choquet[a].assignment.by_net == weighted[a].assignment.by_net;
    }
  }
  ok = ok && worst <= 1e-12;
  report(ok, "interaction-free capacities reduce to the weighted-sum method "
             "over 100 problems, max flow deviation " + residual(worst));
}

// Gate 11: the fixed instance with cyclic pairwise duels still sorts both
// alternatives consistently; assignment follows flows, not duels.
void gate_cycle_illustration() {
  const PropertyReport result = condorcet_illustration();
  long passed = 0;
  for (const auto& check : result.checks) passed += check.passed;
  report(result.ok() && passed > 0,
         "cyclic pairwise duels are absorbed into consistent category "
         "assignments");
}

}  // namespace

int main() {
  try {
    gate_qualitative_scores();
    gate_normalized_scores();

    const ProblemDocument car = load_problem(data_dir + "/car_example.json");
    gate_single_aggregation(car.problem);
    gate_degree_row(car.problem);
    const std::vector<AlternativeResult> results = sort_all(car.problem);
    gate_flow_table(results);
    gate_assignments(results);
    gate_scenarios(car.problem);

    gate_form_equivalence();
    gate_verification_battery();
    gate_weighted_sum_reduction();
    gate_cycle_illustration();
  } catch (const error& e) {
    std::printf("FAIL: unexpected engine error: %s\n", e.what());
    ++failures;
  } catch (const std::exception& e) {
    std::printf("FAIL: unexpected error: %s\n", e.what());
    ++failures;
  }
  std::printf("%d of 11 gates failed\n", failures);
  return failures == 0 ? 0 : 1;
}
