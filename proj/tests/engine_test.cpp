#include <array>
#include <vector>

#include "doctest.h"
#include "engine.hpp"
#include "errors.hpp"

using namespace flowsort;

namespace {

template <typename Fn>
void expect_error(Fn&& fn, errc expected) {
  try {
    fn();
    FAIL_CHECK("expected an error of class " << static_cast<int>(expected));
  } catch (const error& e) {
    CHECK(e.code() == expected);
  }
}

CriterionSpec usual(const std::string& name, Direction direction) {
  CriterionSpec spec;
  spec.name = name;
  spec.direction = direction;
  return spec;
}

// Ten cars against four limiting profiles; importances
// (0.25, 0.21, 0.16, 0.38) with one redundancy and one synergy.
SortingProblem car_problem() {
  SortingProblem problem{
      {usual("Price", Direction::minimize),
       usual("Acceleration", Direction::minimize),
       usual("MaxSpeed", Direction::maximize),
       usual("Consumption", Direction::minimize)},
      DecisionMatrix{
          {"a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8", "a9", "a10"},
          {{16000, 12.0, 185, 3.1},
           {15750, 13.5, 163, 3.8},
           {15050, 11.0, 173, 4.0},
           {15260, 12.0, 172, 3.3},
           {16300, 10.6, 183, 3.7},
           {16050, 10.8, 180, 3.4},
           {17000, 11.0, 170, 3.8},
           {17500, 12.9, 174, 3.5},
           {17800, 11.4, 170, 3.8},
           {17060, 13.9, 175, 3.9}}},
      ReferenceProfileSet{{"r1", "r2", "r3", "r4"},
                          {{15000, 10.5, 190, 3.0},
                           {16000, 11.5, 180, 3.4},
                           {17000, 12.5, 170, 3.8},
                           {18000, 15.0, 160, 4.2}},
                          {"K1", "K2", "K3"}},
      CapacityModel::from_shapley_interaction([] {
        ShapleyInteractionModel model({0.25, 0.21, 0.16, 0.38});
        model.set_interaction(1, 2, -0.08);
        model.set_interaction(2, 3, 0.10);
        return model;
      }()),
      ProfileMode::strict};
  return problem;
}

}  // namespace

TEST_CASE("showcase flows match the hand-computed local set") {
  const auto results = sort_all(car_problem());
  REQUIRE(results.size() == 10);

  const FlowTable& f = results[0].flows;  // a1
  REQUIRE(f.profile_count == 4);
  const double tol = 1e-12;

  CHECK(f.positive[0] == doctest::Approx(1.0).epsilon(tol));
  CHECK(f.positive[1] == doctest::Approx(0.5625).epsilon(tol));
  CHECK(f.positive[2] == doctest::Approx(0.25).epsilon(tol));
  CHECK(f.positive[3] == doctest::Approx(0.0).epsilon(tol));
  CHECK(f.alt_positive() == doctest::Approx(0.645).epsilon(tol));

  CHECK(f.negative[0] == doctest::Approx(0.0).epsilon(tol));
  CHECK(f.negative[1] == doctest::Approx(0.395).epsilon(tol));
  CHECK(f.negative[2] == doctest::Approx(0.75).epsilon(tol));
  CHECK(f.negative[3] == doctest::Approx(1.0).epsilon(tol));
  CHECK(f.alt_negative() == doctest::Approx(0.3125).epsilon(tol));

  CHECK(f.net[1] == doctest::Approx(0.1675).epsilon(tol));
  CHECK(f.alt_net() == doctest::Approx(0.3325).epsilon(tol));

  CHECK(results[0].assignment.by_positive == 1);
  CHECK(results[0].assignment.by_negative == 1);
  CHECK(results[0].assignment.by_net == 1);
}

TEST_CASE("exact flow ties resolve to the lower category, not above it") {
  const auto results = sort_all(car_problem());
  const auto& a6 = results[5];

  // a6 ties r2 exactly on the positive flow; the tie must not be broken
  // upward by floating-point luck.
  CHECK(a6.flows.alt_positive() ==
        doctest::Approx(a6.flows.positive[1]).epsilon(1e-12));
  CHECK(a6.assignment.by_positive == 2);
  CHECK(a6.assignment.by_negative == 1);
  CHECK(a6.assignment.by_net == 2);
}

TEST_CASE("all showcase assignments, three rules each") {
  const auto results = sort_all(car_problem());
  const std::vector<std::array<int, 3>> expected = {
      {1, 1, 1}, {2, 2, 2}, {2, 2, 2}, {1, 1, 1}, {2, 2, 2},
      {2, 1, 2}, {2, 2, 2}, {2, 2, 2}, {2, 2, 2}, {3, 3, 3}};
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CAPTURE(i);
    CHECK(results[i].assignment.by_positive == expected[i][0]);
    CHECK(results[i].assignment.by_negative == expected[i][1]);
    CHECK(results[i].assignment.by_net == expected[i][2]);
  }
}

TEST_CASE("alternative equal to the worst profile lands in the last category") {
  SortingProblem problem{
      {usual("c1", Direction::maximize), usual("c2", Direction::maximize)},
      DecisionMatrix{{"floor"}, {{0.0, 0.0}}},
      ReferenceProfileSet{{"r1", "r2", "r3"},
                          {{10.0, 10.0}, {5.0, 5.0}, {0.0, 0.0}},
                          {"K1", "K2"}},
      CapacityModel::from_shapley_interaction(
          ShapleyInteractionModel({0.5, 0.5})),
      ProfileMode::strict};
  const auto results = sort_all(problem);
  CHECK(results[0].assignment.by_positive == 2);
  CHECK(results[0].assignment.by_negative == 2);
  CHECK(results[0].assignment.by_net == 2);
}

TEST_CASE("equal adjacent profiles break the strict flow ordering") {
  SortingProblem problem{
      {usual("c1", Direction::maximize)},
      DecisionMatrix{{"mid"}, {{1.5}}},
      ReferenceProfileSet{{"r1", "r2", "r3"},
                          {{2.0}, {1.0}, {1.0}},
                          {"K1", "K2"}},
      CapacityModel::from_shapley_interaction(ShapleyInteractionModel({1.0})),
      ProfileMode::weak};
  expect_error([&] { sort_all(problem); }, errc::validation);
}

TEST_CASE("assignment rejects flows escaping the profile band") {
  FlowTable flows;
  flows.profile_count = 3;
  flows.positive = {0.9, 0.6, 0.3, 0.95};
  flows.negative = {0.1, 0.4, 0.7, 0.05};
  flows.net = {0.8, 0.2, -0.4, 0.9};

  expect_error([&] { assign(flows, Rule::positive); }, errc::inconsistency);
  expect_error([&] { assign(flows, Rule::negative); }, errc::inconsistency);
  expect_error([&] { assign(flows, Rule::net); }, errc::inconsistency);

  // Inside the band everything works; within tolerance of the edge too.
  flows.positive[3] = 0.3 - 1e-10;
  CHECK(assign(flows, Rule::positive) == 2);
  flows.positive[3] = 0.7;
  CHECK(assign(flows, Rule::positive) == 1);
}

TEST_CASE("rules read their own flow column") {
  FlowTable flows;
  flows.profile_count = 3;
  flows.positive = {0.9, 0.6, 0.3, 0.65};
  flows.negative = {0.1, 0.4, 0.7, 0.55};
  flows.net = {0.8, 0.2, -0.4, 0.1};

  const Assignment assignment = assign_all(flows);
  CHECK(assignment.by_positive == 1);  // beats r2 on positive flow
  CHECK(assignment.by_negative == 2);  // needs r3's level on negative flow
  CHECK(assignment.by_net == 2);
  CHECK(assignment.by(Rule::positive) == assignment.by_positive);
  CHECK(assignment.by(Rule::negative) == assignment.by_negative);
  CHECK(assignment.by(Rule::net) == assignment.by_net);
}

TEST_CASE("degree aggregation rejects capacities that are not two-additive") {
  MobiusRepresentation cubic(3, {{full_set(3), 1.0}}, 3);
  const auto capacity = CapacityModel::from_mobius(cubic);
  expect_error(
      [&] {
        choquet_outranking_degree(std::vector<double>{0.5, 0.5, 0.5}, capacity);
      },
      errc::precondition);
}

TEST_CASE("zero interactions reduce the method to weighted FlowSort") {
  SortingProblem problem = car_problem();
  const std::vector<double> weights = {0.25, 0.21, 0.16, 0.38};
  problem.capacity = CapacityModel::from_shapley_interaction(
      ShapleyInteractionModel(weights));

  const auto choquet = sort_all(problem);
  const auto weighted = weighted_sort_all(problem, weights);
  REQUIRE(choquet.size() == weighted.size());
  for (std::size_t i = 0; i < choquet.size(); ++i) {
    CAPTURE(i);
    CHECK(choquet[i].assignment.by_positive ==
          weighted[i].assignment.by_positive);
    CHECK(choquet[i].assignment.by_negative ==
          weighted[i].assignment.by_negative);
    CHECK(choquet[i].assignment.by_net == weighted[i].assignment.by_net);
    // Same sums in the same order: the flows agree to the last bit.
    CHECK(choquet[i].flows.positive == weighted[i].flows.positive);
    CHECK(choquet[i].flows.negative == weighted[i].flows.negative);
    CHECK(choquet[i].flows.net == weighted[i].flows.net);
  }
}

TEST_CASE("flow computation validates the local set shape") {
  OutrankingMatrix degrees(3);
  expect_error([&] { compute_flows(degrees, 3); }, errc::structural);
  expect_error([&] { compute_flows(degrees, 1); }, errc::structural);
}
