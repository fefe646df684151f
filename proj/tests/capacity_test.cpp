#include <cmath>
#include <random>
#include <vector>

#include "capacity.hpp"
#include "doctest.h"
#include "errors.hpp"
#include "verify.hpp"

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

// Two criteria, equal importance 0.5 each, synergy 0.2.
ShapleyInteractionModel two_criteria_model() {
  ShapleyInteractionModel model({0.5, 0.5});
  model.set_interaction(0, 1, 0.2);
  return model;
}

// Four criteria with one redundancy and one synergy; importances
// (0.25, 0.21, 0.16, 0.38), interactions (1,2) = -0.08, (2,3) = 0.10.
ShapleyInteractionModel car_model() {
  ShapleyInteractionModel model({0.25, 0.21, 0.16, 0.38});
  model.set_interaction(1, 2, -0.08);
  model.set_interaction(2, 3, 0.10);
  return model;
}

}  // namespace

TEST_CASE("moebius masses derived from importance and interactions") {
  const auto mobius = shapley_interaction_to_mobius(two_criteria_model());
  CHECK(mobius.max_order() == 2);
  CHECK(mobius.mass(singleton(0)) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(mobius.mass(singleton(1)) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(mobius.mass(pair_set(0, 1)) == doctest::Approx(0.2).epsilon(1e-12));

  const auto car = shapley_interaction_to_mobius(car_model());
  CHECK(car.mass(singleton(0)) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(car.mass(singleton(1)) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(car.mass(singleton(2)) == doctest::Approx(0.15).epsilon(1e-12));
  CHECK(car.mass(singleton(3)) == doctest::Approx(0.33).epsilon(1e-12));
  CHECK(car.mass(pair_set(1, 2)) == doctest::Approx(-0.08).epsilon(1e-12));
  CHECK(car.mass(pair_set(2, 3)) == doctest::Approx(0.10).epsilon(1e-12));
}

TEST_CASE("two-criteria integral on a small common scale") {
  const auto model = two_criteria_model();
  CHECK(choquet_shapley_form(std::vector<double>{3, 2}, model) ==
        doctest::Approx(2.4).epsilon(1e-12));
  CHECK(choquet_shapley_form(std::vector<double>{2, 3}, model) ==
        doctest::Approx(2.4).epsilon(1e-12));
  CHECK(choquet_shapley_form(std::vector<double>{1, 3}, model) ==
        doctest::Approx(1.8).epsilon(1e-12));
  CHECK(choquet_shapley_form(std::vector<double>{1, 0}, model) ==
        doctest::Approx(0.4).epsilon(1e-12));
  CHECK(choquet_shapley_form(std::vector<double>{0.2, 1}, model) ==
        doctest::Approx(0.52).epsilon(1e-12));
  CHECK(choquet_shapley_form(std::vector<double>{0, 1}, model) ==
        doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("binary degree vector evaluates to the subset's capacity value") {
  const auto model = CapacityModel::from_shapley_interaction(car_model());
  // Criteria 3 and 4 at full degree: mass(3) + mass(4) + mass(3,4).
  CHECK(model.evaluate(std::vector<double>{0, 0, 1, 1}) ==
        doctest::Approx(0.58).epsilon(1e-12));
  CHECK(model.evaluate(std::vector<double>{0, 1, 0, 0}) ==
        doctest::Approx(0.25).epsilon(1e-12));
  CHECK(model.evaluate(std::vector<double>{1, 1, 1, 1}) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(model.evaluate(std::vector<double>{0, 0, 0, 0}) ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("interaction index recovers Shapley values and pair masses") {
  const auto mobius = shapley_interaction_to_mobius(car_model());
  const auto lattice = mobius_to_lattice(mobius);

  const auto shapley = shapley_values(mobius);
  const std::vector<double> expected = {0.25, 0.21, 0.16, 0.38};
  for (int j = 0; j < 4; ++j) {
    CHECK(shapley[j] == doctest::Approx(expected[j]).epsilon(1e-12));
    CHECK(interaction_index(lattice, singleton(j)) ==
          doctest::Approx(expected[j]).epsilon(1e-12));
  }
  CHECK(interaction_index(lattice, pair_set(1, 2)) ==
        doctest::Approx(-0.08).epsilon(1e-12));
  CHECK(interaction_index(lattice, pair_set(2, 3)) ==
        doctest::Approx(0.10).epsilon(1e-12));
  CHECK(interaction_index(lattice, pair_set(0, 1)) ==
        doctest::Approx(0.0).epsilon(1e-12));

  // Shapley values always share out the full capacity.
  double total = 0.0;
  for (int j = 0; j < 4; ++j) total += shapley[j];
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("two-additive feasibility accepts balanced, rejects overdrawn") {
  CHECK(validate_two_additive(car_model()).ok());
  CHECK(validate_two_additive(two_criteria_model()).ok());

  ShapleyInteractionModel overdrawn({0.5, 0.5});
  overdrawn.set_interaction(0, 1, 1.2);
  const auto report = validate_two_additive(overdrawn);
  CHECK_FALSE(report.ok());

  const auto slacks = two_additive_slacks(overdrawn);
  CHECK(slacks[0] == doctest::Approx(-0.1).epsilon(1e-12));
  CHECK(slacks[1] == doctest::Approx(-0.1).epsilon(1e-12));

  ShapleyInteractionModel unnormalised({0.5, 0.3});
  CHECK_FALSE(validate_two_additive(unnormalised).ok());
}

TEST_CASE("representation round-trips preserve the capacity") {
  const auto model = car_model();
  const auto mobius = shapley_interaction_to_mobius(model);
  const auto lattice = mobius_to_lattice(mobius);
  CHECK(validate_lattice(lattice).ok());

  const auto mobius_back = lattice_to_mobius(lattice);
  for (Subset s = 0; s <= full_set(4); ++s)
    CHECK(mobius_back.mass(s) == doctest::Approx(mobius.mass(s)).epsilon(1e-12));

  const auto model_back = mobius_to_shapley_interaction(mobius_back);
  for (int j = 0; j < 4; ++j)
    CHECK(model_back.shapley()[j] ==
          doctest::Approx(model.shapley()[j]).epsilon(1e-12));
  for (int j = 0; j < 4; ++j)
    for (int s = j + 1; s < 4; ++s)
      CHECK(model_back.interaction(j, s) ==
            doctest::Approx(model.interaction(j, s)).epsilon(1e-12));
}

TEST_CASE("every integral form agrees with the level-set oracle") {
  std::mt19937_64 rng(20240811);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> criteria_count(2, 6);

  for (int round = 0; round < 300; ++round) {
    const int n = criteria_count(rng);
    const auto model = gen_two_additive(n, rng, 0.7, 0.35);
    const auto mobius = shapley_interaction_to_mobius(model);
    const auto lattice = mobius_to_lattice(mobius);

    std::vector<double> values(n);
    const double scale = round % 3 == 0 ? 1.0 : 40.0;
    for (double& v : values) v = unit(rng) * scale;

    const double reference = oracle_choquet(values, lattice);
    CHECK(choquet_lattice(values, lattice) ==
          doctest::Approx(reference).epsilon(1e-9));
    CHECK(choquet_mobius(values, mobius) ==
          doctest::Approx(reference).epsilon(1e-9));
    CHECK(choquet_two_additive(values, mobius) ==
          doctest::Approx(reference).epsilon(1e-9));
    CHECK(choquet_shapley_form(values, model) ==
          doctest::Approx(reference).epsilon(1e-9));
  }
}

TEST_CASE("general capacities with nonnegative masses agree with the oracle") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  for (int round = 0; round < 100; ++round) {
    const int n = 2 + static_cast<int>(unit(rng) * 4);
    // Nonnegative masses over every subset give a monotone capacity with
    // interactions of every order, not just pairs.
    std::map<Subset, double> masses;
    double total = 0.0;
    for (Subset s = 1; s <= full_set(n); ++s) {
      if (unit(rng) < 0.4) continue;
      const double m = unit(rng);
      masses[s] = m;
      total += m;
    }
    if (masses.empty()) {
      masses[full_set(n)] = 1.0;
      total = 1.0;
    }
    for (auto& [s, m] : masses) m /= total;

    const MobiusRepresentation mobius(n, masses, n);
    const auto lattice = mobius_to_lattice(mobius);
    CHECK(validate_lattice(lattice).ok());

    std::vector<double> values(n);
    for (double& v : values) v = unit(rng) * 3.0;
    const double reference = oracle_choquet(values, lattice);
    CHECK(choquet_lattice(values, lattice) ==
          doctest::Approx(reference).epsilon(1e-9));
    CHECK(choquet_mobius(values, mobius) ==
          doctest::Approx(reference).epsilon(1e-9));
  }
}

TEST_CASE("dictator and uniform capacities reduce to projection and mean") {
  const int n = 4;
  MobiusRepresentation dictator(n, {{singleton(2), 1.0}}, 1);
  const std::vector<double> values = {0.9, 0.1, 0.6, 0.3};
  CHECK(choquet_mobius(values, dictator) == doctest::Approx(0.6).epsilon(1e-12));

  std::map<Subset, double> uniform_masses;
  for (int j = 0; j < n; ++j) uniform_masses[singleton(j)] = 0.25;
  MobiusRepresentation uniform(n, uniform_masses, 1);
  CHECK(choquet_mobius(values, uniform) ==
        doctest::Approx(0.475).epsilon(1e-12));
}

TEST_CASE("integral inputs must be nonnegative and well shaped") {
  const auto model =
      CapacityModel::from_shapley_interaction(two_criteria_model());
  expect_error([&] { model.evaluate(std::vector<double>{-0.1, 0.5}); },
               errc::domain);
  expect_error([&] { model.evaluate(std::vector<double>{0.5}); },
               errc::structural);

  const auto lattice =
      mobius_to_lattice(shapley_interaction_to_mobius(model.shapley_interaction()));
  expect_error([&] { oracle_choquet(std::vector<double>{-1.0, 0.0}, lattice); },
               errc::domain);
  expect_error([&] { oracle_choquet(std::vector<double>{0.5}, lattice); },
               errc::structural);
}

TEST_CASE("lattice construction and validity guard their structure") {
  // Wrong vector length for the criteria count.
  CHECK_THROWS_AS(CapacityLattice(2, std::vector<double>{0, 0.5, 1}), error);

  // Non-monotone: the pair {0,1} is worth less than its member {0}.
  CapacityLattice shrinking(3, {0.0, 0.8, 0.5, 0.7, 0.2, 1.0, 1.0, 1.0});
  CHECK_FALSE(validate_lattice(shrinking).ok());

  // Wrong boundary values.
  CapacityLattice unnormalised(2, {0.0, 0.3, 0.4, 0.9});
  CHECK_FALSE(validate_lattice(unnormalised).ok());
  CapacityLattice nonzero_empty(2, {0.1, 0.3, 0.4, 1.0});
  CHECK_FALSE(validate_lattice(nonzero_empty).ok());

  // Dense lattices stop at the representable width.
  CHECK_THROWS_AS(CapacityLattice(max_lattice_criteria + 1,
                                  std::vector<double>(1, 0.0)),
                  error);
  CHECK_THROWS_AS(MobiusRepresentation(max_subset_criteria + 1, {}, 2), error);
}

TEST_CASE("capacity model exposes only the forms its width permits") {
  const auto small = CapacityModel::from_shapley_interaction(car_model());
  CHECK(small.two_additive());
  CHECK(small.has_lattice());
  CHECK(small.criteria() == 4);
  CHECK(small.validate().ok());

  // 24 criteria: two-additive still fine, dense lattice impossible.
  std::vector<double> wide_importance(24, 1.0 / 24);
  const auto wide = CapacityModel::from_shapley_interaction(
      ShapleyInteractionModel(wide_importance));
  CHECK(wide.two_additive());
  CHECK_FALSE(wide.has_lattice());
  CHECK(wide.validate().ok());
  CHECK(wide.evaluate(std::vector<double>(24, 1.0)) ==
        doctest::Approx(1.0).epsilon(1e-12));

  // Order-3 mass makes the model non-two-additive.
  MobiusRepresentation cubic(3, {{full_set(3), 1.0}}, 3);
  const auto deep = CapacityModel::from_mobius(cubic);
  CHECK_FALSE(deep.two_additive());
  CHECK(deep.evaluate(std::vector<double>{0.2, 0.6, 0.4}) ==
        doctest::Approx(0.2).epsilon(1e-12));
}
