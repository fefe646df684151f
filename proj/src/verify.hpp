#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "engine.hpp"
#include "problem_io.hpp"

namespace flowsort {

// Independent Choquet evaluation by decumulative level sets: sum over sorted
// levels of g_(i) * (mu(A_i) - mu(A_{i+1})).  Shares no code with the four
// production forms, so agreement is evidence rather than tautology.
double oracle_choquet(std::span<const double> values, const CapacityLattice& cap);

// Random 2-additive capacity.  Importances are drawn on the simplex; pair
// interactions are kept feasible by scaling (projection, not rejection), so
// every draw validates.  density in [0, 1] is the chance a pair interacts,
// magnitude bounds |I_js| before scaling.
ShapleyInteractionModel gen_two_additive(int criteria_count, std::mt19937_64& rng,
                                         double density, double magnitude);

// Everything a problem draw depends on.  Rebuilding with the same config
// reproduces the instance bit for bit on the same standard library.
struct InstanceConfig {
  std::uint64_t seed = 0;
  int criteria = 4;
  int categories = 3;
  int alternatives = 10;
  ProfileMode mode = ProfileMode::strong;
  std::vector<PrefShape> shapes = {PrefShape::usual};
  double interaction_density = 0.5;
  double interaction_magnitude = 0.3;
};

// Draws a valid instance: profile ladders are spaced by at least
// max(2.2 * largest threshold, 0.5) per criterion so that in strong mode all
// profile-vs-profile degrees hit 1 exactly and midpoint insertions stay
// strongly separated.  Alternatives are sampled inside the profile band.
SortingProblem gen_problem(const InstanceConfig& config);

enum class Property {
  profile_ordering,
  uniqueness,
  independency,
  neutrality,
  weak_homogeneity,
  monotonicity,
  category_conformity,
  stability1_removal,
  stability1_insertion,
  stability2_removal,
  stability2_insertion,
  negative_vs_positive,
  net_coherence,
};

const char* property_name(Property property);
std::optional<Property> property_from_name(const std::string& name);
std::vector<Property> all_properties();

struct PropertyCheck {
  std::string name;
  long passed = 0;
  long failed = 0;
  long skipped = 0;
  std::vector<std::string> notes;  // first failure carries the problem payload
};

struct PropertyReport {
  std::vector<PropertyCheck> checks;

  PropertyCheck& check(const std::string& name);
  bool ok() const;
};

// Numeric audit of the outranking degrees on every local set: range,
// complement bound, zero diagonal, monotonicity in the componentwise
// differences, and profile separation (strict; exact-one when mode is strong).
PropertyReport check_conditions(const SortingProblem& problem);

// Behavioural audit of the sorting rules.  Stability and the
// negative-vs-positive ordering require strong profile separation and fail a
// precondition otherwise.  Stability-2 cases whose side conditions do not
// hold with margin are counted as skipped, never as passes.
PropertyReport check_propositions(const SortingProblem& problem,
                                  const std::vector<Property>& which,
                                  std::uint64_t seed);

// Fixed three-criteria instance where the pairwise-preferred alternative is
// sorted below its rival: assignment follows flows against the profiles, not
// pairwise duels.  Fails if the reproduction drifts.
PropertyReport condorcet_illustration();

struct VerifyOptions {
  std::uint64_t seed = 0;
  int problems = 100;
  int min_criteria = 2;
  int max_criteria = 6;
  int max_categories = 5;
  int max_alternatives = 20;
  ProfileMode mode = ProfileMode::strong;
  std::vector<PrefShape> shapes;          // empty: all shapes (strong drops gaussian)
  std::vector<Property> properties;       // empty: all
  bool conditions = true;
};

struct VerifySummary {
  VerifyOptions options;
  long problems = 0;
  std::vector<PropertyCheck> checks;

  bool ok() const;
};

VerifySummary run_verification(const VerifyOptions& options);

nlohmann::json verify_summary_to_json(const VerifySummary& summary);
std::string render_verify_summary(const VerifySummary& summary, ReportFormat format);

}  // namespace flowsort
