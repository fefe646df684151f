#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "subset.hpp"

namespace flowsort {

// Absolute slack applied to every validity inequality: a constraint that
// misses by no more than this still passes, so capacities assembled from
// decimal inputs do not fail on representation noise.
inline constexpr double validation_tol = 1e-12;

struct ValidationReport {
  std::vector<std::string> issues;

  bool ok() const noexcept { return issues.empty(); }
  std::string joined() const;
};

// Set function given explicitly on the whole subset lattice. values()[mask]
// is the value of the subset encoded by mask; the vector has exactly 2^n
// entries. Construction checks shape only; validity (normalisation,
// monotonicity) is a separate question answered by validate_lattice.
class CapacityLattice {
public:
  CapacityLattice(int n_criteria, std::vector<double> values);

  int criteria() const noexcept { return n_; }
  double at(Subset s) const { return values_[s]; }
  const std::vector<double>& values() const noexcept { return values_; }

private:
  int n_;
  std::vector<double> values_;
};

// Moebius masses. Sets absent from the map carry mass zero, so the
// representation stays sparse for k-additive capacities. max_order is the
// largest supported |T|; storing a heavier set is a structural error.
class MobiusRepresentation {
public:
  MobiusRepresentation(int n_criteria, std::map<Subset, double> masses,
                       int max_order);

  int criteria() const noexcept { return n_; }
  int max_order() const noexcept { return max_order_; }
  double mass(Subset s) const noexcept;
  const std::map<Subset, double>& masses() const noexcept { return masses_; }

private:
  int n_;
  int max_order_;
  std::map<Subset, double> masses_;
};

// Two-additive capacity expressed through per-criterion importance (Shapley
// values) and pairwise interactions. Interactions are symmetric and stored
// under the (min, max) index key; absent pairs interact with strength zero.
class ShapleyInteractionModel {
public:
  explicit ShapleyInteractionModel(std::vector<double> shapley);
  ShapleyInteractionModel(std::vector<double> shapley,
                          std::map<std::pair<int, int>, double> interactions);

  void set_interaction(int j, int s, double value);
  double interaction(int j, int s) const noexcept;

  int criteria() const noexcept { return static_cast<int>(shapley_.size()); }
  const std::vector<double>& shapley() const noexcept { return shapley_; }
  const std::map<std::pair<int, int>, double>& interactions() const noexcept {
    return interactions_;
  }

private:
  void check_pair(int j, int s) const;

  std::vector<double> shapley_;
  std::map<std::pair<int, int>, double> interactions_;
};

// ---- validity -------------------------------------------------------------

// Checks value(empty) == 0, value(full) == 1 and monotonicity along every
// cover pair S < S + {j}. Cover pairs are enough: any chain violation shows
// up on at least one cover edge.
ValidationReport validate_lattice(const CapacityLattice& cap);

// Feasibility of a two-additive model: for every criterion j the guaranteed
// Moebius slack importance(j) - sum over partners of |interaction| / 2 must
// be nonnegative, and the importances plus pair handling must normalise.
ValidationReport validate_two_additive(const ShapleyInteractionModel& model);

// Worst-case Moebius slack per criterion; negative means infeasible at j.
std::vector<double> two_additive_slacks(const ShapleyInteractionModel& model);

// ---- conversions ----------------------------------------------------------

CapacityLattice mobius_to_lattice(const MobiusRepresentation& mobius);
MobiusRepresentation lattice_to_mobius(const CapacityLattice& cap);
MobiusRepresentation shapley_interaction_to_mobius(
    const ShapleyInteractionModel& model);
ShapleyInteractionModel mobius_to_shapley_interaction(
    const MobiusRepresentation& mobius);

// ---- indices --------------------------------------------------------------

// Interaction index of an arbitrary subset t, computed by direct summation
// over the lattice. Singletons give the Shapley value; for two-additive
// capacities pairs give the Moebius mass of the pair.
double interaction_index(const CapacityLattice& cap, Subset t);

std::vector<double> shapley_values(const MobiusRepresentation& mobius);

// ---- Choquet integral -----------------------------------------------------

// All evaluation forms require componentwise nonnegative inputs and agree on
// them to numerical noise; they differ only in the representation consumed.
double choquet_lattice(std::span<const double> values,
                       const CapacityLattice& cap);
double choquet_mobius(std::span<const double> values,
                      const MobiusRepresentation& mobius);
double choquet_two_additive(std::span<const double> values,
                            const MobiusRepresentation& mobius);
double choquet_shapley_form(std::span<const double> values,
                            const ShapleyInteractionModel& model);

// ---- aggregate model ------------------------------------------------------

// One authoritative representation plus the derived forms, materialised at
// construction and immutable afterwards, so concurrent readers need no
// locking. The Moebius form is always present; the Shapley form exists iff
// the capacity is two-additive; the explicit lattice exists iff the criteria
// count permits it.
class CapacityModel {
public:
  enum class Source { lattice, mobius, shapley_interaction };

  static CapacityModel from_lattice(CapacityLattice cap);
  static CapacityModel from_mobius(MobiusRepresentation mobius);
  static CapacityModel from_shapley_interaction(ShapleyInteractionModel model);

  Source source() const noexcept { return source_; }
  int criteria() const noexcept { return mobius_.criteria(); }
  bool two_additive() const noexcept { return shapley_.has_value(); }

  const MobiusRepresentation& mobius() const noexcept { return mobius_; }
  const ShapleyInteractionModel& shapley_interaction() const;
  const CapacityLattice& lattice() const;
  bool has_lattice() const noexcept { return lattice_.has_value(); }

  // Evaluates with the cheapest applicable form: two-additive when possible,
  // otherwise the sparse Moebius sum.
  double evaluate(std::span<const double> values) const;

  ValidationReport validate() const;

private:
  CapacityModel(Source source, MobiusRepresentation mobius);

  Source source_;
  MobiusRepresentation mobius_;
  std::optional<ShapleyInteractionModel> shapley_;
  std::optional<CapacityLattice> lattice_;
};

}  // namespace flowsort
