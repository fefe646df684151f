#include "capacity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "numfmt.hpp"

namespace flowsort {
namespace {

constexpr int max_reported_issues = 100;

std::string subset_str(Subset s) {
  std::string out = "{";
  bool first = true;
  for (int j = 0; s >> j; ++j) {
    if (!subset_contains(s, j)) continue;
    if (!first) out += ",";
    out += std::to_string(j);
    first = false;
  }
  return out + "}";
}

void check_criteria_count(int n) {
  if (n < 1) fail(errc::structural, "capacity needs at least one criterion");
  if (n > max_subset_criteria)
    fail(errc::structural, "subset masks support at most " +
                               std::to_string(max_subset_criteria) +
                               " criteria, got " + std::to_string(n));
}

void check_values_shape(std::span<const double> values, int n,
                        const char* what) {
  if (static_cast<int>(values.size()) != n)
    fail(errc::structural, std::string(what) + ": got " +
                               std::to_string(values.size()) +
                               " values for " + std::to_string(n) +
                               " criteria");
  for (double v : values)
    if (!(v >= 0.0))
      fail(errc::domain, std::string(what) +
                             ": inputs must be nonnegative, got " + num(v));
}

// Binomial coefficients as exact doubles; n stays <= max_lattice_criteria so
// every value fits the 53-bit mantissa.
double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace

std::string ValidationReport::joined() const {
  std::string out;
  for (const auto& issue : issues) {
    if (!out.empty()) out += "; ";
    out += issue;
  }
  return out;
}

CapacityLattice::CapacityLattice(int n_criteria, std::vector<double> values)
    : n_(n_criteria), values_(std::move(values)) {
  check_criteria_count(n_);
  if (n_ > max_lattice_criteria)
    fail(errc::structural,
         "explicit lattice supports at most " +
             std::to_string(max_lattice_criteria) + " criteria, got " +
             std::to_string(n_));
  const std::size_t want = std::size_t{1} << n_;
  if (values_.size() != want)
    fail(errc::structural, "lattice over " + std::to_string(n_) +
                               " criteria needs " + std::to_string(want) +
                               " values, got " +
                               std::to_string(values_.size()));
}

MobiusRepresentation::MobiusRepresentation(int n_criteria,
                                           std::map<Subset, double> masses,
                                           int max_order)
    : n_(n_criteria), max_order_(max_order), masses_(std::move(masses)) {
  check_criteria_count(n_);
  if (max_order_ < 1 || max_order_ > n_)
    fail(errc::structural, "Moebius max order " + std::to_string(max_order_) +
                               " outside [1, " + std::to_string(n_) + "]");
  for (const auto& [set, mass] : masses_) {
    (void)mass;
    if ((set & ~full_set(n_)) != 0)
      fail(errc::structural, "Moebius set " + subset_str(set) +
                                 " references criteria beyond index " +
                                 std::to_string(n_ - 1));
    if (subset_size(set) > max_order_)
      fail(errc::structural, "Moebius set " + subset_str(set) +
                                 " exceeds max order " +
                                 std::to_string(max_order_));
  }
}

double MobiusRepresentation::mass(Subset s) const noexcept {
  auto it = masses_.find(s);
  return it == masses_.end() ? 0.0 : it->second;
}

ShapleyInteractionModel::ShapleyInteractionModel(std::vector<double> shapley)
    : shapley_(std::move(shapley)) {
  check_criteria_count(static_cast<int>(shapley_.size()));
}

ShapleyInteractionModel::ShapleyInteractionModel(
    std::vector<double> shapley,
    std::map<std::pair<int, int>, double> interactions)
    : ShapleyInteractionModel(std::move(shapley)) {
  for (const auto& [key, value] : interactions)
    set_interaction(key.first, key.second, value);
}

void ShapleyInteractionModel::check_pair(int j, int s) const {
  const int n = criteria();
  if (j < 0 || j >= n || s < 0 || s >= n)
    fail(errc::structural, "interaction pair (" + std::to_string(j) + "," +
                               std::to_string(s) +
                               ") outside criterion range 0.." +
                               std::to_string(n - 1));
  if (j == s)
    fail(errc::structural,
         "criterion " + std::to_string(j) + " cannot interact with itself");
}

void ShapleyInteractionModel::set_interaction(int j, int s, double value) {
  check_pair(j, s);
  interactions_[{std::min(j, s), std::max(j, s)}] = value;
}

double ShapleyInteractionModel::interaction(int j, int s) const noexcept {
  auto it = interactions_.find({std::min(j, s), std::max(j, s)});
  return it == interactions_.end() ? 0.0 : it->second;
}

ValidationReport validate_lattice(const CapacityLattice& cap) {
  ValidationReport report;
  auto add = [&](std::string issue) {
    if (static_cast<int>(report.issues.size()) < max_reported_issues)
      report.issues.push_back(std::move(issue));
  };
  const auto& v = cap.values();
  if (std::abs(v[0]) > validation_tol)
    add("value of the empty set is " + num(v[0]) + ", expected 0");
  const Subset full = full_set(cap.criteria());
  if (std::abs(v[full] - 1.0) > validation_tol)
    add("value of the full set is " + num(v[full]) + ", expected 1");
  for (Subset s = 0; s <= full; ++s) {
    for (int j = 0; j < cap.criteria(); ++j) {
      if (subset_contains(s, j)) continue;
      const Subset grown = s | singleton(j);
      if (v[grown] < v[s] - validation_tol)
        add("monotonicity fails adding criterion " + std::to_string(j) +
            " to " + subset_str(s) + ": " + num(v[s]) + " -> " +
            num(v[grown]));
    }
    if (static_cast<int>(report.issues.size()) >= max_reported_issues) {
      report.issues.push_back("(further issues suppressed)");
      break;
    }
  }
  return report;
}

std::vector<double> two_additive_slacks(const ShapleyInteractionModel& model) {
  const int n = model.criteria();
  std::vector<double> slacks(model.shapley().begin(), model.shapley().end());
  for (int j = 0; j < n; ++j)
    for (int s = 0; s < n; ++s)
      if (s != j) slacks[j] -= std::abs(model.interaction(j, s)) / 2.0;
  return slacks;
}

ValidationReport validate_two_additive(const ShapleyInteractionModel& model) {
  ValidationReport report;
  const auto slacks = two_additive_slacks(model);
  for (int j = 0; j < model.criteria(); ++j)
    if (slacks[j] < -validation_tol)
      report.issues.push_back(
          "criterion " + std::to_string(j) +
          " lacks Moebius slack: importance minus half the summed absolute "
          "interactions is " +
          num(slacks[j]));
  const double total = std::accumulate(model.shapley().begin(),
                                       model.shapley().end(), 0.0);
  if (std::abs(total - 1.0) > validation_tol)
    report.issues.push_back("importances sum to " + num(total) +
                            ", expected 1");
  return report;
}

CapacityLattice mobius_to_lattice(const MobiusRepresentation& mobius) {
  const int n = mobius.criteria();
  if (n > max_lattice_criteria)
    fail(errc::precondition,
         "cannot materialise a lattice over " + std::to_string(n) +
             " criteria (cap is " + std::to_string(max_lattice_criteria) +
             ")");
  std::vector<double> dense(std::size_t{1} << n, 0.0);
  for (const auto& [set, mass] : mobius.masses()) dense[set] = mass;
  // Zeta transform: after processing bit j, dense[S] holds the sum of masses
  // over subsets of S that may differ from S only in already-processed bits.
  for (int j = 0; j < n; ++j)
    for (Subset s = 0; s < dense.size(); ++s)
      if (subset_contains(s, j)) dense[s] += dense[s ^ singleton(j)];
  return CapacityLattice(n, std::move(dense));
}

MobiusRepresentation lattice_to_mobius(const CapacityLattice& cap) {
  const int n = cap.criteria();
  std::vector<double> dense = cap.values();
  for (int j = 0; j < n; ++j)
    for (Subset s = 0; s < dense.size(); ++s)
      if (subset_contains(s, j)) dense[s] -= dense[s ^ singleton(j)];
  std::map<Subset, double> masses;
  for (Subset s = 0; s < dense.size(); ++s)
    if (dense[s] != 0.0) masses[s] = dense[s];
  return MobiusRepresentation(n, std::move(masses), n);
}

MobiusRepresentation shapley_interaction_to_mobius(
    const ShapleyInteractionModel& model) {
  const int n = model.criteria();
  std::map<Subset, double> masses;
  for (const auto& [key, value] : model.interactions())
    if (value != 0.0) masses[pair_set(key.first, key.second)] = value;
  for (int j = 0; j < n; ++j) {
    double m = model.shapley()[j];
    for (int s = 0; s < n; ++s)
      if (s != j) m -= model.interaction(j, s) / 2.0;
    if (m != 0.0) masses[singleton(j)] = m;
  }
  return MobiusRepresentation(n, std::move(masses), std::min(2, n));
}

ShapleyInteractionModel mobius_to_shapley_interaction(
    const MobiusRepresentation& mobius) {
  // Masses on more than two criteria within validation noise are conversion
  // residue and drop out; real mass there has no two-additive form.
  for (const auto& [set, mass] : mobius.masses())
    if (subset_size(set) > 2 && std::abs(mass) > validation_tol)
      fail(errc::precondition,
           "importance/interaction form exists only for two-additive "
           "capacities; " +
               subset_str(set) + " carries mass " + std::to_string(mass));
  ShapleyInteractionModel model(shapley_values(mobius));
  for (const auto& [set, mass] : mobius.masses()) {
    if (subset_size(set) != 2) continue;
    const int j = std::countr_zero(set);
    const int s = std::countr_zero(set ^ singleton(j));
    model.set_interaction(j, s, mass);
  }
  return model;
}

double interaction_index(const CapacityLattice& cap, Subset t) {
  const int n = cap.criteria();
  if (t == 0) fail(errc::domain, "interaction index needs a nonempty subset");
  if ((t & ~full_set(n)) != 0)
    fail(errc::structural, "subset " + subset_str(t) +
                               " references criteria beyond index " +
                               std::to_string(n - 1));
  const Subset rest = full_set(n) & ~t;
  const int outside = n - subset_size(t);
  std::vector<double> weight(outside + 1);
  for (int k = 0; k <= outside; ++k)
    weight[k] = 1.0 / ((outside + 1) * binomial(outside, k));
  const int t_size = subset_size(t);
  double total = 0.0;
  // Enumerates K over subsets of the complement, then the signed inner sum
  // over subsets L of t; the (k,l) = (rest & mask) trick walks submasks.
  Subset k_set = 0;
  while (true) {
    double inner = 0.0;
    Subset l_set = 0;
    while (true) {
      const double sign = ((t_size - subset_size(l_set)) % 2 == 0) ? 1.0 : -1.0;
      inner += sign * cap.at(k_set | l_set);
      if (l_set == t) break;
      l_set = (l_set - t) & t;
    }
    total += weight[subset_size(k_set)] * inner;
    if (k_set == rest) break;
    k_set = (k_set - rest) & rest;
  }
  return total;
}

std::vector<double> shapley_values(const MobiusRepresentation& mobius) {
  std::vector<double> values(mobius.criteria(), 0.0);
  for (const auto& [set, mass] : mobius.masses()) {
    if (set == 0) continue;
    const double share = mass / subset_size(set);
    for (int j = 0; j < mobius.criteria(); ++j)
      if (subset_contains(set, j)) values[j] += share;
  }
  return values;
}

double choquet_lattice(std::span<const double> values,
                       const CapacityLattice& cap) {
  const int n = cap.criteria();
  check_values_shape(values, n, "Choquet (lattice form)");
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  // Ascending by value, ties by index: tie terms contribute zero either way,
  // but the pinned order keeps evaluation bit-for-bit reproducible.
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return values[a] != values[b] ? values[a] < values[b] : a < b;
  });
  Subset remaining = full_set(n);
  double prev = 0.0;
  double total = 0.0;
  for (int idx : order) {
    total += (values[idx] - prev) * cap.at(remaining);
    prev = values[idx];
    remaining &= ~singleton(idx);
  }
  return total;
}

double choquet_mobius(std::span<const double> values,
                      const MobiusRepresentation& mobius) {
  check_values_shape(values, mobius.criteria(), "Choquet (Moebius form)");
  double total = 0.0;
  for (const auto& [set, mass] : mobius.masses()) {
    if (set == 0) continue;
    double lo = values[std::countr_zero(set)];
    for (int j = std::countr_zero(set) + 1; set >> j; ++j)
      if (subset_contains(set, j)) lo = std::min(lo, values[j]);
    total += mass * lo;
  }
  return total;
}

double choquet_two_additive(std::span<const double> values,
                            const MobiusRepresentation& mobius) {
  if (mobius.max_order() > 2)
    fail(errc::precondition,
         "two-additive evaluation needs max order <= 2, got " +
             std::to_string(mobius.max_order()));
  check_values_shape(values, mobius.criteria(), "Choquet (two-additive form)");
  double total = 0.0;
  for (const auto& [set, mass] : mobius.masses()) {
    if (set == 0) continue;
    const int j = std::countr_zero(set);
    if (subset_size(set) == 1) {
      total += mass * values[j];
    } else {
      const int s = std::countr_zero(set ^ singleton(j));
      total += mass * std::min(values[j], values[s]);
    }
  }
  return total;
}

double choquet_shapley_form(std::span<const double> values,
                            const ShapleyInteractionModel& model) {
  const int n = model.criteria();
  check_values_shape(values, n, "Choquet (importance/interaction form)");
  double total = 0.0;
  for (const auto& [key, inter] : model.interactions()) {
    const auto [j, s] = key;
    if (inter > 0.0)
      total += std::min(values[j], values[s]) * inter;
    else if (inter < 0.0)
      total += std::max(values[j], values[s]) * -inter;
  }
  for (int j = 0; j < n; ++j) {
    double coeff = model.shapley()[j];
    for (int s = 0; s < n; ++s)
      if (s != j) coeff -= std::abs(model.interaction(j, s)) / 2.0;
    total += values[j] * coeff;
  }
  return total;
}

namespace {

// Moebius masses heavier than two criteria that sit within validation noise
// are conversion residue, not structure: dropping them lets capacities that
// arrive via the lattice route keep their two-additive evaluation path.
MobiusRepresentation collapse_to_two_additive_if_noise(
    MobiusRepresentation mobius) {
  if (mobius.max_order() <= 2) return mobius;
  std::map<Subset, double> kept;
  for (const auto& [set, mass] : mobius.masses()) {
    if (subset_size(set) > 2) {
      if (std::abs(mass) > validation_tol) return mobius;
    } else if (mass != 0.0) {
      kept[set] = mass;
    }
  }
  return MobiusRepresentation(mobius.criteria(), std::move(kept),
                              std::min(2, mobius.criteria()));
}

}  // namespace

CapacityModel::CapacityModel(Source source, MobiusRepresentation mobius)
    : source_(source), mobius_(std::move(mobius)) {}

CapacityModel CapacityModel::from_lattice(CapacityLattice cap) {
  CapacityModel model(Source::lattice,
                      collapse_to_two_additive_if_noise(lattice_to_mobius(cap)));
  if (model.mobius_.max_order() <= 2)
    model.shapley_ = mobius_to_shapley_interaction(model.mobius_);
  model.lattice_ = std::move(cap);
  return model;
}

CapacityModel CapacityModel::from_mobius(MobiusRepresentation mobius) {
  CapacityModel model(Source::mobius,
                      collapse_to_two_additive_if_noise(std::move(mobius)));
  if (model.mobius_.max_order() <= 2)
    model.shapley_ = mobius_to_shapley_interaction(model.mobius_);
  if (model.criteria() <= max_lattice_criteria)
    model.lattice_ = mobius_to_lattice(model.mobius_);
  return model;
}

CapacityModel CapacityModel::from_shapley_interaction(
    ShapleyInteractionModel shapley) {
  CapacityModel model(Source::shapley_interaction,
                      shapley_interaction_to_mobius(shapley));
  model.shapley_ = std::move(shapley);
  if (model.criteria() <= max_lattice_criteria)
    model.lattice_ = mobius_to_lattice(model.mobius_);
  return model;
}

const ShapleyInteractionModel& CapacityModel::shapley_interaction() const {
  if (!shapley_)
    fail(errc::precondition,
         "capacity is not two-additive; no importance/interaction form");
  return *shapley_;
}

const CapacityLattice& CapacityModel::lattice() const {
  if (!lattice_)
    fail(errc::precondition,
         "no explicit lattice: capacity exceeds the criteria cap");
  return *lattice_;
}

double CapacityModel::evaluate(std::span<const double> values) const {
  return two_additive() ? choquet_two_additive(values, mobius_)
                        : choquet_mobius(values, mobius_);
}

ValidationReport CapacityModel::validate() const {
  switch (source_) {
    case Source::lattice:
      return validate_lattice(*lattice_);
    case Source::shapley_interaction:
      return validate_two_additive(*shapley_);
    case Source::mobius:
      break;
  }
  ValidationReport report;
  const double empty_mass = mobius_.mass(0);
  if (std::abs(empty_mass) > validation_tol)
    report.issues.push_back("empty set carries Moebius mass " +
                            num(empty_mass) + ", expected 0");
  if (two_additive()) {
    auto inner = validate_two_additive(mobius_to_shapley_interaction(mobius_));
    report.issues.insert(report.issues.end(), inner.issues.begin(),
                         inner.issues.end());
    return report;
  }
  if (!lattice_)
    fail(errc::precondition,
         "general Moebius capacity beyond the lattice cap cannot be "
         "validated");
  auto inner = validate_lattice(*lattice_);
  report.issues.insert(report.issues.end(), inner.issues.begin(),
                       inner.issues.end());
  return report;
}

}  // namespace flowsort
