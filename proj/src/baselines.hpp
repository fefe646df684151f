#pragma once

#include <span>
#include <vector>

#include "capacity.hpp"
#include "preference.hpp"

namespace flowsort {

// Rescales every column to [0, 1]: maximised criteria map their best value
// to 1, minimised criteria map their best (smallest) value to 1. A constant
// column has no spread to normalise; that is reported as a validation error
// naming the criterion rather than silently mapped.
DecisionMatrix min_max_normalize(const DecisionMatrix& matrix,
                                 std::span<const CriterionSpec> criteria);

// Scores each row directly with the capacity's Choquet integral. Rows must
// already be commensurate and nonnegative; normalisation is the caller's
// decision.
std::vector<double> direct_choquet_scores(const DecisionMatrix& matrix,
                                          const CapacityModel& capacity);

}  // namespace flowsort
