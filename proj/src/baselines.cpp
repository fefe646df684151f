#include "baselines.hpp"

#include <algorithm>

#include "errors.hpp"
#include "numfmt.hpp"

namespace flowsort {

DecisionMatrix min_max_normalize(const DecisionMatrix& matrix,
                                 std::span<const CriterionSpec> criteria) {
  if (matrix.alternatives() == 0)
    fail(errc::structural, "nothing to normalise: no alternatives");
  for (const auto& row : matrix.rows)
    if (row.size() != criteria.size())
      fail(errc::structural, "row width does not match criteria");
  DecisionMatrix out;
  out.names = matrix.names;
  out.rows.assign(matrix.rows.size(),
                  std::vector<double>(criteria.size(), 0.0));
  for (std::size_t j = 0; j < criteria.size(); ++j) {
    double lo = matrix.rows[0][j];
    double hi = lo;
    for (const auto& row : matrix.rows) {
      lo = std::min(lo, row[j]);
      hi = std::max(hi, row[j]);
    }
    if (lo == hi)
      fail(errc::validation,
           "criterion '" + criteria[j].name + "' is constant at " + num(lo) +
               "; min-max normalisation is undefined");
    const double spread = hi - lo;
    for (std::size_t i = 0; i < matrix.rows.size(); ++i)
      out.rows[i][j] = criteria[j].direction == Direction::maximize
                           ? (matrix.rows[i][j] - lo) / spread
                           : (hi - matrix.rows[i][j]) / spread;
  }
  return out;
}

std::vector<double> direct_choquet_scores(const DecisionMatrix& matrix,
                                          const CapacityModel& capacity) {
  std::vector<double> scores;
  scores.reserve(matrix.rows.size());
  for (const auto& row : matrix.rows)
    scores.push_back(capacity.evaluate({row.data(), row.size()}));
  return scores;
}

}  // namespace flowsort
