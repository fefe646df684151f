#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "baselines.hpp"
#include "engine.hpp"

namespace flowsort {

// All documents share one schema tag and declare their kind. Loaders reject
// unknown keys: a typo must fail loudly, not be ignored.
inline constexpr const char* schema_tag = "flowsort-choquet/1";

struct ProblemDocument {
  SortingProblem problem;
  std::vector<Rule> rules;  // report columns; defaults to all three
};

// Parses, resolves criterion-name references and fully validates. Parse and
// shape problems throw errc::parse / errc::structural; semantic violations
// throw errc::validation listing every issue, prefixed with the source
// context (file path).
ProblemDocument load_problem(const std::string& path);
ProblemDocument problem_from_json(const nlohmann::json& doc,
                                  const std::string& context);

// Canonical document for a problem; capacity serialised in its source
// representation. Reloading yields identical assignments.
nlohmann::json problem_to_json(const SortingProblem& problem,
                               const std::vector<Rule>& rules);

struct Scenario {
  std::string name;
  ShapleyInteractionModel capacity;
};

struct ScenarioSet {
  std::vector<Scenario> scenarios;
};

// Scenario capacities reference the base problem's criteria by name, so
// loading needs those specs. Every scenario must pass validate_two_additive;
// duplicate names are a structural error.
ScenarioSet load_scenarios(const std::string& path,
                           const std::vector<CriterionSpec>& criteria);
ScenarioSet scenarios_from_json(const nlohmann::json& doc,
                                const std::vector<CriterionSpec>& criteria,
                                const std::string& context);

struct SortReport {
  std::vector<std::string> profile_names;
  std::vector<std::string> categories;
  std::vector<Rule> rules;
  std::vector<AlternativeResult> results;
};

SortReport run_sort(const SortingProblem& problem, std::vector<Rule> rules);

struct ScenarioRun {
  std::string name;
  std::vector<int> categories;  // 1-based, one per alternative
  std::vector<bool> changed;    // relative to the first scenario
};

struct ScenarioReport {
  Rule rule = Rule::net;
  std::vector<std::string> alternative_names;
  std::vector<std::string> category_labels;
  std::vector<ScenarioRun> runs;
};

// Re-sorts the base problem once per scenario capacity. The first scenario
// is the comparison baseline for change markers.
ScenarioReport run_scenarios(const SortingProblem& base,
                             const ScenarioSet& scenarios, Rule rule);

struct MatrixDocument {
  std::vector<CriterionSpec> criteria;
  DecisionMatrix matrix;
  CapacityModel capacity;
};

MatrixDocument load_matrix(const std::string& path);

struct BaselineReport {
  std::vector<std::string> criteria_names;
  bool normalized = false;
  DecisionMatrix scored;  // the matrix actually fed to the integral
  std::vector<double> scores;
};

BaselineReport run_baseline(const MatrixDocument& doc, bool normalize);

enum class ReportFormat { plain_table, csv, json };

// Aligned plain-text table: first column left, the rest right, two-space
// gutter, no trailing spaces. Shared by every plain renderer.
std::string render_table(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows);

const char* format_name(ReportFormat format) noexcept;
std::optional<ReportFormat> format_from_name(const std::string& name);

// Renderers are byte-deterministic: plain tables round to 3 decimals for
// reading, csv/json carry full precision.
std::string emit_report(const SortReport& report, ReportFormat format);
std::string emit_report(const ScenarioReport& report, ReportFormat format);
std::string emit_report(const BaselineReport& report, ReportFormat format);

}  // namespace flowsort
