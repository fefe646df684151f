#include "flowsort/flowsort.h"

#include <algorithm>
#include <cstring>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "engine.hpp"
#include "errors.hpp"
#include "problem_io.hpp"
#include "verify.hpp"

using namespace flowsort;

struct fs_problem {
  ProblemDocument doc;
};
struct fs_result {
  SortReport report;
};
struct fs_scenarios {
  ScenarioSet set;
};
struct fs_scenario_result {
  ScenarioReport report;
};
struct fs_matrix {
  MatrixDocument doc;
};

namespace {

thread_local std::string last_error;

int set_error(int code, const std::string& message) {
  last_error = message;
  return code;
}

int map_code(errc code) {
  switch (code) {
    case errc::parse:
    case errc::structural:
      return FS_ERR_PARSE;
    case errc::domain:
    case errc::precondition:
    case errc::validation:
      return FS_ERR_VALIDATION;
    case errc::inconsistency:
      return FS_ERR_INCONSISTENCY;
  }
  return FS_ERR_INCONSISTENCY;
}

// Exceptions stop at this boundary; anything unrecognised is an internal
// contract violation, not a caller mistake.
template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const error& e) {
    return set_error(map_code(e.code()), e.what());
  } catch (const std::exception& e) {
    return set_error(FS_ERR_INCONSISTENCY,
                     std::string("unexpected error: ") + e.what());
  } catch (...) {
    return set_error(FS_ERR_INCONSISTENCY, "unexpected non-standard error");
  }
}

int require(const void* pointer, const char* what) {
  if (pointer) return FS_OK;
  return set_error(FS_ERR_ARGUMENT, std::string(what) + " must not be NULL");
}

char* copy_string(const std::string& text) {
  char* out = new char[text.size() + 1];
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

std::vector<std::string> split_list(const char* text) {
  std::vector<std::string> out;
  if (!text) return out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    const auto begin = item.find_first_not_of(" \t");
    if (begin == std::string::npos) continue;
    const auto end = item.find_last_not_of(" \t");
    out.push_back(item.substr(begin, end - begin + 1));
  }
  return out;
}

int parse_rules(const char* text, std::vector<Rule>& out) {
  out.clear();
  for (const auto& name : split_list(text)) {
    const auto rule = rule_from_name(name);
    if (!rule)
      return set_error(FS_ERR_ARGUMENT, "unknown rule \"" + name + "\"");
    if (std::find(out.begin(), out.end(), *rule) == out.end())
      out.push_back(*rule);
  }
  if (out.empty()) out = {Rule::positive, Rule::negative, Rule::net};
  return FS_OK;
}

int parse_format(const char* text, ReportFormat& out) {
  const std::string name = text && *text ? text : "plain";
  const auto format = format_from_name(name);
  if (!format)
    return set_error(FS_ERR_ARGUMENT, "unknown format \"" + name + "\"");
  out = *format;
  return FS_OK;
}

}  // namespace

extern "C" {

const char* fs_last_error(void) { return last_error.c_str(); }

void fs_string_free(char* text) { delete[] text; }

/* ---- problems ------------------------------------------------------------ */

int fs_problem_load(const char* path, fs_problem** out) {
  if (int rc = require(path, "path"); rc != FS_OK) return rc;
  if (int rc = require(out, "out"); rc != FS_OK) return rc;
  return guarded([&] {
    auto handle = std::make_unique<fs_problem>(load_problem(path));
    *out = handle.release();
    return FS_OK;
  });
}

int fs_problem_from_json(const char* text, fs_problem** out) {
  if (int rc = require(text, "text"); rc != FS_OK) return rc;
  if (int rc = require(out, "out"); rc != FS_OK) return rc;
  return guarded([&] {
    nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
    if (doc.is_discarded())
      fail(errc::parse, "inline document is not valid JSON");
    auto handle =
        std::make_unique<fs_problem>(problem_from_json(doc, "inline document"));
    *out = handle.release();
    return FS_OK;
  });
}

void fs_problem_free(fs_problem* problem) { delete problem; }

int fs_problem_criteria(const fs_problem* problem, int* out) {
  if (int rc = require(problem, "problem"); rc != FS_OK) return rc;
  if (int rc = require(out, "out"); rc != FS_OK) return rc;
  *out = static_cast<int>(problem->doc.problem.criteria.size());
  return FS_OK;
}

int fs_problem_alternatives(const fs_problem* problem, int* out) {
  if (int rc = require(problem, "problem"); rc != FS_OK) return rc;
  if (int rc = require(out, "out"); rc != FS_OK) return rc;
  *out = problem->doc.problem.alternatives.alternatives();
  return FS_OK;
}

int fs_problem_categories(const fs_problem* problem, int* out) {
  if (int rc = require(problem, "problem"); rc != FS_OK) return rc;
  if (int rc = require(out, "out"); rc != FS_OK) return rc;
  *out = problem->doc.problem.profiles.category_count();
  return FS_OK;
}

/* ---- sorting --------------------------------------------------------------- */

int fs_sort(const fs_problem* problem, const char* rules, fs_result** out) {
  if (int rc = require(problem, "problem"); rc != FS_OK) return rc;
  if (int rc = require(out, "out"); rc != FS_OK) return rc;
  std::vector<Rule> selected;
  if (rules && *rules) {
    if (int rc = parse_rules(rules, selected); rc != FS_OK) return rc;
  } else {
    selected = problem->doc.rules;
  }
  return guarded([&] {
    auto handle =
        std::make_unique<fs_result>(run_sort(problem->doc.problem, selected));
    *out = handle.release();
    return FS_OK;
  });
}

void fs_result_free(fs_result* result) { delete result; }

int fs_result_alternative_count(const fs_result* result, int* out) {
  if (int rc = require(result, "result"); rc != FS_OK) return rc;
  if (int rc = require(out, "out"); rc != FS_OK) return rc;
  *out = static_cast<int>(result->report.results.size());
  return FS_OK;
}

int fs_result_category(const fs_result* result, int alternative,
                       const char* rule, int* out) {
  if (int rc = require(result, "result"); rc != FS_OK) return rc;
  if (int rc = require(rule, "rule"); rc != FS_OK) return rc;
  if (int rc = require(out, "out"); rc != FS_OK) return rc;
  if (alternative < 0 ||
      alternative >= static_cast<int>(result->report.results.size()))
    return set_error(FS_ERR_ARGUMENT, "alternative index out of range");
  const auto parsed = rule_from_name(rule);
  if (!parsed)
    return set_error(FS_ERR_ARGUMENT,
                     "unknown rule \"" + std::string(rule) + "\"");
  const auto& rules = result->report.rules;
  if (std::find(rules.begin(), rules.end(), *parsed) == rules.end())
    return set_error(FS_ERR_ARGUMENT, "rule \"" + std::string(rule) +
                                          "\" was not part of this sort");
  *out = result->report.results[alternative].assignment.by(*parsed);
  return FS_OK;
}

int fs_result_render(const fs_result* result, const char* format, char** out) {
  if (int rc = require(result, "result"); rc != FS_OK) return rc;
  if (int rc = require(out, "out"); rc != FS_OK) return rc;
  ReportFormat parsed;
  if (int rc = parse_format(format, parsed); rc != FS_OK) return rc;
  return guarded([&] {
    *out = copy_string(emit_report(result->report, parsed));
    return FS_OK;
  });
}

/* ---- scenarios -------------------------------------------------------------- */

int fs_scenarios_load(const fs_problem* problem, const char* path,
                      fs_scenarios** out) {
  if (int rc = require(problem, "problem"); rc != FS_OK) return rc;
  if (int rc = require(path, "path"); rc != FS_OK) return rc;
  if (int rc = require(out, "out"); rc != FS_OK) return rc;
  return guarded([&] {
    auto handle = std::make_unique<fs_scenarios>(
        load_scenarios(path, problem->doc.problem.criteria));
    *out = handle.release();
    return FS_OK;
  });
}

void fs_scenarios_free(fs_scenarios* scenarios) { delete scenarios; }

int fs_scenarios_run(const fs_problem* problem, const fs_scenarios* scenarios,
                     const char* rule, fs_scenario_result** out) {
  if (int rc = require(problem, "problem"); rc != FS_OK) return rc;
  if (int rc = require(scenarios, "scenarios"); rc != FS_OK) return rc;
  if (int rc = require(out, "out"); rc != FS_OK) return rc;
  Rule selected = Rule::net;
  if (rule && *rule) {
    const auto parsed = rule_from_name(rule);
    if (!parsed)
      return set_error(FS_ERR_ARGUMENT,
                       "unknown rule \"" + std::string(rule) + "\"");
    selected = *parsed;
  }
  return guarded([&] {
    auto handle = std::make_unique<fs_scenario_result>(
        run_scenarios(problem->doc.problem, scenarios->set, selected));
    *out = handle.release();
    return FS_OK;
  });
}

void fs_scenario_result_free(fs_scenario_result* result) { delete result; }

int fs_scenario_result_render(const fs_scenario_result* result,
                              const char* format, char** out) {
  if (int rc = require(result, "result"); rc != FS_OK) return rc;
  if (int rc = require(out, "out"); rc != FS_OK) return rc;
  ReportFormat parsed;
  if (int rc = parse_format(format, parsed); rc != FS_OK) return rc;
  return guarded([&] {
    *out = copy_string(emit_report(result->report, parsed));
    return FS_OK;
  });
}

/* ---- baseline ---------------------------------------------------------------- */

int fs_matrix_load(const char* path, fs_matrix** out) {
  if (int rc = require(path, "path"); rc != FS_OK) return rc;
  if (int rc = require(out, "out"); rc != FS_OK) return rc;
  return guarded([&] {
    auto handle = std::make_unique<fs_matrix>(load_matrix(path));
    *out = handle.release();
    return FS_OK;
  });
}

void fs_matrix_free(fs_matrix* matrix) { delete matrix; }

int fs_baseline_run(const fs_matrix* matrix, int normalize, const char* format,
                    char** out) {
  if (int rc = require(matrix, "matrix"); rc != FS_OK) return rc;
  if (int rc = require(out, "out"); rc != FS_OK) return rc;
  ReportFormat parsed;
  if (int rc = parse_format(format, parsed); rc != FS_OK) return rc;
  return guarded([&] {
    *out = copy_string(emit_report(run_baseline(matrix->doc, normalize != 0),
                                   parsed));
    return FS_OK;
  });
}

/* ---- verification ------------------------------------------------------------ */

void fs_verify_options_init(fs_verify_options* options) {
  if (!options) return;
  options->seed = 0;
  options->problems = 100;
  options->min_criteria = 2;
  options->max_criteria = 6;
  options->max_categories = 5;
  options->max_alternatives = 20;
  options->mode = nullptr;
  options->shapes = nullptr;
  options->properties = nullptr;
  options->conditions = 1;
}

int fs_verify(const fs_verify_options* options, const char* format, char** out,
              int* ok) {
  if (int rc = require(options, "options"); rc != FS_OK) return rc;
  if (int rc = require(out, "out"); rc != FS_OK) return rc;
  if (int rc = require(ok, "ok"); rc != FS_OK) return rc;
  ReportFormat parsed_format;
  if (int rc = parse_format(format, parsed_format); rc != FS_OK) return rc;

  VerifyOptions opts;
  opts.seed = options->seed;
  opts.problems = options->problems;
  opts.min_criteria = options->min_criteria;
  opts.max_criteria = options->max_criteria;
  opts.max_categories = options->max_categories;
  opts.max_alternatives = options->max_alternatives;
  opts.conditions = options->conditions != 0;
  if (options->mode && *options->mode) {
    const auto mode = profile_mode_from_name(options->mode);
    if (!mode)
      return set_error(FS_ERR_ARGUMENT, "unknown profile mode \"" +
                                            std::string(options->mode) + "\"");
    opts.mode = *mode;
  }
  for (const auto& name : split_list(options->shapes)) {
    const auto shape = shape_from_name(name);
    if (!shape)
      return set_error(FS_ERR_ARGUMENT,
                       "unknown preference shape \"" + name + "\"");
    opts.shapes.push_back(*shape);
  }
  for (const auto& name : split_list(options->properties)) {
    const auto property = property_from_name(name);
    if (!property)
      return set_error(FS_ERR_ARGUMENT, "unknown property \"" + name + "\"");
    opts.properties.push_back(*property);
  }

  return guarded([&] {
    const VerifySummary summary = run_verification(opts);
    *ok = summary.ok() ? 1 : 0;
    *out = copy_string(render_verify_summary(summary, parsed_format));
    return FS_OK;
  });
}

}  // extern "C"
