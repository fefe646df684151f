// Command-line front end. All engine functionality is reached through the
// shared library's C interface; this file only parses arguments and moves
// bytes.

#include <cstdio>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "flowsort/flowsort.h"

namespace {

int report_error(int code) {
  std::fprintf(stderr, "error: %s\n", fs_last_error());
  return code;
}

int write_output(const char* text, const std::string& path) {
  if (path.empty()) {
    std::fputs(text, stdout);
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::fprintf(stderr, "error: cannot write %s\n", path.c_str());
    return 1;
  }
  return 0;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += ",";
    out += item;
  }
  return out;
}

struct string_guard {
  char* text = nullptr;
  ~string_guard() { fs_string_free(text); }
};

using problem_ptr = std::unique_ptr<fs_problem, decltype(&fs_problem_free)>;

problem_ptr load_problem(const std::string& path, int& code) {
  fs_problem* raw = nullptr;
  code = fs_problem_load(path.c_str(), &raw);
  return problem_ptr(raw, &fs_problem_free);
}

int run_sort_command(const std::string& file,
                     const std::vector<std::string>& rules,
                     const std::string& format, const std::string& out_path) {
  int code = 0;
  auto problem = load_problem(file, code);
  if (code != FS_OK) return report_error(code);

  fs_result* raw = nullptr;
  code = fs_sort(problem.get(), join(rules).c_str(), &raw);
  if (code != FS_OK) return report_error(code);
  std::unique_ptr<fs_result, decltype(&fs_result_free)> result(
      raw, &fs_result_free);

  string_guard rendered;
  code = fs_result_render(result.get(), format.c_str(), &rendered.text);
  if (code != FS_OK) return report_error(code);
  return write_output(rendered.text, out_path);
}

int run_scenarios_command(const std::string& file,
                          const std::string& scenario_file,
                          const std::string& rule, const std::string& format,
                          const std::string& out_path) {
  int code = 0;
  auto problem = load_problem(file, code);
  if (code != FS_OK) return report_error(code);

  fs_scenarios* raw_set = nullptr;
  code = fs_scenarios_load(problem.get(), scenario_file.c_str(), &raw_set);
  if (code != FS_OK) return report_error(code);
  std::unique_ptr<fs_scenarios, decltype(&fs_scenarios_free)> set(
      raw_set, &fs_scenarios_free);

  fs_scenario_result* raw = nullptr;
  code = fs_scenarios_run(problem.get(), set.get(), rule.c_str(), &raw);
  if (code != FS_OK) return report_error(code);
  std::unique_ptr<fs_scenario_result, decltype(&fs_scenario_result_free)>
      result(raw, &fs_scenario_result_free);

  string_guard rendered;
  code =
      fs_scenario_result_render(result.get(), format.c_str(), &rendered.text);
  if (code != FS_OK) return report_error(code);
  return write_output(rendered.text, out_path);
}

int run_baseline_command(const std::string& file, bool normalize,
                         const std::string& format,
                         const std::string& out_path) {
  fs_matrix* raw = nullptr;
  int code = fs_matrix_load(file.c_str(), &raw);
  if (code != FS_OK) return report_error(code);
  std::unique_ptr<fs_matrix, decltype(&fs_matrix_free)> matrix(
      raw, &fs_matrix_free);

  string_guard rendered;
  code = fs_baseline_run(matrix.get(), normalize ? 1 : 0, format.c_str(),
                         &rendered.text);
  if (code != FS_OK) return report_error(code);
  return write_output(rendered.text, out_path);
}

int run_verify_command(const fs_verify_options& options,
                       const std::string& format,
                       const std::string& out_path) {
  string_guard rendered;
  int ok = 0;
  int code = fs_verify(&options, format.c_str(), &rendered.text, &ok);
  if (code != FS_OK) return report_error(code);
  if (int rc = write_output(rendered.text, out_path); rc != 0) return rc;
  // A failed property is the engine contradicting its own contracts.
  return ok ? 0 : FS_ERR_INCONSISTENCY;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "FlowSort-Choquet: sorts alternatives into ordered categories using "
      "reference profiles, pairwise preference degrees and a Choquet "
      "integral over an interacting-criteria capacity."};
  app.require_subcommand(1);

  const std::vector<std::string> format_names = {"plain", "csv", "json"};
  const std::vector<std::string> rule_names = {"positive", "negative", "net"};

  std::string file;
  std::string out_path;
  std::string format = "plain";

  auto* sort_cmd =
      app.add_subcommand("sort", "Sort every alternative of a problem file");
  std::vector<std::string> sort_rules;
  sort_cmd->add_option("file", file, "problem document (JSON)")->required();
  sort_cmd->add_option("--rule", sort_rules,
                       "assignment rules to report (repeatable; default: the "
                       "document's choice, else all)")
      ->check(CLI::IsMember(rule_names));
  sort_cmd->add_option("--format", format, "output format")
      ->check(CLI::IsMember(format_names));
  sort_cmd->add_option("--out", out_path, "write the report here instead of "
                                          "stdout");

  auto* scen_cmd = app.add_subcommand(
      "scenarios", "Re-sort a problem under alternative capacities");
  std::string scenario_file;
  std::string scenario_rule = "net";
  scen_cmd->add_option("file", file, "problem document (JSON)")->required();
  scen_cmd->add_option("--scenarios", scenario_file,
                       "scenario document (JSON)")
      ->required();
  scen_cmd->add_option("--rule", scenario_rule, "assignment rule to tabulate")
      ->check(CLI::IsMember(rule_names));
  scen_cmd->add_option("--format", format, "output format")
      ->check(CLI::IsMember(format_names));
  scen_cmd->add_option("--out", out_path, "write the report here instead of "
                                          "stdout");

  auto* base_cmd = app.add_subcommand(
      "baseline", "Score a plain table with its capacity, no profiles");
  bool normalize = false;
  base_cmd->add_option("file", file, "matrix document (JSON)")->required();
  base_cmd->add_flag("--normalize", normalize,
                     "rescale each column to [0, 1] by observed min/max "
                     "before scoring");
  base_cmd->add_option("--format", format, "output format")
      ->check(CLI::IsMember(format_names));
  base_cmd->add_option("--out", out_path, "write the report here instead of "
                                          "stdout");

  auto* verify_cmd = app.add_subcommand(
      "verify",
      "Generate random instances and audit the engine's structural "
      "properties on each");
  fs_verify_options options;
  fs_verify_options_init(&options);
  std::string mode;
  std::vector<std::string> shapes;
  std::vector<std::string> properties;
  bool no_conditions = false;
  verify_cmd->add_option("--problems", options.problems,
                         "number of generated instances");
  verify_cmd->add_option("--seed", options.seed, "generator seed");
  verify_cmd->add_option("--criteria-min", options.min_criteria,
                         "fewest criteria per instance");
  verify_cmd->add_option("--criteria-max", options.max_criteria,
                         "most criteria per instance");
  verify_cmd->add_option("--categories-max", options.max_categories,
                         "most categories per instance");
  verify_cmd->add_option("--alternatives-max", options.max_alternatives,
                         "most alternatives per instance");
  verify_cmd->add_option("--mode", mode, "profile separation mode")
      ->check(CLI::IsMember({"weak", "strict", "strong"}));
  verify_cmd
      ->add_option("--shapes", shapes,
                   "preference shapes to draw from (repeatable)")
      ->check(CLI::IsMember(
          {"usual", "u_shape", "v_shape", "level", "linear", "gaussian"}));
  verify_cmd->add_option("--props", properties,
                         "property names to check (repeatable; default all)");
  verify_cmd->add_flag("--no-conditions", no_conditions,
                       "skip the per-instance degree condition audit");
  verify_cmd->add_option("--format", format, "output format")
      ->check(CLI::IsMember(format_names));
  verify_cmd->add_option("--out", out_path, "write the report here instead "
                                            "of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help and version exit 0; every real argument problem maps onto the
    // same status the C API uses for bad arguments.
    const int rc = app.exit(e);
    return rc == 0 ? 0 : FS_ERR_ARGUMENT;
  }

  if (sort_cmd->parsed())
    return run_sort_command(file, sort_rules, format, out_path);
  if (scen_cmd->parsed())
    return run_scenarios_command(file, scenario_file, scenario_rule, format,
                                 out_path);
  if (base_cmd->parsed())
    return run_baseline_command(file, normalize, format, out_path);

  const std::string joined_shapes = join(shapes);
  const std::string joined_properties = join(properties);
  if (!mode.empty()) options.mode = mode.c_str();
  if (!joined_shapes.empty()) options.shapes = joined_shapes.c_str();
  if (!joined_properties.empty()) options.properties = joined_properties.c_str();
  options.conditions = no_conditions ? 0 : 1;
  return run_verify_command(options, format, out_path);
}
