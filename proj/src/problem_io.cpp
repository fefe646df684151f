#include "problem_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "numfmt.hpp"

namespace flowsort {
namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::parse, path + ": cannot read file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const json& need(const json& obj, const char* key, const std::string& ctx) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(errc::parse, ctx + ": missing key '" + key + "'");
  return *it;
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& ctx) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* key : allowed) known = known || it.key() == key;
    if (!known) fail(errc::parse, ctx + ": unknown key '" + it.key() + "'");
  }
}

const json& need_object(const json& j, const std::string& ctx) {
  if (!j.is_object()) fail(errc::parse, ctx + ": expected an object");
  return j;
}

const json& need_array(const json& j, const std::string& ctx) {
  if (!j.is_array()) fail(errc::parse, ctx + ": expected an array");
  return j;
}

std::string need_string(const json& j, const std::string& ctx) {
  if (!j.is_string()) fail(errc::parse, ctx + ": expected a string");
  return j.get<std::string>();
}

double need_finite(const json& j, const std::string& ctx) {
  if (!j.is_number()) fail(errc::parse, ctx + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(errc::parse, ctx + ": number is not finite");
  return v;
}

std::vector<double> need_vector(const json& j, std::size_t want,
                                const std::string& ctx) {
  need_array(j, ctx);
  if (j.size() != want)
    fail(errc::structural, ctx + ": expected " + std::to_string(want) +
                               " values, got " + std::to_string(j.size()));
  std::vector<double> out;
  out.reserve(want);
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(need_finite(j[i], ctx + "[" + std::to_string(i) + "]"));
  return out;
}

json parse_text(const std::string& text, const std::string& ctx) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(errc::parse, ctx + ": " + e.what());
  }
}

void check_document_header(const json& doc, const char* kind,
                           const std::string& ctx) {
  need_object(doc, ctx);
  const std::string schema = need_string(need(doc, "schema", ctx),
                                         ctx + ": schema");
  if (schema != schema_tag)
    fail(errc::parse, ctx + ": unsupported schema '" + schema +
                          "', expected '" + schema_tag + "'");
  const std::string got = need_string(need(doc, "kind", ctx), ctx + ": kind");
  if (got != kind)
    fail(errc::parse,
         ctx + ": document kind is '" + got + "', expected '" + kind + "'");
}

std::vector<CriterionSpec> parse_criteria(const json& j,
                                          const std::string& ctx) {
  need_array(j, ctx);
  if (j.empty()) fail(errc::structural, ctx + ": needs at least one criterion");
  std::vector<CriterionSpec> criteria;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string where = ctx + "[" + std::to_string(i) + "]";
    const json& c = need_object(j[i], where);
    check_keys(c, {"name", "direction", "pf", "q", "p", "s"}, where);
    CriterionSpec spec;
    spec.name = need_string(need(c, "name", where), where + ".name");
    if (!seen.insert(spec.name).second)
      fail(errc::structural, where + ": duplicate criterion '" + spec.name +
                                 "'");
    const std::string dir =
        need_string(need(c, "direction", where), where + ".direction");
    if (auto d = direction_from_name(dir))
      spec.direction = *d;
    else
      fail(errc::parse, where + ": unknown direction '" + dir + "'");
    if (c.contains("pf")) {
      const std::string pf = need_string(c["pf"], where + ".pf");
      if (auto shape = shape_from_name(pf))
        spec.shape = *shape;
      else
        fail(errc::parse, where + ": unknown preference shape '" + pf + "'");
    }
    if (c.contains("q")) spec.q = need_finite(c["q"], where + ".q");
    if (c.contains("p")) spec.p = need_finite(c["p"], where + ".p");
    if (c.contains("s")) spec.s = need_finite(c["s"], where + ".s");
    criteria.push_back(std::move(spec));
  }
  return criteria;
}

int resolve_criterion(const std::string& name,
                      const std::vector<CriterionSpec>& criteria,
                      const std::string& ctx) {
  for (std::size_t j = 0; j < criteria.size(); ++j)
    if (criteria[j].name == name) return static_cast<int>(j);
  fail(errc::structural, ctx + ": unknown criterion '" + name + "'");
}

Subset parse_subset(const json& j, const std::vector<CriterionSpec>& criteria,
                    const std::string& ctx) {
  need_array(j, ctx);
  Subset set = 0;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string name =
        need_string(j[i], ctx + "[" + std::to_string(i) + "]");
    const Subset bit = singleton(resolve_criterion(name, criteria, ctx));
    if (set & bit)
      fail(errc::structural, ctx + ": criterion '" + name + "' listed twice");
    set |= bit;
  }
  return set;
}

ShapleyInteractionModel parse_shapley_capacity(
    const json& obj, const std::vector<CriterionSpec>& criteria,
    const std::string& ctx) {
  const json& importance = need_object(need(obj, "importance", ctx),
                                       ctx + ".importance");
  std::vector<double> shapley(criteria.size(), 0.0);
  std::set<std::string> given;
  for (auto it = importance.begin(); it != importance.end(); ++it) {
    const int j = resolve_criterion(it.key(), criteria, ctx + ".importance");
    shapley[j] = need_finite(it.value(), ctx + ".importance." + it.key());
    given.insert(it.key());
  }
  for (const auto& spec : criteria)
    if (!given.count(spec.name))
      fail(errc::structural, ctx + ".importance: missing criterion '" +
                                 spec.name + "'");
  ShapleyInteractionModel model(std::move(shapley));
  if (obj.contains("interactions")) {
    const json& inter = need_array(obj["interactions"], ctx + ".interactions");
    std::set<std::pair<int, int>> seen;
    for (std::size_t i = 0; i < inter.size(); ++i) {
      const std::string where =
          ctx + ".interactions[" + std::to_string(i) + "]";
      const json& entry = need_object(inter[i], where);
      check_keys(entry, {"criteria", "value"}, where);
      const Subset set = parse_subset(need(entry, "criteria", where), criteria,
                                      where + ".criteria");
      if (subset_size(set) != 2)
        fail(errc::structural, where + ": an interaction names exactly two "
                                       "criteria");
      const int j = std::countr_zero(set);
      const int s = std::countr_zero(set ^ singleton(j));
      if (!seen.insert({j, s}).second)
        fail(errc::structural, where + ": duplicate interaction pair");
      model.set_interaction(j, s,
                            need_finite(need(entry, "value", where),
                                        where + ".value"));
    }
  }
  return model;
}

CapacityModel parse_capacity(const json& j,
                             const std::vector<CriterionSpec>& criteria,
                             const std::string& ctx) {
  const json& obj = need_object(j, ctx);
  const std::string format = need_string(need(obj, "format", ctx),
                                         ctx + ".format");
  const int n = static_cast<int>(criteria.size());
  if (format == "shapley_interaction") {
    check_keys(obj, {"format", "importance", "interactions"}, ctx);
    return CapacityModel::from_shapley_interaction(
        parse_shapley_capacity(obj, criteria, ctx));
  }
  if (format == "mobius") {
    check_keys(obj, {"format", "masses"}, ctx);
    const json& masses = need_array(need(obj, "masses", ctx), ctx + ".masses");
    std::map<Subset, double> mass_map;
    int max_order = 1;
    for (std::size_t i = 0; i < masses.size(); ++i) {
      const std::string where = ctx + ".masses[" + std::to_string(i) + "]";
      const json& entry = need_object(masses[i], where);
      check_keys(entry, {"criteria", "value"}, where);
      const Subset set = parse_subset(need(entry, "criteria", where), criteria,
                                      where + ".criteria");
      if (mass_map.count(set))
        fail(errc::structural, where + ": duplicate criteria set");
      mass_map[set] = need_finite(need(entry, "value", where),
                                  where + ".value");
      max_order = std::max(max_order, subset_size(set));
    }
    return CapacityModel::from_mobius(
        MobiusRepresentation(n, std::move(mass_map), max_order));
  }
  if (format == "lattice") {
    check_keys(obj, {"format", "values"}, ctx);
    if (n > max_lattice_criteria)
      fail(errc::structural, ctx + ": lattice format supports at most " +
                                 std::to_string(max_lattice_criteria) +
                                 " criteria");
    const json& values = need_array(need(obj, "values", ctx), ctx + ".values");
    const std::size_t want = std::size_t{1} << n;
    if (values.size() != want)
      fail(errc::structural, ctx + ".values: need one entry per subset (" +
                                 std::to_string(want) + "), got " +
                                 std::to_string(values.size()));
    std::vector<double> lattice(want, 0.0);
    std::vector<bool> filled(want, false);
    for (std::size_t i = 0; i < values.size(); ++i) {
      const std::string where = ctx + ".values[" + std::to_string(i) + "]";
      const json& entry = need_object(values[i], where);
      check_keys(entry, {"criteria", "value"}, where);
      const Subset set = parse_subset(need(entry, "criteria", where), criteria,
                                      where + ".criteria");
      if (filled[set])
        fail(errc::structural, where + ": duplicate criteria set");
      filled[set] = true;
      lattice[set] = need_finite(need(entry, "value", where), where + ".value");
    }
    return CapacityModel::from_lattice(CapacityLattice(n, std::move(lattice)));
  }
  fail(errc::parse, ctx + ": unknown capacity format '" + format + "'");
}

std::vector<Rule> parse_rules(const json& j, const std::string& ctx) {
  need_array(j, ctx);
  if (j.empty()) fail(errc::parse, ctx + ": needs at least one rule");
  std::vector<Rule> rules;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string name =
        need_string(j[i], ctx + "[" + std::to_string(i) + "]");
    auto rule = rule_from_name(name);
    if (!rule) fail(errc::parse, ctx + ": unknown rule '" + name + "'");
    if (std::find(rules.begin(), rules.end(), *rule) != rules.end())
      fail(errc::parse, ctx + ": duplicate rule '" + name + "'");
    rules.push_back(*rule);
  }
  return rules;
}

std::vector<Rule> all_rules() {
  return {Rule::positive, Rule::negative, Rule::net};
}

json subset_to_json(Subset set, const std::vector<CriterionSpec>& criteria) {
  json names = json::array();
  for (std::size_t j = 0; j < criteria.size(); ++j)
    if (subset_contains(set, static_cast<int>(j)))
      names.push_back(criteria[j].name);
  return names;
}

// ---- rendering helpers ------------------------------------------------------

std::string fixed3(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string out = buf;
  if (out == "-0.000") out = "0.000";
  return out;
}

std::string full_precision(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_line(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ",";
    out += csv_escape(fields[i]);
  }
  return out + "\n";
}

const char* direction_json_name(Direction d) { return direction_name(d); }

}  // namespace

std::string render_table(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c)
      width[c] = std::max(width[c], row[c].size());
  std::string out;
  auto emit_row = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += "  ";
      if (c == 0) {
        out += row[c];
        out += std::string(width[c] - row[c].size(), ' ');
      } else {
        out += std::string(width[c] - row[c].size(), ' ');
        out += row[c];
      }
    }
    // Trailing spaces from left alignment add nothing.
    while (!out.empty() && out.back() == ' ') out.pop_back();
    out += "\n";
  };
  emit_row(header);
  for (const auto& row : rows) emit_row(row);
  return out;
}

ProblemDocument problem_from_json(const json& doc, const std::string& context) {
  check_document_header(doc, "problem", context);
  check_keys(doc,
             {"schema", "kind", "criteria", "alternatives", "profiles",
              "categories", "capacity", "options"},
             context);
  auto criteria = parse_criteria(need(doc, "criteria", context),
                                 context + ": criteria");
  const std::size_t n = criteria.size();

  DecisionMatrix matrix;
  const json& alts = need_array(need(doc, "alternatives", context),
                                context + ": alternatives");
  std::set<std::string> seen_names;
  for (std::size_t i = 0; i < alts.size(); ++i) {
    const std::string where =
        context + ": alternatives[" + std::to_string(i) + "]";
    const json& a = need_object(alts[i], where);
    check_keys(a, {"name", "values"}, where);
    const std::string name = need_string(need(a, "name", where),
                                         where + ".name");
    if (!seen_names.insert(name).second)
      fail(errc::structural, where + ": duplicate alternative '" + name + "'");
    matrix.names.push_back(name);
    matrix.rows.push_back(
        need_vector(need(a, "values", where), n, where + ".values"));
  }

  ReferenceProfileSet profiles;
  const json& profs = need_array(need(doc, "profiles", context),
                                 context + ": profiles");
  std::set<std::string> seen_profiles;
  for (std::size_t i = 0; i < profs.size(); ++i) {
    const std::string where = context + ": profiles[" + std::to_string(i) + "]";
    const json& p = need_object(profs[i], where);
    check_keys(p, {"name", "values"}, where);
    std::string name = p.contains("name")
                           ? need_string(p["name"], where + ".name")
                           : "r" + std::to_string(i + 1);
    if (!seen_profiles.insert(name).second)
      fail(errc::structural, where + ": duplicate profile '" + name + "'");
    profiles.profile_names.push_back(std::move(name));
    profiles.profiles.push_back(
        need_vector(need(p, "values", where), n, where + ".values"));
  }

  const json& cats = need_array(need(doc, "categories", context),
                                context + ": categories");
  for (std::size_t i = 0; i < cats.size(); ++i)
    profiles.categories.push_back(
        need_string(cats[i], context + ": categories[" + std::to_string(i) +
                                 "]"));

  CapacityModel capacity = parse_capacity(need(doc, "capacity", context),
                                          criteria, context + ": capacity");

  ProfileMode mode = ProfileMode::strict;
  std::vector<Rule> rules = all_rules();
  if (doc.contains("options")) {
    const std::string where = context + ": options";
    const json& options = need_object(doc["options"], where);
    check_keys(options, {"validation_mode", "rules"}, where);
    if (options.contains("validation_mode")) {
      const std::string name = need_string(options["validation_mode"],
                                           where + ".validation_mode");
      auto parsed = profile_mode_from_name(name);
      if (!parsed)
        fail(errc::parse, where + ": unknown validation mode '" + name + "'");
      mode = *parsed;
    }
    if (options.contains("rules"))
      rules = parse_rules(options["rules"], where + ".rules");
  }

  ProblemDocument result{
      SortingProblem{std::move(criteria), std::move(matrix),
                     std::move(profiles), std::move(capacity), mode},
      std::move(rules)};
  const auto issues = validate_problem(result.problem);
  if (!issues.ok()) fail(errc::validation, context + ": " + issues.joined());
  return result;
}

ProblemDocument load_problem(const std::string& path) {
  return problem_from_json(parse_text(read_file(path), path), path);
}

json problem_to_json(const SortingProblem& problem,
                     const std::vector<Rule>& rules) {
  json doc;
  doc["schema"] = schema_tag;
  doc["kind"] = "problem";
  json criteria = json::array();
  for (const auto& spec : problem.criteria) {
    json c;
    c["name"] = spec.name;
    c["direction"] = direction_json_name(spec.direction);
    c["pf"] = shape_name(spec.shape);
    if (spec.q) c["q"] = *spec.q;
    if (spec.p) c["p"] = *spec.p;
    if (spec.s) c["s"] = *spec.s;
    criteria.push_back(std::move(c));
  }
  doc["criteria"] = std::move(criteria);
  json alts = json::array();
  for (int i = 0; i < problem.alternatives.alternatives(); ++i)
    alts.push_back({{"name", problem.alternatives.names[i]},
                    {"values", problem.alternatives.rows[i]}});
  doc["alternatives"] = std::move(alts);
  json profs = json::array();
  for (int h = 0; h < problem.profiles.profile_count(); ++h)
    profs.push_back({{"name", problem.profiles.profile_names[h]},
                     {"values", problem.profiles.profiles[h]}});
  doc["profiles"] = std::move(profs);
  doc["categories"] = problem.profiles.categories;

  json capacity;
  switch (problem.capacity.source()) {
    case CapacityModel::Source::shapley_interaction: {
      const auto& model = problem.capacity.shapley_interaction();
      capacity["format"] = "shapley_interaction";
      json importance;
      for (std::size_t j = 0; j < problem.criteria.size(); ++j)
        importance[problem.criteria[j].name] = model.shapley()[j];
      capacity["importance"] = std::move(importance);
      json inters = json::array();
      for (const auto& [key, value] : model.interactions())
        inters.push_back(
            {{"criteria", json::array({problem.criteria[key.first].name,
                                       problem.criteria[key.second].name})},
             {"value", value}});
      if (!inters.empty()) capacity["interactions"] = std::move(inters);
      break;
    }
    case CapacityModel::Source::mobius: {
      capacity["format"] = "mobius";
      json masses = json::array();
      for (const auto& [set, mass] : problem.capacity.mobius().masses())
        masses.push_back({{"criteria", subset_to_json(set, problem.criteria)},
                          {"value", mass}});
      capacity["masses"] = std::move(masses);
      break;
    }
    case CapacityModel::Source::lattice: {
      capacity["format"] = "lattice";
      json values = json::array();
      const auto& lattice = problem.capacity.lattice();
      for (Subset s = 0; s < lattice.values().size(); ++s)
        values.push_back({{"criteria", subset_to_json(s, problem.criteria)},
                          {"value", lattice.at(s)}});
      capacity["values"] = std::move(values);
      break;
    }
  }
  doc["capacity"] = std::move(capacity);

  json rule_names = json::array();
  for (Rule rule : rules) rule_names.push_back(rule_name(rule));
  doc["options"] = {{"validation_mode", profile_mode_name(problem.mode)},
                    {"rules", std::move(rule_names)}};
  return doc;
}

ScenarioSet scenarios_from_json(const json& doc,
                                const std::vector<CriterionSpec>& criteria,
                                const std::string& context) {
  check_document_header(doc, "scenarios", context);
  check_keys(doc, {"schema", "kind", "scenarios"}, context);
  const json& list = need_array(need(doc, "scenarios", context),
                                context + ": scenarios");
  if (list.empty()) fail(errc::structural, context + ": no scenarios");
  ScenarioSet set;
  std::set<std::string> seen;
  ValidationReport issues;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string where = context + ": scenarios[" + std::to_string(i) +
                              "]";
    const json& s = need_object(list[i], where);
    check_keys(s, {"name", "importance", "interactions"}, where);
    const std::string name = need_string(need(s, "name", where),
                                         where + ".name");
    if (!seen.insert(name).second)
      fail(errc::structural, where + ": duplicate scenario '" + name + "'");
    auto model = parse_shapley_capacity(s, criteria, where);
    for (const auto& issue : validate_two_additive(model).issues)
      issues.issues.push_back("scenario '" + name + "': " + issue);
    set.scenarios.push_back({name, std::move(model)});
  }
  if (!issues.ok()) fail(errc::validation, context + ": " + issues.joined());
  return set;
}

ScenarioSet load_scenarios(const std::string& path,
                           const std::vector<CriterionSpec>& criteria) {
  return scenarios_from_json(parse_text(read_file(path), path), criteria,
                             path);
}

SortReport run_sort(const SortingProblem& problem, std::vector<Rule> rules) {
  if (rules.empty()) rules = all_rules();
  SortReport report;
  report.profile_names = problem.profiles.profile_names;
  report.categories = problem.profiles.categories;
  report.rules = std::move(rules);
  report.results = sort_all(problem);
  return report;
}

ScenarioReport run_scenarios(const SortingProblem& base,
                             const ScenarioSet& scenarios, Rule rule) {
  if (scenarios.scenarios.empty())
    fail(errc::structural, "scenario set is empty");
  ScenarioReport report;
  report.rule = rule;
  report.alternative_names = base.alternatives.names;
  report.category_labels = base.profiles.categories;
  for (const auto& scenario : scenarios.scenarios) {
    SortingProblem variant = base;
    variant.capacity =
        CapacityModel::from_shapley_interaction(scenario.capacity);
    const auto results = sort_all(variant);
    ScenarioRun run;
    run.name = scenario.name;
    for (const auto& result : results)
      run.categories.push_back(result.assignment.by(rule));
    run.changed.assign(run.categories.size(), false);
    if (!report.runs.empty())
      for (std::size_t i = 0; i < run.categories.size(); ++i)
        run.changed[i] =
            run.categories[i] != report.runs.front().categories[i];
    report.runs.push_back(std::move(run));
  }
  return report;
}

MatrixDocument load_matrix(const std::string& path) {
  const json doc = parse_text(read_file(path), path);
  check_document_header(doc, "matrix", path);
  check_keys(doc, {"schema", "kind", "criteria", "alternatives", "capacity"},
             path);
  auto criteria = parse_criteria(need(doc, "criteria", path),
                                 path + ": criteria");
  DecisionMatrix matrix;
  const json& alts = need_array(need(doc, "alternatives", path),
                                path + ": alternatives");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < alts.size(); ++i) {
    const std::string where = path + ": alternatives[" + std::to_string(i) +
                              "]";
    const json& a = need_object(alts[i], where);
    check_keys(a, {"name", "values"}, where);
    const std::string name = need_string(need(a, "name", where),
                                         where + ".name");
    if (!seen.insert(name).second)
      fail(errc::structural, where + ": duplicate alternative '" + name + "'");
    matrix.names.push_back(name);
    matrix.rows.push_back(need_vector(need(a, "values", where),
                                      criteria.size(), where + ".values"));
  }
  CapacityModel capacity =
      parse_capacity(need(doc, "capacity", path), criteria, path + ": capacity");
  if (capacity.criteria() != static_cast<int>(criteria.size()))
    fail(errc::structural, path + ": capacity criteria count mismatch");
  const auto issues = capacity.validate();
  if (!issues.ok()) fail(errc::validation, path + ": " + issues.joined());
  return {std::move(criteria), std::move(matrix), std::move(capacity)};
}

BaselineReport run_baseline(const MatrixDocument& doc, bool normalize) {
  BaselineReport report;
  for (const auto& spec : doc.criteria)
    report.criteria_names.push_back(spec.name);
  report.normalized = normalize;
  report.scored =
      normalize ? min_max_normalize(doc.matrix,
                                    {doc.criteria.data(), doc.criteria.size()})
                : doc.matrix;
  report.scores = direct_choquet_scores(report.scored, doc.capacity);
  return report;
}

const char* format_name(ReportFormat format) noexcept {
  switch (format) {
    case ReportFormat::plain_table: return "plain";
    case ReportFormat::csv: return "csv";
    case ReportFormat::json: return "json";
  }
  return "?";
}

std::optional<ReportFormat> format_from_name(const std::string& name) {
  if (name == "plain" || name == "plain_table") return ReportFormat::plain_table;
  if (name == "csv") return ReportFormat::csv;
  if (name == "json") return ReportFormat::json;
  return std::nullopt;
}

namespace {

const std::vector<double>& flow_row(const FlowTable& flows, Rule rule) {
  switch (rule) {
    case Rule::positive: return flows.positive;
    case Rule::negative: return flows.negative;
    case Rule::net: return flows.net;
  }
  return flows.net;
}

const char* flow_label(Rule rule) {
  switch (rule) {
    case Rule::positive: return "phi+";
    case Rule::negative: return "phi-";
    case Rule::net: return "phi";
  }
  return "?";
}

std::string category_label(const std::vector<std::string>& labels, int index) {
  return labels[index - 1];
}

json sort_report_json(const SortReport& report) {
  json doc;
  doc["schema"] = schema_tag;
  doc["kind"] = "result";
  doc["profiles"] = report.profile_names;
  doc["categories"] = report.categories;
  json rules = json::array();
  for (Rule rule : report.rules) rules.push_back(rule_name(rule));
  doc["rules"] = std::move(rules);
  json alts = json::array();
  for (const auto& result : report.results) {
    json flows;
    for (Rule rule : {Rule::positive, Rule::negative, Rule::net}) {
      const auto& row = flow_row(result.flows, rule);
      json entry;
      entry["alternative"] = row[result.flows.profile_count];
      entry["profiles"] = std::vector<double>(
          row.begin(), row.begin() + result.flows.profile_count);
      flows[rule_name(rule)] = std::move(entry);
    }
    json assignment;
    for (Rule rule : report.rules)
      assignment[rule_name(rule)] =
          category_label(report.categories, result.assignment.by(rule));
    alts.push_back({{"name", result.name},
                    {"flows", std::move(flows)},
                    {"assignment", std::move(assignment)}});
  }
  doc["alternatives"] = std::move(alts);
  return doc;
}

}  // namespace

std::string emit_report(const SortReport& report, ReportFormat format) {
  const int k1 = static_cast<int>(report.profile_names.size());
  if (format == ReportFormat::json) return sort_report_json(report).dump(2) + "\n";
  if (format == ReportFormat::csv) {
    std::string out;
    std::vector<std::string> header{"alternative"};
    for (Rule rule : {Rule::positive, Rule::negative, Rule::net}) {
      header.push_back(std::string(flow_label(rule)) + "_a");
      for (const auto& name : report.profile_names)
        header.push_back(std::string(flow_label(rule)) + "_" + name);
    }
    for (Rule rule : report.rules)
      header.push_back(std::string("category_") + rule_name(rule));
    out += csv_line(header);
    for (const auto& result : report.results) {
      std::vector<std::string> row{result.name};
      for (Rule rule : {Rule::positive, Rule::negative, Rule::net}) {
        const auto& flows = flow_row(result.flows, rule);
        row.push_back(full_precision(flows[k1]));
        for (int h = 0; h < k1; ++h) row.push_back(full_precision(flows[h]));
      }
      for (Rule rule : report.rules)
        row.push_back(
            category_label(report.categories, result.assignment.by(rule)));
      out += csv_line(row);
    }
    return out;
  }
  // plain_table: a flows section in the local-set layout, then assignments.
  std::vector<std::string> header{"alternative"};
  for (Rule rule : {Rule::positive, Rule::negative, Rule::net}) {
    header.push_back(std::string(flow_label(rule)) + "(a)");
    for (const auto& name : report.profile_names)
      header.push_back(std::string(flow_label(rule)) + "(" + name + ")");
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto& result : report.results) {
    std::vector<std::string> row{result.name};
    for (Rule rule : {Rule::positive, Rule::negative, Rule::net}) {
      const auto& flows = flow_row(result.flows, rule);
      row.push_back(fixed3(flows[k1]));
      for (int h = 0; h < k1; ++h) row.push_back(fixed3(flows[h]));
    }
    rows.push_back(std::move(row));
  }
  std::string out = "flows\n" + render_table(header, rows);
  std::vector<std::string> assign_header{"alternative"};
  for (Rule rule : report.rules) assign_header.push_back(rule_name(rule));
  std::vector<std::vector<std::string>> assign_rows;
  for (const auto& result : report.results) {
    std::vector<std::string> row{result.name};
    for (Rule rule : report.rules)
      row.push_back(
          category_label(report.categories, result.assignment.by(rule)));
    assign_rows.push_back(std::move(row));
  }
  out += "\nassignments\n" + render_table(assign_header, assign_rows);
  return out;
}

std::string emit_report(const ScenarioReport& report, ReportFormat format) {
  if (format == ReportFormat::json) {
    json doc;
    doc["schema"] = schema_tag;
    doc["kind"] = "scenario_result";
    doc["rule"] = rule_name(report.rule);
    doc["alternatives"] = report.alternative_names;
    doc["categories"] = report.category_labels;
    json runs = json::array();
    for (const auto& run : report.runs) {
      json labels = json::array();
      for (int category : run.categories)
        labels.push_back(category_label(report.category_labels, category));
      runs.push_back({{"name", run.name},
                      {"assignments", std::move(labels)},
                      {"changed", run.changed}});
    }
    doc["scenarios"] = std::move(runs);
    return doc.dump(2) + "\n";
  }
  if (format == ReportFormat::csv) {
    std::vector<std::string> header{"alternative"};
    for (const auto& run : report.runs) {
      header.push_back(run.name);
      header.push_back(run.name + "_changed");
    }
    std::string out = csv_line(header);
    for (std::size_t i = 0; i < report.alternative_names.size(); ++i) {
      std::vector<std::string> row{report.alternative_names[i]};
      for (const auto& run : report.runs) {
        row.push_back(
            category_label(report.category_labels, run.categories[i]));
        row.push_back(run.changed[i] ? "true" : "false");
      }
      out += csv_line(row);
    }
    return out;
  }
  std::vector<std::string> header{"alternative"};
  for (const auto& run : report.runs) header.push_back(run.name);
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < report.alternative_names.size(); ++i) {
    std::vector<std::string> row{report.alternative_names[i]};
    for (const auto& run : report.runs) {
      std::string cell =
          category_label(report.category_labels, run.categories[i]);
      if (run.changed[i]) cell += "*";
      row.push_back(std::move(cell));
    }
    rows.push_back(std::move(row));
  }
  std::string out = "assignments by scenario (" +
                    std::string(rule_name(report.rule)) +
                    " rule; * marks a change from " +
                    report.runs.front().name + ")\n";
  return out + render_table(header, rows);
}

std::string emit_report(const BaselineReport& report, ReportFormat format) {
  if (format == ReportFormat::json) {
    json doc;
    doc["schema"] = schema_tag;
    doc["kind"] = "baseline_result";
    doc["normalized"] = report.normalized;
    doc["criteria"] = report.criteria_names;
    json alts = json::array();
    for (int i = 0; i < report.scored.alternatives(); ++i)
      alts.push_back({{"name", report.scored.names[i]},
                      {"values", report.scored.rows[i]},
                      {"score", report.scores[i]}});
    doc["alternatives"] = std::move(alts);
    return doc.dump(2) + "\n";
  }
  if (format == ReportFormat::csv) {
    std::vector<std::string> header{"alternative"};
    header.insert(header.end(), report.criteria_names.begin(),
                  report.criteria_names.end());
    header.push_back("score");
    std::string out = csv_line(header);
    for (int i = 0; i < report.scored.alternatives(); ++i) {
      std::vector<std::string> row{report.scored.names[i]};
      for (double v : report.scored.rows[i]) row.push_back(full_precision(v));
      row.push_back(full_precision(report.scores[i]));
      out += csv_line(row);
    }
    return out;
  }
  std::vector<std::string> header{"alternative"};
  header.insert(header.end(), report.criteria_names.begin(),
                report.criteria_names.end());
  header.push_back("score");
  std::vector<std::vector<std::string>> rows;
  for (int i = 0; i < report.scored.alternatives(); ++i) {
    std::vector<std::string> row{report.scored.names[i]};
    for (double v : report.scored.rows[i]) row.push_back(fixed3(v));
    row.push_back(fixed3(report.scores[i]));
    rows.push_back(std::move(row));
  }
  std::string out = report.normalized ? "scores (min-max normalised inputs)\n"
                                      : "scores (raw inputs)\n";
  return out + render_table(header, rows);
}

}  // namespace flowsort
