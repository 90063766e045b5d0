#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <optional>

#include "tcsp/error.hpp"
#include "tcsp/io.hpp"
#include "tcsp/pp_formula.hpp"
#include "tcsp/selftest.hpp"
#include "tcsp/solver.hpp"

namespace tcsp::cli {

namespace {

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

void print_matrix(const Classification& c, std::ostream& out) {
  std::size_t width = 8;
  for (const auto& s : c.symbols) width = std::max(width, s.size() + 2);
  out << std::string(10, ' ');
  for (const auto& s : c.symbols) out << s << std::string(width - s.size(), ' ');
  out << '\n';
  const auto& ops = classification_ops();
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const std::string name = ops[i].name();
    out << name << std::string(10 - std::min<std::size_t>(name.size(), 9), ' ');
    for (std::size_t r = 0; r < c.symbols.size(); ++r) {
      const std::string cell = c.matrix[i][r] ? "yes" : "no";
      out << cell << std::string(width - cell.size(), ' ');
    }
    out << '\n';
  }
}

void print_verdict(const Verdict& v, bool trace, std::ostream& out) {
  out << (v.satisfiable ? "SAT" : "UNSAT") << '\n';
  if (v.witness) {
    std::vector<std::string> parts;
    for (const auto& [name, rank] : *v.witness) parts.push_back(name + "=" + std::to_string(rank));
    out << "witness: " << join(parts, " ") << '\n';
  }
  if (!trace) return;
  for (const auto& step : v.trace) {
    std::vector<std::string> sets;
    for (const auto& s : step.sets) sets.push_back("{" + join(s, ",") + "}");
    out << step.stage << ": " << join(sets, " ") << '\n';
  }
}

int report(const Verdict& v, bool json, bool trace, std::ostream& out) {
  if (json) {
    Json j = to_json(v);
    if (!trace) j["trace"] = Json::array();
    out << j.dump(2) << '\n';
  } else {
    print_verdict(v, trace, out);
  }
  return v.satisfiable ? kSat : kUnsat;
}

int print_suite(const SuiteResult& r, std::ostream& out) {
  out << (r.ok() ? "PASS " : "FAIL ") << r.name << ": " << r.passed << " passed, " << r.failed << " failed\n";
  for (const auto& f : r.failures) out << "  " << f << '\n';
  return r.ok() ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Temporal constraint satisfaction: classify templates, solve instances, evaluate pp-formulas", "tcsp"};
  app.require_subcommand(1);

  std::string template_path;
  std::string instance_path;
  std::string formula;
  bool allow_oracle = false;
  bool json = false;
  bool trace = false;
  std::size_t max_vars = kDefaultOracleVars;
  std::size_t random_count = 500;
  std::uint64_t seed = 1;

  auto* classify_cmd = app.add_subcommand("classify", "Print the logic class and the preservation matrix");
  classify_cmd->add_option("template", template_path, "Template file")->required();
  classify_cmd->add_flag("--json", json, "JSON output");

  auto* solve_cmd = app.add_subcommand("solve", "Decide an instance with the algorithm for its template");
  solve_cmd->add_option("instance", instance_path, "Instance file")->required();
  solve_cmd->add_option("--template", template_path, "Template file, overriding the instance header");
  solve_cmd->add_flag("--oracle", allow_oracle, "Fall back to brute force for NP-complete templates");
  solve_cmd->add_flag("--json", json, "JSON output");
  solve_cmd->add_flag("--trace", trace, "Print the removed and contracted variable sets");
  solve_cmd->add_option("--max-vars", max_vars, "Variable limit for the brute-force oracle");

  auto* oracle_cmd = app.add_subcommand("oracle", "Decide an instance by brute force and print a witness");
  oracle_cmd->add_option("instance", instance_path, "Instance file")->required();
  oracle_cmd->add_option("--template", template_path, "Template file, overriding the instance header");
  oracle_cmd->add_flag("--json", json, "JSON output");
  oracle_cmd->add_option("--max-vars", max_vars, "Variable limit");

  auto* eval_cmd = app.add_subcommand("eval-pp", "Print the orbits of the relation a pp-formula defines");
  eval_cmd->add_option("formula", formula, "Formula, e.g. \"exists h. lt(x,h) & lt(h,y)\"")->required();
  eval_cmd->add_option("--template", template_path, "Template file")->required();

  auto* selftest_cmd = app.add_subcommand("selftest", "Check the pp-definition lemmas and solver agreement");
  selftest_cmd->add_option("--random", random_count, "Random instances per template family");
  selftest_cmd->add_option("--seed", seed, "Random seed");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (classify_cmd->parsed()) {
      const Classification c = classify(load_template_file(template_path));
      if (json) {
        out << to_json(c).dump(2) << '\n';
      } else {
        out << c.summary() << '\n';
        print_matrix(c, out);
      }
      return 0;
    }
    if (solve_cmd->parsed() || oracle_cmd->parsed()) {
      std::optional<std::filesystem::path> override_path;
      if (!template_path.empty()) override_path = template_path;
      const LoadedInstance loaded = load_instance_file(instance_path, override_path);
      if (oracle_cmd->parsed()) return report(oracle_solve(loaded.instance, max_vars), json, false, out);
      const Dispatcher dispatcher(loaded.tmpl, SolveOptions{allow_oracle, max_vars});
      const Verdict v = dispatcher.solve(loaded.instance);
      if (!json && trace) out << "algorithm: " << dispatcher.algorithm() << '\n';
      return report(v, json, trace, out);
    }
    if (eval_cmd->parsed()) {
      const TemporalRelation r = evaluate(formula, load_template_file(template_path));
      for (const auto& t : r.orbits()) out << t << '\n';
      if (r.empty()) out << "(empty)\n";
      return 0;
    }
    if (selftest_cmd->parsed()) {
      int status = 0;
      status |= print_suite(run_lemma_suite(), out);
      status |= print_suite(run_oracle_suite(random_count, seed), out);
      status |= print_suite(run_free_set_suite(random_count, seed), out);
      return status;
    }
  } catch (const NpHardTemplateError& e) {
    err << "error: " << e.what() << '\n';
    return kNpHard;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace tcsp::cli
