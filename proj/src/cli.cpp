#include "glkit/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "glkit/emitter.hpp"
#include "glkit/prover.hpp"
#include "glkit/scenario.hpp"
#include "glkit/tower.hpp"

namespace glkit {

namespace {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Violation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::string& require_formula(const RunConfig& c) {
  if (!c.formula || c.formula->empty()) throw InputError(command_name(c.command) + " needs a formula argument");
  return *c.formula;
}

void require_format(const RunConfig& c, std::initializer_list<OutputFormat> allowed) {
  if (std::find(allowed.begin(), allowed.end(), c.format) == allowed.end()) {
    throw InputError("format " + format_extension(c.format) + " is not available for " + command_name(c.command));
  }
}

void dump(std::ostream& out, const nlohmann::json& j) { out << j.dump(2) << "\n"; }

int check_expectation(const RunConfig& c, bool provable, std::ostream& err) {
  if (!c.expect) return exit_code::ok;
  const bool want = *c.expect == Expectation::Provable;
  if (want == provable) return exit_code::ok;
  err << "expected " << (want ? "provable" : "unprovable") << ", got " << (provable ? "provable" : "unprovable")
      << "\n";
  return exit_code::mismatch;
}

int run_prove(const RunConfig& c, std::ostream& out, std::ostream& err) {
  require_format(c, {OutputFormat::Text, OutputFormat::Latex, OutputFormat::Json});
  const Formula phi = parse_modal(require_formula(c));
  const Verdict v = prove(phi);
  const bool provable = std::holds_alternative<Provable>(v);
  if (provable) {
    if (!check_derivation(std::get<Provable>(v).derivation, phi)) throw Violation("derivation does not check");
  } else {
    const TreeModel& m = std::get<Refuted>(v).model;
    if (forces(m, m.frame().root(), phi)) throw Violation("countermodel does not refute the formula");
  }

  switch (c.format) {
    case OutputFormat::Json: {
      nlohmann::json j = verdict_to_json(v);
      j["formula"] = print_modal(phi);
      dump(out, j);
      break;
    }
    case OutputFormat::Latex:
      out << "$" << print_modal(phi, ModalFormat::Latex) << "$ is "
          << (provable ? "provable in $\\mathsf{GL}$" : "not provable in $\\mathsf{GL}$") << "\n";
      break;
    default:
      if (provable) {
        out << "provable\nderivation: " << std::get<Provable>(v).derivation.node_count() << " nodes, checked\n";
      } else {
        out << "unprovable\ncountermodel: " << model_to_json(std::get<Refuted>(v).model).dump() << "\n";
      }
  }
  return check_expectation(c, provable, err);
}

std::optional<EvaluationKit> kit_for(const RunConfig& c, const Formula& phi, std::ostream& err) {
  const Verdict v = prove(phi);
  if (std::holds_alternative<Provable>(v)) {
    err << "formula is GL-provable; no countermodel\n";
    return std::nullopt;
  }
  EvaluationKit kit = build_kit(std::get<Refuted>(v).model);
  if (c.simplify) kit = simplify_paper_form(kit);
  return kit;
}

int run_evaluate(const RunConfig& c, std::ostream& out, std::ostream& err) {
  require_format(c, {OutputFormat::Text, OutputFormat::Latex, OutputFormat::Json});
  const Formula phi = parse_modal(require_formula(c));
  const auto kit = kit_for(c, phi, err);
  if (!kit) return exit_code::input_error;

  if (c.format == OutputFormat::Json) {
    dump(out, kit_dossier(*kit, phi));
  } else if (c.format == OutputFormat::Latex) {
    out << kit_latex(*kit, phi);
  } else {
    out << "formula: " << print_modal(phi) << "\n";
    out << "countermodel: " << model_to_json(kit->model).dump() << "\n";
    for (World a = 0; a < kit->f_sentences.size(); ++a) {
      out << "world " << a << " (height " << kit->heights[a] << ")\n";
      out << "  C: " << print_arith(kit->c_sentences[a]) << "\n";
      out << "  F: " << print_arith(kit->f_sentences[a]) << "\n";
    }
    for (const std::string& var : variables(phi)) {
      out << "f(" << var << ") = " << print_arith(evaluate_formula(*kit, Formula::var(var))) << "\n";
    }
    out << "f(phi) = " << print_arith(evaluate_formula(*kit, phi)) << "\n";
  }
  return exit_code::ok;
}

std::string least_descriptor(const Scenario& s) {
  std::string out;
  for (const auto& [j, v] : s.least) {
    if (!out.empty()) out += ";";
    out += "L" + std::to_string(j) + "=" + print_tower(v);
  }
  return out;
}

int run_simulate(const RunConfig& c, std::ostream& out, std::ostream& err) {
  require_format(c, {OutputFormat::Text, OutputFormat::Csv, OutputFormat::Json});
  const Formula phi = parse_modal(require_formula(c));
  const auto kit = kit_for(c, phi, err);
  if (!kit) return exit_code::input_error;

  const std::vector<Scenario> scenarios = enumerate_scenarios(*kit);
  nlohmann::json rows = nlohmann::json::array();
  std::size_t partition_violations = 0;
  std::size_t height_violations = 0;
  const bool csv = c.format != OutputFormat::Json;
  if (csv) out << "threshold,least,realized\n";
  for (const Scenario& s : scenarios) {
    std::optional<World> w;
    try {
      w = realized_world(s, *kit);
    } catch (const PartitionViolation& e) {
      ++partition_violations;
      err << "partition violation: " << e.what() << "\n";
    }
    if (w && kit->heights[*w] != std::min(s.threshold, s.horizon)) ++height_violations;
    if (csv) {
      out << s.threshold << "," << least_descriptor(s) << "," << (w ? std::to_string(*w) : "none") << "\n";
    } else {
      nlohmann::json row = scenario_to_json(s);
      row["realized"] = w ? nlohmann::json(*w) : nlohmann::json(nullptr);
      rows.push_back(row);
    }
  }
  const bool ok = partition_violations == 0 && height_violations == 0;
  if (csv) {
    out << "# scenarios=" << scenarios.size() << " partition_violations=" << partition_violations
        << " height_violations=" << height_violations << " status=" << (ok ? "ok" : "violated") << "\n";
  } else {
    dump(out, {{"formula", print_modal(phi)},
               {"simplified", kit->simplified},
               {"model", model_to_json(kit->model)},
               {"scenarios", rows},
               {"summary",
                {{"scenarios", scenarios.size()},
                 {"partition_violations", partition_violations},
                 {"height_violations", height_violations},
                 {"status", ok ? "ok" : "violated"}}}});
  }
  return ok ? exit_code::ok : exit_code::violation;
}

int run_oracle(const RunConfig& c, std::ostream& out, std::ostream&) {
  require_format(c, {OutputFormat::Text, OutputFormat::Json});
  if (c.max_worlds < 1) throw InputError("max-worlds must be at least 1");
  const ModelOracle oracle(c.max_worlds);
  std::uint64_t total = 0;
  std::uint64_t theorems = 0;
  std::vector<std::string> refuted_theorems;
  std::vector<std::string> missed;
  auto visit = [&](const Formula& f) {
    ++total;
    const bool provable = is_gl_theorem(f);
    const bool refuted = oracle.find(f).has_value();
    if (provable) ++theorems;
    if (provable && refuted) refuted_theorems.push_back(print_modal(f));
    if (!provable && !refuted) missed.push_back(print_modal(f));
  };
  if (c.formula) {
    visit(parse_modal(*c.formula));
  } else {
    for_each_formula(c.max_connectives, c.variables, visit);
  }
  const std::uint64_t disagreements = refuted_theorems.size() + missed.size();

  if (c.format == OutputFormat::Json) {
    dump(out, {{"max_worlds", c.max_worlds},
               {"max_connectives", c.formula ? nlohmann::json(nullptr) : nlohmann::json(c.max_connectives)},
               {"variables", c.variables},
               {"formulas", total},
               {"provable", theorems},
               {"agreements", total - disagreements},
               {"theorems_refuted_by_oracle", refuted_theorems},
               {"non_theorems_without_small_countermodel", missed}});
  } else {
    out << "formulas: " << total << "\nprovable: " << theorems << "\nagreements: " << total - disagreements
        << "\ndisagreements: " << disagreements << "\n";
    for (const auto& f : refuted_theorems) out << "  provable but refuted at <= " << c.max_worlds << ": " << f << "\n";
    for (const auto& f : missed) out << "  unprovable, no countermodel at <= " << c.max_worlds << ": " << f << "\n";
  }
  return disagreements == 0 ? exit_code::ok : exit_code::violation;
}

int run_tower(const RunConfig& c, std::ostream& out, std::ostream&) {
  require_format(c, {OutputFormat::Text, OutputFormat::Json});
  const std::string& text = require_formula(c);
  const TowerResult r = eval_tower_expression(text);
  if (c.format == OutputFormat::Json) {
    dump(out, {{"expression", text}, {"result", print_tower_result(r)}});
  } else {
    out << print_tower_result(r) << "\n";
  }
  return exit_code::ok;
}

int dispatch(const RunConfig& c, std::ostream& out, std::ostream& err) {
  switch (c.command) {
    case Command::Prove: return run_prove(c, out, err);
    case Command::Evaluate: return run_evaluate(c, out, err);
    case Command::Simulate: return run_simulate(c, out, err);
    case Command::Oracle: return run_oracle(c, out, err);
    case Command::Tower: return run_tower(c, out, err);
  }
  return exit_code::input_error;
}

int run_one(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(c, out, err);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const ArithError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const ScenarioError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const ModelError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const Violation& e) {
    err << "property violation: " << e.what() << "\n";
    return exit_code::violation;
  }
  return exit_code::input_error;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ')) s.pop_back();
  return s;
}

int run_corpus(const RunConfig& c, std::ostream& out, std::ostream& err) {
  namespace fs = std::filesystem;
  const fs::path dir(*c.corpus);
  if (!fs::is_directory(dir)) {
    err << "error: corpus directory " << dir.string() << " does not exist\n";
    return exit_code::input_error;
  }
  std::vector<fs::path> inputs;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() == ".formula") inputs.push_back(e.path());
  }
  std::sort(inputs.begin(), inputs.end());

  int status = exit_code::ok;
  std::size_t checked = 0;
  for (const fs::path& input : inputs) {
    const fs::path golden = dir / (input.stem().string() + "." + command_name(c.command) +
                                   (c.simplify ? ".simplified." : ".") + format_extension(c.format));
    if (!fs::exists(golden)) continue;
    RunConfig one = c;
    one.corpus.reset();
    one.formula = trim(read_file(input));
    std::ostringstream got;
    std::ostringstream diag;
    run_one(one, got, diag);
    ++checked;
    if (got.str() == read_file(golden)) {
      out << "ok " << golden.filename().string() << "\n";
    } else {
      out << "MISMATCH " << golden.filename().string() << "\n";
      status = exit_code::mismatch;
    }
  }
  if (checked == 0) {
    err << "error: no golden files for " << command_name(c.command) << " in " << dir.string() << "\n";
    return exit_code::input_error;
  }
  return status;
}

}  // namespace

std::string command_name(Command c) {
  switch (c) {
    case Command::Prove: return "prove";
    case Command::Evaluate: return "evaluate";
    case Command::Simulate: return "simulate";
    case Command::Oracle: return "oracle";
    case Command::Tower: return "tower";
  }
  return "?";
}

std::string format_extension(OutputFormat f) {
  switch (f) {
    case OutputFormat::Text: return "text";
    case OutputFormat::Latex: return "latex";
    case OutputFormat::Json: return "json";
    case OutputFormat::Csv: return "csv";
  }
  return "?";
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.corpus) return run_corpus(config, out, err);
  return run_one(config, out, err);
}

}  // namespace glkit
