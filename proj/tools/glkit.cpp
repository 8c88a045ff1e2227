#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "glkit/cli.hpp"

int main(int argc, char** argv) {
  using glkit::Command;
  using glkit::Expectation;
  using glkit::OutputFormat;

  glkit::RunConfig config;
  CLI::App app{"GL provability logic toolkit"};
  app.require_subcommand(1);

  const std::map<std::string, OutputFormat> formats{{"text", OutputFormat::Text},
                                                    {"latex", OutputFormat::Latex},
                                                    {"json", OutputFormat::Json},
                                                    {"csv", OutputFormat::Csv}};
  const std::map<std::string, Expectation> expectations{{"provable", Expectation::Provable},
                                                        {"unprovable", Expectation::Unprovable}};

  struct Spec {
    Command command;
    const char* name;
    const char* help;
    const char* arg;
  };
  const Spec specs[] = {
      {Command::Prove, "prove", "Decide a modal formula in GL", "modal formula"},
      {Command::Evaluate, "evaluate", "Arithmetical evaluation dossier for an unprovable formula", "modal formula"},
      {Command::Simulate, "simulate", "Least-proof scenario table for the formula's countermodel", "modal formula"},
      {Command::Oracle, "oracle", "Compare the prover with the finite-model oracle", "modal formula (optional)"},
      {Command::Tower, "tower", "Evaluate a closed tower expression", "expression"},
  };

  std::string formula;
  for (const Spec& s : specs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("formula", formula, s.arg);
    sub->add_option("--format", config.format, "Output format")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sub->add_option("--corpus", config.corpus, "Golden corpus directory");
    sub->callback([&config, c = s.command] { config.command = c; });
    if (s.command == Command::Prove) {
      sub->add_option("--expect", config.expect, "Expected verdict")
          ->transform(CLI::CheckedTransformer(expectations, CLI::ignore_case));
    }
    if (s.command == Command::Evaluate || s.command == Command::Simulate) {
      sub->add_flag("--simplify", config.simplify, "Use the simplified sentence forms");
    }
    if (s.command == Command::Oracle) {
      sub->add_option("--max-worlds", config.max_worlds, "Largest frame size searched")->check(CLI::PositiveNumber);
      sub->add_option("--max-connectives", config.max_connectives, "Connective bound of the formula family");
      sub->add_option("--variables", config.variables, "Variables of the formula family")->delimiter(',');
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : glkit::exit_code::input_error;
  }
  if (!formula.empty()) config.formula = formula;
  return glkit::run(config, std::cout, std::cerr);
}
