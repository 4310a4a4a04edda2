#include <iostream>

#include "CLI11.hpp"
#include "stonedual/dsl.hpp"

int main(int argc, char** argv) {
  using stonedual::dsl::Command;
  using stonedual::dsl::Format;

  CLI::App app{"Stone duality engine for representable Boolean algebras"};
  app.require_subcommand(1);
  Command cmd;
  std::string format = "human";

  const auto add_common = [&](CLI::App* sub, bool input_required) {
    auto* in = sub->add_option("input", cmd.input, "Input object: a file path or inline JSON");
    if (input_required) in->required();
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"human", "json"}));
  };

  auto* dual = app.add_subcommand("dual", "Apply a functor to an object or morphism");
  dual->add_option("--functor", cmd.functor, "Functor")
      ->required()
      ->check(CLI::IsMember({"F", "G", "E", "Ep", "Fp", "Gp", "theta-t", "theta-a", "P", "At"}));
  add_common(dual, true);

  auto* check = app.add_subcommand("check", "Decide a property or run a law suite");
  check->add_option("--law", cmd.law, "Property or suite")
      ->required()
      ->check(CLI::IsMember({"zlba", "lba", "dense", "simple", "z", "dz", "ldz", "stone", "iota", "coherence",
                             "functors", "tarski", "all"}));
  check->add_option("--seed", cmd.seed, "Seed for the randomized suites");
  check->add_option("--max-atoms", cmd.max_atoms, "Largest finite algebra checked exhaustively");
  add_common(check, false);

  auto* roundtrip = app.add_subcommand("roundtrip", "Check that a functor pair composes to the identity");
  roundtrip->add_option("--pair", cmd.pair, "Functor pair")->required()->check(CLI::IsMember({"E"}));
  add_common(roundtrip, false);

  auto* catalog = app.add_subcommand("catalog", "List the built-in examples");
  catalog->add_option("--format", format, "Output format")->check(CLI::IsMember({"human", "json"}));

  auto* validate = app.add_subcommand("validate", "Parse and validate an object");
  add_common(validate, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  cmd.verb = app.get_subcommands().front()->get_name();
  cmd.format = format == "json" ? Format::Json : Format::Human;
  const auto result = stonedual::dsl::run(cmd);
  std::cout << result.output;
  return result.exit_code;
}
