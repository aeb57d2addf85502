#include "commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

int main(int argc, char** argv) {
  CLI::App app{"Residue-formula evaluation of rational-exponential integrals over R^r"};
  app.require_subcommand(1, 1);

  std::string file;
  residuum::cli::CommandOptions options;
  bool json = false;

  const std::vector<std::pair<const char*, const char*>> commands{
      {"analyze", "Flag stability and compatibility table with Jacobians"},
      {"eval", "Evaluate the integral with the residue formula"},
      {"verify", "Evaluate and compare against numerical quadrature"},
      {"grouping", "Canonical divisor grouping and Grothendieck residues"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("file", file, "Problem file")->required()->check(CLI::ExistingFile);
    sub->add_option("--precision", options.precision, "Working precision in bits")
        ->capture_default_str()
        ->check(CLI::Range(32u, 4096u));
    sub->add_option("--box", options.box, "Quadrature box half-width")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--tol", options.tol, "Relative tolerance of verify")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_flag("--json", json, "Machine-readable output");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : residuum::cli::kInputError;
  }

  std::ifstream in(file, std::ios::binary);
  std::ostringstream source;
  source << in.rdbuf();
  if (!in) {
    std::cerr << "cannot read " << file << "\n";
    return residuum::cli::kInputError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  const residuum::cli::Report report = residuum::cli::run(command, source.str(), options);
  if (json)
    std::cout << report.data.dump(2) << "\n";
  else
    (report.data.contains("error") ? std::cerr : std::cout) << report.text;
  return report.exit_code;
}
