// polyode: decide whether a second-order linear ODE with cubic, quadratic
// and linear coefficients has polynomial solutions, and find the parameter
// values that allow them.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "commands.hpp"

namespace {

using polyode::cli::json;

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path);
  if (!in) throw polyode::ParseError("cannot open input file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Flags {
  std::string input;
  long n = -1;
  long max_n = -1;
  std::string method = "both";
  std::string unknown;
  bool json_only = false;
  double tolerance = 1e-12;

  polyode::cli::CheckOptions check_options() const {
    polyode::cli::CheckOptions o;
    if (n >= 0) o.n = n;
    if (max_n >= 0) o.max_n = max_n;
    o.method = polyode::cli::parse_method(method);
    o.tolerance = tolerance;
    return o;
  }
  std::optional<std::string> declared_unknown() const {
    return unknown.empty() ? std::nullopt : std::optional<std::string>(unknown);
  }
};

void add_analysis_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("input", f.input, "Equation JSON file (stdin if omitted or '-')");
  cmd->add_option("--n", f.n, "Polynomial degree to test")->check(CLI::NonNegativeNumber);
  cmd->add_option("--max-n", f.max_n, "Test every degree 0..N")->check(CLI::NonNegativeNumber);
  cmd->add_option("--method", f.method, "determinant, aim or both")
      ->check(CLI::IsMember({"determinant", "aim", "both"}));
  cmd->add_option("--unknown", f.unknown, "Name of the unknown parameter");
  cmd->add_option("--tolerance", f.tolerance, "Root refinement tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--json", f.json_only, "Print only the JSON report");
}

int emit(const polyode::cli::Outcome& out, bool json_only) {
  std::cout << out.report.dump(2) << "\n";
  if (!json_only) std::cerr << out.summary;
  return out.exit_code;
}

int fail(const std::string& message, bool json_only) {
  std::cout << json{{"error", message}}.dump(2) << "\n";
  if (!json_only) std::cerr << "error: " << message << "\n";
  return polyode::cli::kExitInputError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polynomial solutions of second-order linear ODEs"};
  app.require_subcommand(1);
  Flags f;

  auto* check = app.add_subcommand("check", "Test an equation for polynomial solutions");
  add_analysis_flags(check, f);
  auto* constraints =
      app.add_subcommand("constraints", "Solve for the unknown that allows a polynomial solution");
  add_analysis_flags(constraints, f);

  auto* heun = app.add_subcommand("heun", "Analyze a Heun equation given by its parameters");
  std::string family;
  heun->add_option("family", family, "confluent, biconfluent or general")->required();
  add_analysis_flags(heun, f);

  auto* demo = app.add_subcommand("demo", "Run a worked case study");
  std::string demo_name;
  polyode::cli::DemoParams params;
  demo->add_option("name", demo_name, "Case study name")->required();
  for (const char* key : {"n", "mu", "Z", "d", "l", "m", "a", "b", "p", "alpha", "beta", "gamma",
                          "delta", "epsilon"}) {
    demo->add_option_function<std::string>(
        std::string("--") + key, [&params, key](const std::string& v) { params[key] = v; },
        "Case study parameter");
  }
  demo->add_option("--tolerance", f.tolerance, "Root refinement tolerance")
      ->check(CLI::PositiveNumber);
  demo->add_flag("--json", f.json_only, "Print only the JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : polyode::cli::kExitInputError;
  }

  try {
    if (*check || *constraints) {
      auto input = polyode::cli::read_equation(read_input(f.input), f.declared_unknown());
      auto opts = f.check_options();
      return emit(*check ? polyode::cli::cmd_check(input, opts)
                         : polyode::cli::cmd_constraints(input, opts),
                  f.json_only);
    }
    if (*heun) {
      return emit(polyode::cli::cmd_heun(family, read_input(f.input), f.declared_unknown(),
                                         f.check_options()),
                  f.json_only);
    }
    return emit(polyode::cli::cmd_demo(demo_name, params, f.tolerance), f.json_only);
  } catch (const polyode::Error& e) {
    return fail(e.what(), f.json_only);
  } catch (const json::exception& e) {
    return fail(e.what(), f.json_only);
  }
}
