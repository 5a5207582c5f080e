// emk: exact Euler-Maclaurin expansions of Riemann sums over rational
// polyhedra.  Subcommands: mu, expand, verify, ehrhart, local-eml.

#include <CLI11.hpp>
#include <iostream>

#include "emk/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Exact Euler-Maclaurin expansions of Riemann sums over rational polyhedra"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "Print help");

  emk::JobSpec spec;
  auto add_common = [&](CLI::App* cmd) {
    cmd->set_help_flag("--help", "Print help");
    cmd->add_option("--polyhedron", spec.polyhedron_path, "Polyhedron JSON file")->required();
    cmd->add_option("--scalar-product", spec.scalar_product_path,
                    "Scalar product JSON file (default: identity)");
    cmd->add_option("--order", spec.order, "Expansion order K (default depends on the command)");
    cmd->add_option("--t", spec.t_values, "Dilation values, rationals like 2 or 3/2");
    cmd->add_option("--h", spec.test_function,
                    "Test function, e.g. \"x1^2*x2 + 3/2*x1\" or \"one\"");
    cmd->add_option("--format", spec.format, "Output format: json or table")
        ->check(CLI::IsMember({"json", "table"}));
    cmd->add_option("--mode", spec.mode, "Dilation class: integer or rational-t")
        ->check(CLI::IsMember({"integer", "rational-t"}));
    cmd->add_option("--output", spec.output_path, "Write the document to a file");
  };

  add_common(app.add_subcommand("mu", "Renormalized mu-function of a pointed affine cone"));
  add_common(app.add_subcommand("expand",
                                "Asymptotic expansion terms of the Riemann sum over a polyhedron"));
  add_common(app.add_subcommand("verify",
                                "Check the expansion against brute-force lattice enumeration"));
  add_common(app.add_subcommand("ehrhart", "Lattice-point counting polynomial of a polytope"));
  add_common(app.add_subcommand(
      "local-eml", "Face-by-face decomposition of a cone's lattice generating function"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return emk::kExitValidation;
  }

  spec.command = app.get_subcommands().front()->get_name();
  return emk::run_job(spec, std::cout, std::cerr);
}
