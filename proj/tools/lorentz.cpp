// lorentz: command-line front end.

#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace lorentz::cli;
  CLI::App app{"Lorentz functionals, Orlicz-type modulars and the Psi construction"};
  app.require_subcommand(1);

  std::string in, out, f, psi, report, grid;
  Exps e;
  double p = 0.0;
  std::vector<double> qs;
  std::vector<double> eps{1e-2, 1e-4, 1e-6, 1e-8};

  auto* rearrange = app.add_subcommand("rearrange", "value,measure CSV -> step document");
  rearrange->add_option("--in", in, "CSV samples")->required();
  rearrange->add_option("--out", out, "step document (default: stdout)");

  auto add_exps = [&e](CLI::App* sub) {
    sub->add_option("--p", e.p, "exponent p > 1")->required();
    sub->add_option("--r", e.r, "exponent 0 < r < p")->required();
  };

  auto* functionals = app.add_subcommand("functionals", "J, and M and K when --psi is given");
  functionals->add_option("--f", f, "step or tailed document")->required();
  functionals->add_option("--psi", psi, "Psi document");
  add_exps(functionals);

  auto* construct = app.add_subcommand("construct", "build an admissible Psi for f");
  construct->add_option("--f", f, "step document")->required();
  construct->add_option("--out", out, "constructed Psi document (default: stdout)");
  construct->add_option("--report", report, "diagnostics report");
  add_exps(construct);

  auto* verify = app.add_subcommand("verify", "check J <= c K^(r/q) M^(r/p)");
  verify->add_option("--f", f, "step document")->required();
  verify->add_option("--psi", psi, "Psi document")->required();
  add_exps(verify);

  auto* demo = app.add_subcommand("demo", "truncated integrals of the L^p, not L^q example");
  demo->add_option("--p", p, "p > 1")->required();
  demo->add_option("--q", qs, "one or more q > p")->required();
  demo->add_option("--eps", eps, "truncation points (default 1e-2 1e-4 1e-6 1e-8)");

  auto* plot = app.add_subcommand("plot", "sample f or Psi on a log grid as CSV");
  plot->add_option("--f", f, "step or tailed document");
  plot->add_option("--psi", psi, "Psi document");
  plot->add_option("--grid", grid, "log:lo:hi:n")->required();
  plot->add_option("--out", out, "CSV (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : kInputError;
  }

  if (*rearrange) return cmd_rearrange(in, out, std::cout, std::cerr);
  if (*functionals) return cmd_functionals(f, psi, e, std::cout, std::cerr);
  if (*construct) return cmd_construct(f, e, out, report, std::cout, std::cerr);
  if (*verify) return cmd_verify(f, psi, e, std::cout, std::cerr);
  if (*demo) return cmd_demo(p, qs, eps, std::cout, std::cerr);
  if (*plot) return cmd_plot(f, psi, grid, out, std::cout, std::cerr);
  return kInputError;
}
