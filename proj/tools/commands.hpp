#pragma once

// Subcommand bodies, kept separate from argument parsing so tests can drive
// them with string streams.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace lorentz::cli {

enum ExitCode : int { kOk = 0, kViolation = 1, kInputError = 2, kHypothesisFailure = 3 };

struct Exps {
  double p = 0.0;
  double r = 0.0;
};

/// Empty out path means standard output.
int cmd_rearrange(const std::string& in_path, const std::string& out_path, std::ostream& out,
                  std::ostream& err);
int cmd_functionals(const std::string& f_path, const std::string& psi_path, Exps e,
                    std::ostream& out, std::ostream& err);
int cmd_construct(const std::string& f_path, Exps e, const std::string& psi_out,
                  const std::string& report_out, std::ostream& out, std::ostream& err);
int cmd_verify(const std::string& f_path, const std::string& psi_path, Exps e, std::ostream& out,
               std::ostream& err);
int cmd_demo(double p, const std::vector<double>& qs, const std::vector<double>& eps,
             std::ostream& out, std::ostream& err);
/// Exactly one of f_path / psi_path is set.
int cmd_plot(const std::string& f_path, const std::string& psi_path, const std::string& grid,
             const std::string& out_path, std::ostream& out, std::ostream& err);

/// "log:lo:hi:n" -> n geometric points from lo to hi inclusive.
std::vector<double> parse_grid(const std::string& spec);

}  // namespace lorentz::cli
