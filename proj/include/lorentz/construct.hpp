#pragma once

// Builds, for a step f with finite J, an admissible Psi with finite modular:
// cushion f0, g0 = f + f0, its dyadic interpolant g, and Psi from g.

#include <string>
#include <vector>

#include "lorentz/functionals.hpp"

namespace lorentz {

/// f0(t) = delta t^-a on (0, 1], delta t^-b on (1, inf).
struct CushionParams {
  double a;
  double b;
  double delta;
  double eval(double t) const;
};

/// a = 1/(2p), b = 2/p, delta chosen so that J(f0) = J(f)/2.
CushionParams make_cushion(const StepFunction& f, const Exponents& e);

TailedDecreasingFunction build_g0(const StepFunction& f, const CushionParams& cushion);

struct LevelWindow {
  int k_min;
  int k_max;
  /// Levels kept above the near-zero shift so the dyadic near tail matches
  /// the shifted power to about 2^-guard.
  int guard;
};

/// Levels [k_min, k_max] for g: padded by `pad` doublings around g0's core,
/// with up to 40 guard levels above the near-zero shift (fewer when the knot
/// abscissae would leave double range; RangeError if even the padded core
/// does not fit).
LevelWindow level_window(const TailedDecreasingFunction& g0, int pad = 4);

/// Continuous piecewise-linear interpolant through (g0^{-1}(2^k), 2^k),
/// k in the window, continued by dyadic tails with g0's tail exponents.
TailedDecreasingFunction build_g(const TailedDecreasingFunction& g0, const LevelWindow& window);
TailedDecreasingFunction build_g(const TailedDecreasingFunction& g0, int pad = 4);

OrliczFunction psi_from_g(const TailedDecreasingFunction& g, const Exponents& e);

/// One named check with its measured value; `limit` is the bound the value is
/// compared against (meaning depends on the check, see `detail`).
struct Diagnostic {
  std::string name;
  double value;
  double limit;
  bool passed;
  std::string detail;
};

struct ConstructionResult {
  Exponents exponents;
  CushionParams cushion;
  LevelWindow window;
  TailedDecreasingFunction g0;
  TailedDecreasingFunction g;
  OrliczFunction psi;
  double J_f;  // J of the original input
  double J_g0;
  double J_g;
  FunctionalValue K;
  FunctionalValue M_f;
  FunctionalValue M_g;
  FunctionalValue M_half_g0;  // modular of g0/2
  double identity_K_residual;  // |K - J(g)/p| / K
  double identity_M_residual;  // |M_g - J(g)| / J(g)
  std::vector<Diagnostic> diagnostics;

  bool all_passed() const;
  const Diagnostic* find(const std::string& name) const;
};

/// Runs the pipeline on 2f so that the final modular bound applies to f.
ConstructionResult construct_psi(const StepFunction& f, const Exponents& e, int pad = 4);

/// Psi_0(s) = \int_0^s Psi(u)/u du; needs Psi(s)/s nondecreasing (r = 1 for a
/// constructed Psi, exponents >= 1 for a piecewise one).
OrliczFunction convexify(const OrliczFunction& psi);

}  // namespace lorentz
