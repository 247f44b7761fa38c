#pragma once

// Lorentz functional J, Orlicz-type modular M, the admissibility integral K
// and the Calderon integral.

#include <string>
#include <vector>

#include "lorentz/monotone.hpp"
#include "lorentz/orlicz.hpp"

namespace lorentz {

struct Contribution {
  std::string label;
  double lo = 0.0;
  double hi = kInf;
  IntegralValue value;
};

/// A finite value or a divergence flag, with per-piece contributions. When
/// finite, value is the sum of the breakdown.
struct FunctionalValue {
  double value = 0.0;
  DivergentEnd divergent = DivergentEnd::none;
  std::vector<Contribution> breakdown;

  bool finite() const { return divergent == DivergentEnd::none; }
  void add(std::string label, double lo, double hi, IntegralValue v);
};

/// J = \int_0^inf f^r t^(r/p - 1) dt.
FunctionalValue lorentz_functional(const StepFunction& f, const Exponents& e);
FunctionalValue lorentz_functional(const TailedDecreasingFunction& f, const Exponents& e);

/// M = \int_0^inf Psi(f(t)) dt, with f = 0 beyond a step function's support.
FunctionalValue orlicz_modular(const OrliczFunction& psi, const StepFunction& f);
FunctionalValue orlicz_modular(const OrliczFunction& psi, const TailedDecreasingFunction& f);

/// K = \int_0^inf t^(q-1) / Psi(t)^(q/p) dt, reported as (0, 1] and (1, inf).
FunctionalValue condition3_integral(const OrliczFunction& psi, const Exponents& e);

struct CalderonResult {
  FunctionalValue value;            // \int_1^inf (t / Psi(t))^(1/(n-1)) dt
  FunctionalValue condition3_tail;  // K restricted to (1, inf) at p = n, r = 1
};

CalderonResult calderon_condition(const OrliczFunction& psi, int n);

double condition3_integrand(const OrliczFunction& psi, const Exponents& e, double t);
double calderon_integrand(const OrliczFunction& psi, int n, double t);

}  // namespace lorentz
