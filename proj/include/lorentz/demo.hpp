#pragma once

// f(x) = x^(-1/p) ln^(-2/p)(1/x) on (0, upper]: in L^p, but in no L^q with
// q > p. Truncated integrals \int_eps^upper f^s dx make that visible.

#include <vector>

namespace lorentz {

double counterexample_f(double p, double x);

/// \int_eps^upper f(x)^s dx by quadrature on decades of x.
double truncated_integral(double p, double s, double eps, double upper = 0.5);

/// Closed form for s = p: 1/ln(1/upper) - 1/ln(1/eps).
double truncated_p_integral_exact(double p, double eps, double upper = 0.5);

struct CounterexampleRow {
  double eps;
  double p_integral;
  double p_exact;
  std::vector<double> q_integrals;  // one per q
};

struct CounterexampleReport {
  double p;
  double upper;
  std::vector<double> qs;
  std::vector<CounterexampleRow> rows;  // eps decreasing
  std::vector<double> p_differences;    // |I_p(eps_{i+1}) - I_p(eps_i)|
  bool p_differences_shrink;
  std::vector<bool> q_increasing;        // strictly, per q
  std::vector<bool> q_increments_grow;   // successive increments grow, per q
};

/// eps values are sorted decreasing and deduplicated; each must lie in
/// (0, upper]. RangeError if p <= 1, upper >= 1 or some q <= p.
CounterexampleReport counterexample_demo(double p, std::vector<double> qs,
                                         std::vector<double> eps, double upper = 0.5);

}  // namespace lorentz
