#include "lorentz/demo.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "lorentz/io.hpp"
#include "lorentz/monotone.hpp"
#include "lorentz/quadrature.hpp"

namespace lorentz {

double counterexample_f(double p, double x) {
  return std::pow(x, -1.0 / p) * std::pow(-std::log(x), -2.0 / p);
}

double truncated_integral(double p, double s, double eps, double upper) {
  if (!(eps < upper)) return 0.0;
  // f^s in logs: the power and the log factor are both huge near eps.
  auto F = [p, s](double x) {
    return std::exp(-(s / p) * std::log(x) - (2.0 * s / p) * std::log(-std::log(x)));
  };
  std::vector<double> cuts;
  for (double c = std::pow(10.0, std::ceil(std::log10(eps))); c < upper; c *= 10.0) {
    cuts.push_back(c);
  }
  return quad::integrate_log_split(F, eps, upper, cuts);
}

double truncated_p_integral_exact(double /*p*/, double eps, double upper) {
  return 1.0 / -std::log(upper) - 1.0 / -std::log(eps);
}

CounterexampleReport counterexample_demo(double p, std::vector<double> qs,
                                         std::vector<double> eps, double upper) {
  if (!(p > 1.0)) throw RangeError("p must be > 1 (got " + format_number(p) + ")");
  if (!(upper > 0.0 && upper < 1.0)) throw RangeError("upper end must lie in (0, 1)");
  for (double q : qs) {
    if (!(q > p)) {
      throw RangeError("each q must be > p (got q = " + format_number(q) +
                       ", p = " + format_number(p) + ")");
    }
  }
  for (double e : eps) {
    if (!(e > 0.0 && e <= upper)) {
      throw RangeError("eps must lie in (0, " + format_number(upper) + "] (got " +
                       format_number(e) + ")");
    }
  }
  std::sort(eps.begin(), eps.end(), std::greater<>());
  eps.erase(std::unique(eps.begin(), eps.end()), eps.end());

  CounterexampleReport rep{p, upper, qs, {}, {}, true, {}, {}};
  for (double e : eps) {
    CounterexampleRow row{e, truncated_integral(p, p, e, upper),
                          truncated_p_integral_exact(p, e, upper), {}};
    for (double q : qs) row.q_integrals.push_back(truncated_integral(p, q, e, upper));
    rep.rows.push_back(std::move(row));
  }
  for (std::size_t i = 1; i < rep.rows.size(); ++i) {
    rep.p_differences.push_back(std::abs(rep.rows[i].p_integral - rep.rows[i - 1].p_integral));
  }
  for (std::size_t i = 1; i < rep.p_differences.size(); ++i) {
    if (!(rep.p_differences[i] < rep.p_differences[i - 1])) rep.p_differences_shrink = false;
  }
  for (std::size_t j = 0; j < qs.size(); ++j) {
    bool increasing = true;
    bool grow = true;
    double last_step = 0.0;
    for (std::size_t i = 1; i < rep.rows.size(); ++i) {
      const double step = rep.rows[i].q_integrals[j] - rep.rows[i - 1].q_integrals[j];
      if (!(step > 0.0)) increasing = false;
      if (i > 1 && !(step > last_step)) grow = false;
      last_step = step;
    }
    rep.q_increasing.push_back(increasing);
    rep.q_increments_grow.push_back(grow);
  }
  return rep;
}

}  // namespace lorentz
