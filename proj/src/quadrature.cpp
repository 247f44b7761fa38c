#include "lorentz/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace lorentz::quad {

double integrate_log(const std::function<double(double)>& F, double a, double b,
                     double rel_tol) {
  if (!(a < b)) return 0.0;
  // t = a * exp(v * L), v in [0, 1]: full relative resolution on narrow
  // intervals. The unit domain also sidesteps Boost's recursive GK comparing
  // an unscaled error estimate against a scaled tolerance on short intervals.
  const double L = std::log(b / a);
  auto in_log = [&F, a, L](double v) {
    const double t = a * std::exp(v * L);
    return F(t) * t * L;
  };
  double error = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 21>::integrate(in_log, 0.0, 1.0, 10,
                                                                       rel_tol, &error);
}

double integrate_log_split(const std::function<double(double)>& F, double a, double b,
                           std::span<const double> cuts, double rel_tol) {
  std::vector<double> points{a};
  for (double c : cuts) {
    if (c > a && c < b) points.push_back(c);
  }
  points.push_back(b);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    total += integrate_log(F, points[i], points[i + 1], rel_tol);
  }
  return total;
}

IntegralValue geometric_sum(double base, double log2_ratio, DivergentEnd end_if_divergent) {
  if (base == 0.0) return {0.0, DivergentEnd::none};
  if (log2_ratio >= 0.0) return {kInf, end_if_divergent};
  return {base / -std::expm1(log2_ratio * std::log(2.0)), DivergentEnd::none};
}

}  // namespace lorentz::quad
