#pragma once

// Adaptive quadrature helpers shared by the functionals.

#include <functional>
#include <span>

#include "lorentz/monotone.hpp"

namespace lorentz::quad {

inline constexpr double kRelTol = 1e-12;

/// \int_a^b F(t) dt for 0 < a < b < inf, computed on x = ln t.
double integrate_log(const std::function<double(double)>& F, double a, double b,
                     double rel_tol = kRelTol);

/// Same, split at the given interior points (any order, out-of-range ignored).
double integrate_log_split(const std::function<double(double)>& F, double a, double b,
                           std::span<const double> cuts, double rel_tol = kRelTol);

/// sum_{j >= 0} base * ratio^j where ratio = 2^log2_ratio. Divergent when
/// log2_ratio >= 0 and base > 0.
IntegralValue geometric_sum(double base, double log2_ratio, DivergentEnd end_if_divergent);

}  // namespace lorentz::quad
