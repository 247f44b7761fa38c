#pragma once

// Monotone functions on (0, inf): step functions (rearrangements) and
// strictly decreasing functions made of a piecewise core plus power tails.

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace lorentz {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Thrown when a parameter leaves its admissible range.
class RangeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The exponent triple (p, r, q) with 1/p + 1/q = 1/r, 0 < r < p, p > 1.
struct Exponents {
  double p = 2.0;
  double r = 1.0;
  double q = 2.0;

  bool operator==(const Exponents&) const = default;
};

Exponents make_exponents(double p, double r);

struct Interval {
  double lo = 0.0;
  double hi = kInf;

  Interval() = default;
  Interval(double lo, double hi);

  double measure() const { return hi - lo; }
  bool operator==(const Interval&) const = default;
};

enum class DivergentEnd { none, zero, infinity, both };

DivergentEnd merge(DivergentEnd a, DivergentEnd b);
const char* to_string(DivergentEnd end);

/// Result of an improper integral: a finite value or a divergence flag that
/// names the offending end.
struct IntegralValue {
  double value = 0.0;
  DivergentEnd divergent = DivergentEnd::none;

  bool finite() const { return divergent == DivergentEnd::none; }

  IntegralValue& operator+=(const IntegralValue& other);
};

// ---------------------------------------------------------------------------
// Step functions.

/// Nonincreasing step function: value v_i on (t_{i-1}, t_i] with t_0 = 0,
/// and 0 beyond the last breakpoint.
class StepFunction {
 public:
  StepFunction() = default;
  StepFunction(std::vector<double> breakpoints, std::vector<double> values);

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  double support_measure() const { return empty() ? 0.0 : breakpoints_.back(); }

  /// Left end of step i.
  double step_lo(std::size_t i) const { return i == 0 ? 0.0 : breakpoints_[i - 1]; }

  double eval(double t) const;

  /// c * f for c > 0.
  StepFunction scaled(double c) const;
  /// t -> f(t / lambda) for lambda > 0.
  StepFunction dilated(double lambda) const;

  bool operator==(const StepFunction&) const = default;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

// ---------------------------------------------------------------------------
// Strictly decreasing functions with tails.

/// anchor + offset, unevaluated. On linear segments anchor is the nearer knot
/// value, so an offset far below the anchor's ulp survives; inverting from the
/// pair recovers t where the rounded sum could not (nearly flat segments).
struct SplitValue {
  double anchor;
  double offset = 0.0;
  double value() const { return anchor + offset; }
};

/// shift + coeff * t^(-exponent). Far tails carry shift == 0.
struct PowerTail {
  double shift = 0.0;
  double coeff = 1.0;
  double exponent = 1.0;

  double eval(double t) const;
  double invert(double s) const;
  bool operator==(const PowerTail&) const = default;
};

/// Piecewise-linear interpolant of coeff * t^(-exponent) through its dyadic
/// knots. Knot j sits at (anchor_t * 2^(j/exponent), anchor_y * 2^(-j)) for
/// every integer j; the tail is self-similar: h(rho t) = h(t) / 2 with
/// rho = 2^(1/exponent).
struct DyadicTail {
  double anchor_t = 1.0;
  double anchor_y = 1.0;
  double exponent = 1.0;

  double coeff() const;
  double period() const;  // rho
  double knot_t(long j) const;
  double knot_y(long j) const;
  /// Index j with knot_t(j) <= t <= knot_t(j + 1).
  long segment_of(double t) const;
  double eval(double t) const;
  double invert(double s) const;
  SplitValue eval_split(double t) const;
  double invert_split(SplitValue v) const;
  bool operator==(const DyadicTail&) const = default;
};

using Tail = std::variant<PowerTail, DyadicTail>;

/// Linear on (lo, hi]: y_lo is the limit at lo+, y_hi the value at hi.
struct LinearPiece {
  double lo, hi, y_lo, y_hi;
  bool operator==(const LinearPiece&) const = default;
};

/// shift + coeff * t^(-exponent) on (lo, hi].
struct ShiftedPowerPiece {
  double lo, hi, shift, coeff, exponent;
  bool operator==(const ShiftedPowerPiece&) const = default;
};

using CorePiece = std::variant<LinearPiece, ShiftedPowerPiece>;

double piece_lo(const CorePiece& piece);
double piece_hi(const CorePiece& piece);
double piece_eval(const CorePiece& piece, double t);
/// Limit of the piece at lo+.
double piece_top(const CorePiece& piece);

/// Strictly decreasing function on (0, inf) with range (0, inf):
/// near-zero tail on (0, t_lo], core pieces covering (t_lo, t_hi], far tail on
/// (t_hi, inf). Downward jumps between pieces are allowed (g0 = f + f0 has
/// them); the interpolants built by the construction are continuous.
class TailedDecreasingFunction {
 public:
  TailedDecreasingFunction(Tail near_zero, double t_lo, std::vector<CorePiece> core,
                           Tail far);

  /// Continuous function through knots (abscissae increasing, ordinates
  /// decreasing) with dyadic tails anchored at the first and last knot.
  static TailedDecreasingFunction from_knots(const std::vector<std::pair<double, double>>& knots,
                                             double near_exponent, double far_exponent);

  const Tail& near_zero() const { return near_; }
  const Tail& far() const { return far_; }
  const std::vector<CorePiece>& core() const { return core_; }
  double t_lo() const { return t_lo_; }
  double t_hi() const { return t_hi_; }

  double eval(double t) const;
  /// Generalized inverse sup{t : f(t) > s}; the unique solution of f(t) = s
  /// where f is continuous.
  double invert(double s) const;
  /// eval / invert through SplitValue; invert_split(eval_split(t)) keeps full
  /// relative accuracy in t on linear segments.
  SplitValue eval_split(double t) const;
  double invert_split(SplitValue v) const;

  /// c * f for c > 0.
  TailedDecreasingFunction scaled(double c) const;

  bool is_continuous(double rel_tol = 1e-12) const;
  /// Knots of a continuous all-linear core, including both junctions.
  std::vector<std::pair<double, double>> knots() const;
  /// Abscissae where the function is not smooth, restricted to [a, b]:
  /// junctions, piece boundaries, and dyadic tail knots (at most max_count).
  std::vector<double> kinks(double a, double b, std::size_t max_count = 100000) const;

  bool operator==(const TailedDecreasingFunction&) const = default;

 private:
  Tail near_;
  std::vector<CorePiece> core_;
  Tail far_;
  double t_lo_;
  double t_hi_;
};

double eval(const StepFunction& fn, double t);
double eval(const TailedDecreasingFunction& fn, double t);
double invert(const TailedDecreasingFunction& fn, double s);

/// \int_range fn(t)^rho * t^alpha dt. Constant and pure-power pieces use
/// closed forms; linear and shifted-power pieces use adaptive quadrature in
/// log coordinates; dyadic tails are summed as geometric series over their
/// self-similar periods. Divergence is decided from endpoint exponents.
IntegralValue integrate_power(const StepFunction& fn, double rho, double alpha,
                              Interval range = {});
IntegralValue integrate_power(const TailedDecreasingFunction& fn, double rho, double alpha,
                              Interval range = {});

/// \int_a^b t^beta dt for 0 <= a < b <= inf.
IntegralValue power_integral(double beta, double a, double b);

}  // namespace lorentz
