#pragma once

// Nondecreasing, strictly positive functions Psi on (0, inf) used as
// Orlicz-type modulars.

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "lorentz/monotone.hpp"

namespace lorentz {

/// coeff * s^exponent.
struct PowerPiece {
  double coeff = 1.0;
  double exponent = 1.0;
  bool operator==(const PowerPiece&) const = default;
};

/// Self-similarity of Psi at one end. Zero end: Psi(s/2) = 2^log2_factor Psi(s)
/// for s <= threshold. Infinity end: Psi(2s) = 2^log2_factor Psi(s) for
/// s >= threshold.
struct TailScale {
  double threshold;
  double log2_factor;
};

/// Piece i covers (breaks[i-1], breaks[i]] with breaks[-1] = 0 and
/// breaks[n-1] = inf.
struct PiecewisePowerPsi {
  std::vector<double> breaks;
  std::vector<PowerPiece> pieces;
  bool operator==(const PiecewisePowerPsi&) const = default;
};

/// Psi(s) = s^r * phi(s), phi(s) = g^{-1}(s)^(r/p - 1).
struct ConstructedPsi {
  std::shared_ptr<const TailedDecreasingFunction> g;
  Exponents exponents;
};

class OrliczFunction;

/// Psi_0(s) = \int_0^s Psi(u)/u du, tabulated at the kinks of the base.
struct ConvexifiedPsi {
  std::shared_ptr<const OrliczFunction> base;
  std::vector<double> knots;       // ascending; knots.front() is the zero threshold
  std::vector<double> cumulative;  // Psi_0 at each knot
  double period_integral = 0.0;    // \int_{S}^{2S} Psi(u)/u du at the infinity threshold S
};

class OrliczFunction {
 public:
  using Representation = std::variant<PiecewisePowerPsi, ConstructedPsi, ConvexifiedPsi>;

  static OrliczFunction piecewise_power(std::vector<double> breaks, std::vector<PowerPiece> pieces);
  static OrliczFunction power(double coeff, double exponent);
  /// s^(p - eps) on (0, 1], s^(p + eps) on (1, inf); eps = 0 gives s^p.
  static OrliczFunction two_power(double p, double eps);
  static OrliczFunction constructed(TailedDecreasingFunction g, Exponents e);
  static OrliczFunction convexified(const OrliczFunction& base);

  const Representation& representation() const { return rep_; }
  const PiecewisePowerPsi* as_piecewise() const { return std::get_if<PiecewisePowerPsi>(&rep_); }
  const ConstructedPsi* as_constructed() const { return std::get_if<ConstructedPsi>(&rep_); }
  const ConvexifiedPsi* as_convexified() const { return std::get_if<ConvexifiedPsi>(&rep_); }

  double eval(double s) const;
  double operator()(double s) const { return eval(s); }
  /// ln Psi(s), finite where Psi itself would overflow.
  double log_eval(double s) const;
  /// ln Psi at v.value(); for a constructed Psi the inversion of g runs on
  /// the split form (exact when v is anchored at one of g's knots).
  double log_eval(SplitValue v) const;
  /// lim_{s -> 0+} Psi(s).
  double at_zero() const;

  std::optional<TailScale> zero_tail() const;
  std::optional<TailScale> infinity_tail() const;
  /// Points in [a, b] where Psi is not smooth (capped at max_count).
  std::vector<double> kinks(double a, double b, std::size_t max_count = 100000) const;

 private:
  explicit OrliczFunction(Representation rep) : rep_(std::move(rep)) {}
  Representation rep_;
};

/// phi(s) = Psi(s) / s^r for a constructed Psi.
double phi(const OrliczFunction& psi, double s);

/// \int_range s^alpha Psi(s)^beta ds. Closed form on piecewise-power Psi;
/// otherwise adaptive quadrature between kinks, with the self-similar ends
/// summed as geometric series (divergence decided from the series ratio).
IntegralValue psi_power_integral(const OrliczFunction& psi, double alpha, double beta,
                                 Interval range = {});

}  // namespace lorentz
