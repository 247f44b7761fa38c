#include "lorentz/orlicz.hpp"

#include <algorithm>
#include <cmath>

#include "lorentz/quadrature.hpp"

namespace lorentz {

namespace {

struct TailInfo {
  double value;     // g at the junction
  double exponent;  // power of the (possibly dyadic) tail
};

TailInfo near_info(const TailedDecreasingFunction& g) {
  if (const auto* d = std::get_if<DyadicTail>(&g.near_zero())) return {d->anchor_y, d->exponent};
  const auto& pt = std::get<PowerTail>(g.near_zero());
  if (pt.shift != 0.0) {
    throw std::invalid_argument("constructed Psi needs a self-similar near-zero tail (shift 0)");
  }
  return {pt.eval(g.t_lo()), pt.exponent};
}

TailInfo far_info(const TailedDecreasingFunction& g) {
  if (const auto* d = std::get_if<DyadicTail>(&g.far())) return {d->anchor_y, d->exponent};
  const auto& pt = std::get<PowerTail>(g.far());
  return {pt.eval(g.t_hi()), pt.exponent};
}

void add_if(std::vector<double>& out, double x, double a, double b, std::size_t cap) {
  if (x >= a && x <= b && out.size() < cap) out.push_back(x);
}

}  // namespace

OrliczFunction OrliczFunction::piecewise_power(std::vector<double> breaks,
                                               std::vector<PowerPiece> pieces) {
  if (pieces.size() != breaks.size() + 1) {
    throw std::invalid_argument("piecewise-power Psi needs one more piece than breaks");
  }
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    if (!(breaks[i] > (i == 0 ? 0.0 : breaks[i - 1])) || !std::isfinite(breaks[i])) {
      throw std::invalid_argument("Psi breaks must be finite, positive and increasing");
    }
  }
  for (const PowerPiece& piece : pieces) {
    if (!(piece.coeff > 0.0) || !(piece.exponent >= 0.0) || !std::isfinite(piece.coeff) ||
        !std::isfinite(piece.exponent)) {
      throw std::invalid_argument("Psi pieces must have coeff > 0 and exponent >= 0");
    }
  }
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    const double b = breaks[i];
    const double left = pieces[i].coeff * std::pow(b, pieces[i].exponent);
    const double right = pieces[i + 1].coeff * std::pow(b, pieces[i + 1].exponent);
    if (left > right * (1.0 + 1e-12)) throw std::invalid_argument("Psi must be nondecreasing");
  }
  return OrliczFunction(PiecewisePowerPsi{std::move(breaks), std::move(pieces)});
}

OrliczFunction OrliczFunction::power(double coeff, double exponent) {
  return piecewise_power({}, {PowerPiece{coeff, exponent}});
}

OrliczFunction OrliczFunction::two_power(double p, double eps) {
  if (!(eps >= 0.0) || !(p - eps >= 0.0)) {
    throw RangeError("two-power Psi needs 0 <= eps <= p");
  }
  if (eps == 0.0) return power(1.0, p);
  return piecewise_power({1.0}, {PowerPiece{1.0, p - eps}, PowerPiece{1.0, p + eps}});
}

OrliczFunction OrliczFunction::constructed(TailedDecreasingFunction g, Exponents e) {
  near_info(g);  // validates the near tail
  return OrliczFunction(
      ConstructedPsi{std::make_shared<const TailedDecreasingFunction>(std::move(g)), e});
}

OrliczFunction OrliczFunction::convexified(const OrliczFunction& base) {
  const auto zero = base.zero_tail();
  const auto inf = base.infinity_tail();
  if (!zero || !inf || !(zero->log2_factor < 0.0)) {
    throw std::invalid_argument("convexification needs Psi(s)/s integrable at 0");
  }
  ConvexifiedPsi out;
  out.base = std::make_shared<const OrliczFunction>(base);
  out.knots.push_back(zero->threshold);
  for (double k : base.kinks(zero->threshold, inf->threshold)) {
    if (k > out.knots.back()) out.knots.push_back(k);
  }
  if (inf->threshold > out.knots.back()) out.knots.push_back(inf->threshold);

  double running = psi_power_integral(base, -1.0, 1.0, Interval(0.0, out.knots.front())).value;
  out.cumulative.push_back(running);
  for (std::size_t i = 1; i < out.knots.size(); ++i) {
    running += psi_power_integral(base, -1.0, 1.0, Interval(out.knots[i - 1], out.knots[i])).value;
    out.cumulative.push_back(running);
  }
  const double S = out.knots.back();
  out.period_integral = psi_power_integral(base, -1.0, 1.0, Interval(S, 2.0 * S)).value;
  return OrliczFunction(std::move(out));
}

double OrliczFunction::eval(double s) const {
  if (!(s > 0.0)) throw RangeError("Psi is defined on (0, inf)");
  if (const auto* pw = as_piecewise()) {
    const auto it = std::lower_bound(pw->breaks.begin(), pw->breaks.end(), s);
    const PowerPiece& piece = pw->pieces[static_cast<std::size_t>(it - pw->breaks.begin())];
    return piece.coeff * std::pow(s, piece.exponent);
  }
  if (const auto* c = as_constructed()) {
    const double r = c->exponents.r;
    return std::pow(s, r) * std::pow(c->g->invert(s), r / c->exponents.p - 1.0);
  }
  const auto& cx = std::get<ConvexifiedPsi>(rep_);
  const OrliczFunction& base = *cx.base;
  if (s <= cx.knots.front()) return psi_power_integral(base, -1.0, 1.0, Interval(0.0, s)).value;
  auto partial = [&](double from, double value) {
    return s > from ? value + psi_power_integral(base, -1.0, 1.0, Interval(from, s)).value
                    : value;
  };
  if (s <= cx.knots.back()) {
    const auto i = static_cast<std::size_t>(
        std::upper_bound(cx.knots.begin(), cx.knots.end(), s) - cx.knots.begin() - 1);
    return partial(cx.knots[i], cx.cumulative[i]);
  }
  // Beyond the last knot each doubling multiplies the period integral by sigma.
  const double S = cx.knots.back();
  auto j = static_cast<long>(std::floor(std::log2(s / S)));
  while (std::ldexp(S, static_cast<int>(j)) > s) --j;
  while (std::ldexp(S, static_cast<int>(j + 1)) <= s) ++j;
  const double lf = base.infinity_tail()->log2_factor;
  const double periods = lf == 0.0 ? static_cast<double>(j)
                                   : std::expm1(lf * j * std::log(2.0)) /
                                         std::expm1(lf * std::log(2.0));
  return partial(std::ldexp(S, static_cast<int>(j)),
                 cx.cumulative.back() + cx.period_integral * periods);
}

double OrliczFunction::log_eval(double s) const {
  if (!(s > 0.0)) throw RangeError("Psi is defined on (0, inf)");
  if (const auto* pw = as_piecewise()) {
    const auto it = std::lower_bound(pw->breaks.begin(), pw->breaks.end(), s);
    const PowerPiece& piece = pw->pieces[static_cast<std::size_t>(it - pw->breaks.begin())];
    return std::log(piece.coeff) + piece.exponent * std::log(s);
  }
  if (const auto* c = as_constructed()) {
    const double r = c->exponents.r;
    return r * std::log(s) + (r / c->exponents.p - 1.0) * std::log(c->g->invert(s));
  }
  return std::log(eval(s));
}

double OrliczFunction::log_eval(SplitValue v) const {
  const auto* c = as_constructed();
  if (c == nullptr || v.offset == 0.0) return log_eval(v.value());
  const double s = v.value();
  if (!(s > 0.0)) throw RangeError("Psi is defined on (0, inf)");
  const double r = c->exponents.r;
  return r * std::log(s) + (r / c->exponents.p - 1.0) * std::log(c->g->invert_split(v));
}

double OrliczFunction::at_zero() const {
  if (const auto* pw = as_piecewise()) {
    return pw->pieces.front().exponent > 0.0 ? 0.0 : pw->pieces.front().coeff;
  }
  return 0.0;
}

std::optional<TailScale> OrliczFunction::zero_tail() const {
  if (const auto* pw = as_piecewise()) {
    return TailScale{pw->breaks.empty() ? 1.0 : pw->breaks.front(),
                     -pw->pieces.front().exponent};
  }
  if (const auto* c = as_constructed()) {
    const TailInfo far = far_info(*c->g);
    const double r = c->exponents.r;
    return TailScale{far.value, -r + (r / c->exponents.p - 1.0) / far.exponent};
  }
  const auto& cx = std::get<ConvexifiedPsi>(rep_);
  return TailScale{cx.knots.front(), cx.base->zero_tail()->log2_factor};
}

std::optional<TailScale> OrliczFunction::infinity_tail() const {
  if (const auto* pw = as_piecewise()) {
    return TailScale{pw->breaks.empty() ? 1.0 : pw->breaks.back(), pw->pieces.back().exponent};
  }
  if (const auto* c = as_constructed()) {
    const TailInfo near = near_info(*c->g);
    const double r = c->exponents.r;
    return TailScale{near.value, r - (r / c->exponents.p - 1.0) / near.exponent};
  }
  return std::nullopt;
}

std::vector<double> OrliczFunction::kinks(double a, double b, std::size_t max_count) const {
  std::vector<double> out;
  if (const auto* pw = as_piecewise()) {
    for (double x : pw->breaks) add_if(out, x, a, b, max_count);
    return out;
  }
  if (const auto* cx = as_convexified()) return cx->base->kinks(a, b, max_count);
  const TailedDecreasingFunction& g = *as_constructed()->g;
  add_if(out, g.eval(g.t_lo()), a, b, max_count);
  for (const CorePiece& piece : g.core()) {
    add_if(out, piece_top(piece), a, b, max_count);
    add_if(out, piece_eval(piece, piece_hi(piece)), a, b, max_count);
  }
  if (const auto* d = std::get_if<DyadicTail>(&g.near_zero())) {
    for (long j = -1; d->knot_y(j) <= b && out.size() < max_count; --j) {
      add_if(out, d->knot_y(j), a, b, max_count);
    }
  }
  if (const auto* d = std::get_if<DyadicTail>(&g.far())) {
    for (long j = 1; d->knot_y(j) >= a && out.size() < max_count; ++j) {
      add_if(out, d->knot_y(j), a, b, max_count);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double phi(const OrliczFunction& psi, double s) {
  const auto* c = psi.as_constructed();
  if (c == nullptr) throw std::invalid_argument("phi is defined for constructed Psi only");
  if (!(s > 0.0)) throw RangeError("phi is defined on (0, inf)");
  return std::pow(c->g->invert(s), c->exponents.r / c->exponents.p - 1.0);
}

// ---------------------------------------------------------------------------

IntegralValue psi_power_integral(const OrliczFunction& psi, double alpha, double beta,
                                 Interval range) {
  const double A = range.lo;
  const double B = range.hi;
  if (const auto* pw = psi.as_piecewise()) {
    IntegralValue total;
    for (std::size_t i = 0; i < pw->pieces.size(); ++i) {
      const double lo = std::max(A, i == 0 ? 0.0 : pw->breaks[i - 1]);
      const double hi = std::min(B, i == pw->breaks.size() ? kInf : pw->breaks[i]);
      if (!(lo < hi)) continue;
      const PowerPiece& piece = pw->pieces[i];
      IntegralValue v = power_integral(alpha + piece.exponent * beta, lo, hi);
      if (v.finite()) v.value *= std::pow(piece.coeff, beta);
      total += v;
    }
    return total;
  }

  const auto zero = psi.zero_tail();
  const auto inf = psi.infinity_tail();
  if ((A == 0.0 && !zero) || (B == kInf && !inf)) {
    throw std::invalid_argument("integral over an unbounded range needs a self-similar end of Psi");
  }
  const double S0 = zero ? zero->threshold : 0.0;
  const double Sinf = inf ? inf->threshold : kInf;
  auto F = [&](double s) { return std::exp(alpha * std::log(s) + beta * psi.log_eval(s)); };
  auto quad = [&](double a, double b) {
    const std::vector<double> cuts = psi.kinks(a, b);
    return quad::integrate_log_split(F, a, b, cuts);
  };

  IntegralValue total;
  if (A < S0) {
    const double b = std::min(B, S0);
    if (A == 0.0) {
      // F(s/2) ds/2 = 2^(-alpha-1) sigma^beta F(s) ds.
      total += quad::geometric_sum(quad(b / 2.0, b), -alpha - 1.0 + beta * zero->log2_factor,
                                   DivergentEnd::zero);
    } else {
      total += IntegralValue{quad(A, b)};
    }
  }
  {
    const double a = std::max(A, S0);
    const double b = std::min(B, Sinf);
    if (a < b) total += IntegralValue{quad(a, b)};
  }
  if (B > Sinf) {
    const double a = std::max(A, Sinf);
    if (B == kInf) {
      total += quad::geometric_sum(quad(a, 2.0 * a), alpha + 1.0 + beta * inf->log2_factor,
                                   DivergentEnd::infinity);
    } else {
      total += IntegralValue{quad(a, B)};
    }
  }
  return total;
}

}  // namespace lorentz
