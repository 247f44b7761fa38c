#include "lorentz/monotone.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lorentz/quadrature.hpp"

namespace lorentz {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

void require_positive_arg(double t, const char* what) {
  if (!(t > 0.0)) throw RangeError(std::string(what) + " must be > 0 (got " + fmt(t) + ")");
}

// Linear segment through (t0, y0), (t1, y1) with y0 > y1. Both helpers work
// from the nearer endpoint so relative accuracy survives long segments.
double linear_eval(double t0, double y0, double t1, double y1, double t) {
  const double width = t1 - t0;
  const double w = (t - t0) / width;
  if (w <= 0.5) return y0 - w * (y0 - y1);
  return y1 + ((t1 - t) / width) * (y0 - y1);
}

double linear_invert(double t0, double y0, double t1, double y1, double s) {
  const double drop = y0 - y1;
  const double u = (y0 - s) / drop;
  double t;
  if (u <= 0.5) {
    t = t0 + u * (t1 - t0);
  } else {
    t = t1 - ((s - y1) / drop) * (t1 - t0);
  }
  return std::clamp(t, t0, t1);
}

SplitValue linear_eval_split(double t0, double y0, double t1, double y1, double t) {
  const double width = t1 - t0;
  const double w = (t - t0) / width;
  if (w <= 0.5) return {y0, -w * (y0 - y1)};
  return {y1, ((t1 - t) / width) * (y0 - y1)};
}

// Exact only when v is anchored at one of this segment's knots.
double linear_invert_split(double t0, double y0, double t1, double y1, SplitValue v) {
  const double drop = y0 - y1;
  double t;
  if (v.anchor == y0 && v.offset <= 0.0) {
    t = t0 + (-v.offset / drop) * (t1 - t0);
  } else if (v.anchor == y1 && v.offset >= 0.0) {
    t = t1 - (v.offset / drop) * (t1 - t0);
  } else {
    return linear_invert(t0, y0, t1, y1, v.value());
  }
  return std::clamp(t, t0, t1);
}

double tail_eval(const Tail& tail, double t) {
  return std::visit([t](const auto& x) { return x.eval(t); }, tail);
}

double tail_invert(const Tail& tail, double s) {
  return std::visit([s](const auto& x) { return x.invert(s); }, tail);
}

// Limit of the far tail at its junction (from the right).
double far_top(const Tail& tail, double t_hi) {
  if (const auto* d = std::get_if<DyadicTail>(&tail)) return d->anchor_y;
  return std::get<PowerTail>(tail).eval(t_hi);
}

bool approx_le(double a, double b, double rel_tol) { return a <= b + rel_tol * std::abs(b); }

}  // namespace

// ---------------------------------------------------------------------------

Exponents make_exponents(double p, double r) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw RangeError("exponent p must satisfy p > 1 (got p=" + fmt(p) + ")");
  }
  if (!(r > 0.0)) throw RangeError("exponent r must satisfy r > 0 (got r=" + fmt(r) + ")");
  if (!(r < p)) {
    throw RangeError("exponents must satisfy r < p (got r=" + fmt(r) + ", p=" + fmt(p) + ")");
  }
  return Exponents{p, r, 1.0 / (1.0 / r - 1.0 / p)};
}

Interval::Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (!(lo >= 0.0) || !(hi > lo)) {
    throw RangeError("interval requires 0 <= lo < hi (got " + fmt(lo) + ", " + fmt(hi) + ")");
  }
}

DivergentEnd merge(DivergentEnd a, DivergentEnd b) {
  if (a == DivergentEnd::none) return b;
  if (b == DivergentEnd::none || a == b) return a;
  return DivergentEnd::both;
}

const char* to_string(DivergentEnd end) {
  switch (end) {
    case DivergentEnd::none: return "none";
    case DivergentEnd::zero: return "zero";
    case DivergentEnd::infinity: return "infinity";
    case DivergentEnd::both: return "both";
  }
  return "none";
}

IntegralValue& IntegralValue::operator+=(const IntegralValue& other) {
  divergent = merge(divergent, other.divergent);
  value = finite() ? value + other.value : kInf;
  return *this;
}

IntegralValue power_integral(double beta, double a, double b) {
  const double gamma = beta + 1.0;
  DivergentEnd div = DivergentEnd::none;
  if (a == 0.0 && gamma <= 0.0) div = merge(div, DivergentEnd::zero);
  if (b == kInf && gamma >= 0.0) div = merge(div, DivergentEnd::infinity);
  if (div != DivergentEnd::none) return {kInf, div};
  if (a == 0.0) return {std::pow(b, gamma) / gamma, div};
  if (b == kInf) return {std::pow(a, gamma) / -gamma, div};
  const double log_ratio = std::log(b / a);
  if (gamma == 0.0) return {log_ratio, div};
  return {std::pow(a, gamma) * std::expm1(gamma * log_ratio) / gamma, div};
}

// ---------------------------------------------------------------------------
// StepFunction

StepFunction::StepFunction(std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (breakpoints_.size() != values_.size()) {
    throw std::invalid_argument("step function needs as many values as breakpoints");
  }
  double prev_t = 0.0;
  double prev_v = kInf;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double t = breakpoints_[i];
    const double v = values_[i];
    if (!std::isfinite(t) || !(t > prev_t)) {
      throw std::invalid_argument("step breakpoints must be finite and strictly increasing from 0");
    }
    if (!std::isfinite(v) || v < 0.0 || v > prev_v) {
      throw std::invalid_argument("step values must be finite, nonnegative and nonincreasing");
    }
    prev_t = t;
    prev_v = v;
  }
}

double StepFunction::eval(double t) const {
  require_positive_arg(t, "t");
  const auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), t);
  if (it == breakpoints_.end()) return 0.0;
  return values_[static_cast<std::size_t>(it - breakpoints_.begin())];
}

StepFunction StepFunction::scaled(double c) const {
  require_positive_arg(c, "scale");
  std::vector<double> v = values_;
  for (double& x : v) x *= c;
  return {breakpoints_, std::move(v)};
}

StepFunction StepFunction::dilated(double lambda) const {
  require_positive_arg(lambda, "dilation");
  std::vector<double> b = breakpoints_;
  for (double& x : b) x *= lambda;
  return {std::move(b), values_};
}

// ---------------------------------------------------------------------------
// Tails

double PowerTail::eval(double t) const { return shift + coeff * std::pow(t, -exponent); }

double PowerTail::invert(double s) const { return std::pow(coeff / (s - shift), 1.0 / exponent); }

double DyadicTail::coeff() const { return anchor_y * std::pow(anchor_t, exponent); }

double DyadicTail::period() const { return std::exp2(1.0 / exponent); }

double DyadicTail::knot_t(long j) const {
  return j == 0 ? anchor_t : anchor_t * std::exp2(static_cast<double>(j) / exponent);
}

double DyadicTail::knot_y(long j) const { return std::ldexp(anchor_y, static_cast<int>(-j)); }

long DyadicTail::segment_of(double t) const {
  auto j = static_cast<long>(std::floor(exponent * std::log2(t / anchor_t)));
  while (t < knot_t(j)) --j;
  while (t > knot_t(j + 1)) ++j;
  return j;
}

double DyadicTail::eval(double t) const {
  const long j = segment_of(t);
  return linear_eval(knot_t(j), knot_y(j), knot_t(j + 1), knot_y(j + 1), t);
}

SplitValue DyadicTail::eval_split(double t) const {
  const long j = segment_of(t);
  return linear_eval_split(knot_t(j), knot_y(j), knot_t(j + 1), knot_y(j + 1), t);
}

double DyadicTail::invert_split(SplitValue v) const {
  const auto j = static_cast<long>(std::lround(std::log2(anchor_y / v.anchor)));
  if (v.offset == 0.0 || knot_y(j) != v.anchor) return invert(v.value());
  const long left = v.offset < 0.0 ? j : j - 1;
  return linear_invert_split(knot_t(left), knot_y(left), knot_t(left + 1), knot_y(left + 1), v);
}

double DyadicTail::invert(double s) const {
  auto j = static_cast<long>(std::floor(std::log2(anchor_y / s)));
  while (s > knot_y(j)) --j;
  while (s < knot_y(j + 1)) ++j;
  return linear_invert(knot_t(j), knot_y(j), knot_t(j + 1), knot_y(j + 1), s);
}

// ---------------------------------------------------------------------------
// Core pieces

double piece_lo(const CorePiece& piece) {
  return std::visit([](const auto& x) { return x.lo; }, piece);
}

double piece_hi(const CorePiece& piece) {
  return std::visit([](const auto& x) { return x.hi; }, piece);
}

double piece_eval(const CorePiece& piece, double t) {
  if (const auto* lin = std::get_if<LinearPiece>(&piece)) {
    return linear_eval(lin->lo, lin->y_lo, lin->hi, lin->y_hi, t);
  }
  const auto& sp = std::get<ShiftedPowerPiece>(piece);
  return sp.shift + sp.coeff * std::pow(t, -sp.exponent);
}

double piece_top(const CorePiece& piece) {
  if (const auto* lin = std::get_if<LinearPiece>(&piece)) return lin->y_lo;
  return piece_eval(piece, piece_lo(piece));
}

namespace {

double piece_bottom(const CorePiece& piece) {
  if (const auto* lin = std::get_if<LinearPiece>(&piece)) return lin->y_hi;
  return piece_eval(piece, piece_hi(piece));
}

double piece_invert(const CorePiece& piece, double s) {
  if (const auto* lin = std::get_if<LinearPiece>(&piece)) {
    return linear_invert(lin->lo, lin->y_lo, lin->hi, lin->y_hi, s);
  }
  const auto& sp = std::get<ShiftedPowerPiece>(piece);
  return std::clamp(std::pow(sp.coeff / (s - sp.shift), 1.0 / sp.exponent), sp.lo, sp.hi);
}

void validate_tail(const Tail& tail, double junction, bool far) {
  if (const auto* pt = std::get_if<PowerTail>(&tail)) {
    if (!(pt->coeff > 0.0) || !(pt->exponent > 0.0) || !(pt->shift >= 0.0)) {
      throw std::invalid_argument("power tail needs coeff > 0, exponent > 0, shift >= 0");
    }
    if (far && pt->shift != 0.0) throw std::invalid_argument("far power tail must have shift 0");
    return;
  }
  const auto& d = std::get<DyadicTail>(tail);
  if (!(d.anchor_y > 0.0) || !(d.exponent > 0.0)) {
    throw std::invalid_argument("dyadic tail needs anchor_y > 0 and exponent > 0");
  }
  if (d.anchor_t != junction) {
    throw std::invalid_argument("dyadic tail must be anchored at its junction");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// TailedDecreasingFunction

TailedDecreasingFunction::TailedDecreasingFunction(Tail near_zero, double t_lo,
                                                   std::vector<CorePiece> core, Tail far)
    : near_(std::move(near_zero)), core_(std::move(core)), far_(std::move(far)), t_lo_(t_lo) {
  if (!(t_lo_ > 0.0) || !std::isfinite(t_lo_)) {
    throw std::invalid_argument("near-zero junction must be finite and > 0");
  }
  double cursor = t_lo_;
  double bottom = tail_eval(near_, t_lo_);
  validate_tail(near_, t_lo_, false);
  constexpr double kTol = 1e-12;
  for (const CorePiece& piece : core_) {
    const double lo = piece_lo(piece);
    const double hi = piece_hi(piece);
    if (lo != cursor || !(hi > lo) || !std::isfinite(hi)) {
      throw std::invalid_argument("core pieces must be contiguous with lo < hi");
    }
    if (const auto* sp = std::get_if<ShiftedPowerPiece>(&piece)) {
      if (!(sp->coeff > 0.0) || !(sp->exponent > 0.0) || !(sp->shift >= 0.0)) {
        throw std::invalid_argument("shifted power piece needs coeff, exponent > 0, shift >= 0");
      }
    } else {
      const auto& lin = std::get<LinearPiece>(piece);
      if (!(lin.y_lo > lin.y_hi) || !(lin.y_hi > 0.0)) {
        throw std::invalid_argument("linear piece must be strictly decreasing and positive");
      }
    }
    if (!approx_le(piece_top(piece), bottom, kTol)) {
      throw std::invalid_argument("function must be decreasing across piece junctions");
    }
    bottom = piece_bottom(piece);
    cursor = hi;
  }
  t_hi_ = cursor;
  validate_tail(far_, t_hi_, true);
  if (!approx_le(far_top(far_, t_hi_), bottom, kTol)) {
    throw std::invalid_argument("far tail must continue decreasing from the core");
  }
}

TailedDecreasingFunction TailedDecreasingFunction::from_knots(
    const std::vector<std::pair<double, double>>& knots, double near_exponent,
    double far_exponent) {
  if (knots.empty()) throw std::invalid_argument("at least one knot required");
  std::vector<CorePiece> core;
  core.reserve(knots.size() - 1);
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    core.emplace_back(
        LinearPiece{knots[i].first, knots[i + 1].first, knots[i].second, knots[i + 1].second});
  }
  return {DyadicTail{knots.front().first, knots.front().second, near_exponent},
          knots.front().first, std::move(core),
          DyadicTail{knots.back().first, knots.back().second, far_exponent}};
}

double TailedDecreasingFunction::eval(double t) const {
  require_positive_arg(t, "t");
  if (t <= t_lo_) return tail_eval(near_, t);
  if (t > t_hi_) return tail_eval(far_, t);
  const auto it = std::lower_bound(core_.begin(), core_.end(), t,
                                   [](const CorePiece& p, double x) { return piece_hi(p) < x; });
  return piece_eval(*it, t);
}

double TailedDecreasingFunction::invert(double s) const {
  require_positive_arg(s, "s");
  if (s >= tail_eval(near_, t_lo_)) return std::min(tail_invert(near_, s), t_lo_);
  const auto it = std::partition_point(core_.begin(), core_.end(),
                                       [s](const CorePiece& p) { return piece_bottom(p) > s; });
  if (it != core_.end()) {
    if (s >= piece_top(*it)) return piece_lo(*it);
    return piece_invert(*it, s);
  }
  if (s >= far_top(far_, t_hi_)) return t_hi_;
  return std::max(tail_invert(far_, s), t_hi_);
}

SplitValue TailedDecreasingFunction::eval_split(double t) const {
  require_positive_arg(t, "t");
  auto tail_split = [t](const Tail& tail) {
    if (const auto* d = std::get_if<DyadicTail>(&tail)) return d->eval_split(t);
    return SplitValue{tail_eval(tail, t)};
  };
  if (t <= t_lo_) return tail_split(near_);
  if (t > t_hi_) return tail_split(far_);
  const auto it = std::lower_bound(core_.begin(), core_.end(), t,
                                   [](const CorePiece& p, double x) { return piece_hi(p) < x; });
  if (const auto* lin = std::get_if<LinearPiece>(&*it)) {
    return linear_eval_split(lin->lo, lin->y_lo, lin->hi, lin->y_hi, t);
  }
  return SplitValue{piece_eval(*it, t)};
}

double TailedDecreasingFunction::invert_split(SplitValue v) const {
  if (v.offset == 0.0) return invert(v.anchor);
  const double a = v.anchor;
  const double near_bottom = tail_eval(near_, t_lo_);
  if (const auto* d = std::get_if<DyadicTail>(&near_)) {
    if (a > near_bottom || (a == near_bottom && v.offset > 0.0)) {
      return std::min(d->invert_split(v), t_lo_);
    }
  }
  if (v.offset < 0.0) {
    const auto it = std::partition_point(core_.begin(), core_.end(),
                                         [a](const CorePiece& p) { return piece_top(p) > a; });
    if (it != core_.end() && piece_top(*it) == a) {
      if (const auto* lin = std::get_if<LinearPiece>(&*it)) {
        return linear_invert_split(lin->lo, lin->y_lo, lin->hi, lin->y_hi, v);
      }
    }
  } else {
    const auto it = std::partition_point(core_.begin(), core_.end(),
                                         [a](const CorePiece& p) { return piece_bottom(p) > a; });
    if (it != core_.end() && piece_bottom(*it) == a) {
      if (const auto* lin = std::get_if<LinearPiece>(&*it)) {
        return linear_invert_split(lin->lo, lin->y_lo, lin->hi, lin->y_hi, v);
      }
    }
  }
  if (const auto* d = std::get_if<DyadicTail>(&far_)) {
    if (a < d->anchor_y || (a == d->anchor_y && v.offset < 0.0)) {
      return std::max(d->invert_split(v), t_hi_);
    }
  }
  return invert(v.value());
}

TailedDecreasingFunction TailedDecreasingFunction::scaled(double c) const {
  require_positive_arg(c, "scale");
  auto scale_tail = [c](Tail tail) {
    if (auto* pt = std::get_if<PowerTail>(&tail)) {
      pt->shift *= c;
      pt->coeff *= c;
    } else {
      std::get<DyadicTail>(tail).anchor_y *= c;
    }
    return tail;
  };
  std::vector<CorePiece> core = core_;
  for (CorePiece& piece : core) {
    if (auto* lin = std::get_if<LinearPiece>(&piece)) {
      lin->y_lo *= c;
      lin->y_hi *= c;
    } else {
      auto& sp = std::get<ShiftedPowerPiece>(piece);
      sp.shift *= c;
      sp.coeff *= c;
    }
  }
  return {scale_tail(near_), t_lo_, std::move(core), scale_tail(far_)};
}

bool TailedDecreasingFunction::is_continuous(double rel_tol) const {
  auto close = [rel_tol](double a, double b) { return std::abs(a - b) <= rel_tol * std::abs(b); };
  double bottom = tail_eval(near_, t_lo_);
  for (const CorePiece& piece : core_) {
    if (!close(piece_top(piece), bottom)) return false;
    bottom = piece_bottom(piece);
  }
  return close(far_top(far_, t_hi_), bottom);
}

std::vector<std::pair<double, double>> TailedDecreasingFunction::knots() const {
  std::vector<std::pair<double, double>> out;
  out.emplace_back(t_lo_, tail_eval(near_, t_lo_));
  for (const CorePiece& piece : core_) out.emplace_back(piece_hi(piece), piece_bottom(piece));
  return out;
}

std::vector<double> TailedDecreasingFunction::kinks(double a, double b,
                                                    std::size_t max_count) const {
  std::vector<double> out;
  auto add = [&](double t) {
    if (t >= a && t <= b && out.size() < max_count) out.push_back(t);
  };
  add(t_lo_);
  for (const CorePiece& piece : core_) add(piece_hi(piece));
  if (const auto* d = std::get_if<DyadicTail>(&near_)) {
    for (long j = -1; d->knot_t(j) >= a && out.size() < max_count; --j) add(d->knot_t(j));
  }
  if (const auto* d = std::get_if<DyadicTail>(&far_)) {
    for (long j = 1; d->knot_t(j) <= b && out.size() < max_count; ++j) add(d->knot_t(j));
  }
  std::sort(out.begin(), out.end());
  return out;
}

double eval(const StepFunction& fn, double t) { return fn.eval(t); }
double eval(const TailedDecreasingFunction& fn, double t) { return fn.eval(t); }
double invert(const TailedDecreasingFunction& fn, double s) { return fn.invert(s); }

// ---------------------------------------------------------------------------
// integrate_power

IntegralValue integrate_power(const StepFunction& fn, double rho, double alpha, Interval range) {
  IntegralValue total;
  for (std::size_t i = 0; i < fn.size(); ++i) {
    const double v = fn.values()[i];
    const double lo = std::max(fn.step_lo(i), range.lo);
    const double hi = std::min(fn.breakpoints()[i], range.hi);
    if (v == 0.0 || !(lo < hi)) continue;
    IntegralValue piece = power_integral(alpha, lo, hi);
    if (piece.finite()) piece.value *= std::pow(v, rho);
    total += piece;
  }
  return total;
}

namespace {

// \int_a^b h(t)^rho t^alpha over a finite range inside one region.
template <class Fn>
double quad_region(const Fn& h, double rho, double alpha, double a, double b,
                   std::span<const double> cuts = {}) {
  auto integrand = [&](double t) { return std::pow(h(t), rho) * std::pow(t, alpha); };
  return quad::integrate_log_split(integrand, a, b, cuts);
}

// Binomial series of (shift + c t^-e)^rho t^alpha over (0, T], valid while
// shift T^e / c <= 1/2.
IntegralValue shifted_power_series(const PowerTail& tail, double rho, double alpha, double T) {
  const double beta = -tail.exponent * rho + alpha;
  if (beta + 1.0 <= 0.0) return {kInf, DivergentEnd::zero};
  const double x = tail.shift * std::pow(T, tail.exponent) / tail.coeff;
  double binom = 1.0;
  double xj = 1.0;
  double sum = 0.0;
  for (int j = 0; j < 200; ++j) {
    const double gamma = beta + tail.exponent * j + 1.0;
    const double term = binom * xj / gamma;
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
    binom *= (rho - j) / (j + 1.0);
    xj *= x;
    if (binom == 0.0) break;
  }
  return {std::pow(tail.coeff, rho) * std::pow(T, beta + 1.0) * sum, DivergentEnd::none};
}

IntegralValue integrate_power_tail(const Tail& tail, double rho, double alpha, double a, double b,
                                   bool near) {
  if (const auto* pt = std::get_if<PowerTail>(&tail)) {
    const double beta = -pt->exponent * rho + alpha;
    if (pt->shift == 0.0) {
      IntegralValue v = power_integral(beta, a, b);
      if (v.finite()) v.value *= std::pow(pt->coeff, rho);
      return v;
    }
    auto h = [pt](double t) { return pt->eval(t); };
    if (a > 0.0) return {quad_region(h, rho, alpha, a, b), DivergentEnd::none};
    const double T = std::min(b, std::pow(pt->coeff / (2.0 * pt->shift), 1.0 / pt->exponent));
    IntegralValue v = shifted_power_series(*pt, rho, alpha, T);
    if (v.finite() && T < b) v.value += quad_region(h, rho, alpha, T, b);
    return v;
  }

  const auto& d = std::get<DyadicTail>(tail);
  const double e = d.exponent;
  const double P = d.period();
  auto h = [&d](double t) { return d.eval(t); };
  auto period_quad = [&](double lo, double hi) {
    const auto cuts = std::vector<double>{d.knot_t(d.segment_of(lo) + 1)};
    return quad_region(h, rho, alpha, lo, hi, cuts);
  };
  // F(t / P) = 2^rho P^-alpha F(t): self-similar sums toward 0 and toward inf.
  auto from_zero = [&](double B) -> IntegralValue {
    if (e * rho >= alpha + 1.0) return {kInf, DivergentEnd::zero};
    return quad::geometric_sum(period_quad(B / P, B), rho - (alpha + 1.0) / e,
                               DivergentEnd::zero);
  };
  auto to_infinity = [&](double A) -> IntegralValue {
    if (alpha + 1.0 >= e * rho) return {kInf, DivergentEnd::infinity};
    return quad::geometric_sum(period_quad(A, A * P), (alpha + 1.0) / e - rho,
                               DivergentEnd::infinity);
  };
  if (near && a == 0.0) return from_zero(b);
  if (!near && b == kInf) return to_infinity(a);

  const long segments = d.segment_of(b) - d.segment_of(a);
  if (segments > 4096) {
    IntegralValue hi_part = near ? from_zero(b) : to_infinity(a);
    IntegralValue lo_part = near ? from_zero(a) : to_infinity(b);
    if (hi_part.finite() && lo_part.finite()) return {hi_part.value - lo_part.value};
  }
  std::vector<double> cuts;
  for (long j = d.segment_of(a) + 1; d.knot_t(j) < b; ++j) cuts.push_back(d.knot_t(j));
  return {quad_region(h, rho, alpha, a, b, cuts), DivergentEnd::none};
}

}  // namespace

IntegralValue integrate_power(const TailedDecreasingFunction& fn, double rho, double alpha,
                              Interval range) {
  IntegralValue total;
  {
    const double a = range.lo;
    const double b = std::min(range.hi, fn.t_lo());
    if (a < b) total += integrate_power_tail(fn.near_zero(), rho, alpha, a, b, true);
  }
  for (const CorePiece& piece : fn.core()) {
    const double a = std::max(piece_lo(piece), range.lo);
    const double b = std::min(piece_hi(piece), range.hi);
    if (!(a < b)) continue;
    const auto* sp = std::get_if<ShiftedPowerPiece>(&piece);
    if (sp != nullptr && sp->shift == 0.0) {
      IntegralValue v = power_integral(-sp->exponent * rho + alpha, a, b);
      v.value *= std::pow(sp->coeff, rho);
      total += v;
    } else {
      auto h = [&piece](double t) { return piece_eval(piece, t); };
      total += IntegralValue{quad_region(h, rho, alpha, a, b)};
    }
  }
  {
    const double a = std::max(range.lo, fn.t_hi());
    const double b = range.hi;
    if (a < b) total += integrate_power_tail(fn.far(), rho, alpha, a, b, false);
  }
  return total;
}

}  // namespace lorentz
