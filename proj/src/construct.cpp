#include "lorentz/construct.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace lorentz {

namespace {

double tail_exponent(const Tail& tail) {
  return std::visit([](const auto& t) { return t.exponent; }, tail);
}

double tail_value(const Tail& tail, double t) {
  return std::visit([t](const auto& x) { return x.eval(t); }, tail);
}

// Smallest knot abscissa we allow; leaves room for a few near-tail periods
// (rho = 2^(1/a) <= 2^20 for p <= 10) above the subnormal range.
constexpr double kMinAbscissa = 0x1p-900;
constexpr int kGuardLevels = 40;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace

double CushionParams::eval(double t) const {
  return delta * std::pow(t, t <= 1.0 ? -a : -b);
}

CushionParams make_cushion(const StepFunction& f, const Exponents& e) {
  const FunctionalValue J = lorentz_functional(f, e);
  if (!(J.value > 0.0) || !J.finite()) {
    throw std::invalid_argument("cushion needs 0 < J(f) < inf (zero function given?)");
  }
  const double a = 1.0 / (2.0 * e.p);
  const double b = 2.0 / e.p;
  const double rp = e.r / e.p;
  const double C = 1.0 / (rp - a * e.r) + 1.0 / (b * e.r - rp);
  return {a, b, std::pow(J.value / (2.0 * C), 1.0 / e.r)};
}

TailedDecreasingFunction build_g0(const StepFunction& f, const CushionParams& c) {
  if (f.empty()) throw std::invalid_argument("g0 needs a nonzero step function");
  const double t_lo = std::min(f.breakpoints().front(), 1.0);
  std::vector<double> pts{t_lo};
  for (double t : f.breakpoints()) {
    if (t > t_lo) pts.push_back(t);
  }
  if (1.0 > t_lo) pts.push_back(1.0);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  std::vector<CorePiece> core;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double lo = pts[i];
    const double hi = pts[i + 1];
    core.emplace_back(ShiftedPowerPiece{lo, hi, f.eval(hi), c.delta, hi <= 1.0 ? c.a : c.b});
  }
  return {PowerTail{f.values().front(), c.delta, c.a}, t_lo, std::move(core),
          PowerTail{0.0, c.delta, c.b}};
}

LevelWindow level_window(const TailedDecreasingFunction& g0, int pad) {
  const double far_top = tail_value(g0.far(), g0.t_hi());
  const double near_bottom = g0.eval(g0.t_lo());
  LevelWindow w{};
  w.k_min = static_cast<int>(std::floor(std::log2(far_top))) - pad;
  const int base = static_cast<int>(std::ceil(std::log2(near_bottom))) + pad;
  double shift = 0.0;
  if (const auto* pt = std::get_if<PowerTail>(&g0.near_zero())) shift = pt->shift;
  const int shift_level = shift > 0.0 ? static_cast<int>(std::ceil(std::log2(shift))) : 0;
  int k_max = shift > 0.0 ? std::max(base, shift_level + kGuardLevels + pad) : base;
  while (k_max > base && !(g0.invert(std::exp2(k_max)) >= kMinAbscissa)) --k_max;
  if (!(g0.invert(std::exp2(k_max)) >= kMinAbscissa)) {
    throw RangeError("construction leaves double range: g0^{-1}(2^" + std::to_string(k_max) +
                     ") underflows");
  }
  w.k_max = k_max;
  w.guard = shift > 0.0 ? k_max - shift_level : kGuardLevels;
  return w;
}

TailedDecreasingFunction build_g(const TailedDecreasingFunction& g0, const LevelWindow& w) {
  std::vector<std::pair<double, double>> knots;
  for (int k = w.k_max; k >= w.k_min; --k) {
    const double t = g0.invert(std::exp2(k));
    // A jump of g0 across several levels: keep the highest one.
    if (!knots.empty() && t <= knots.back().first) continue;
    knots.emplace_back(t, std::exp2(k));
  }
  return TailedDecreasingFunction::from_knots(knots, tail_exponent(g0.near_zero()),
                                              tail_exponent(g0.far()));
}

TailedDecreasingFunction build_g(const TailedDecreasingFunction& g0, int pad) {
  return build_g(g0, level_window(g0, pad));
}

OrliczFunction psi_from_g(const TailedDecreasingFunction& g, const Exponents& e) {
  return OrliczFunction::constructed(g, e);
}

bool ConstructionResult::all_passed() const {
  return std::all_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.passed; });
}

const Diagnostic* ConstructionResult::find(const std::string& name) const {
  for (const Diagnostic& d : diagnostics) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

namespace {

std::vector<double> sample_points(const StepFunction& f, const TailedDecreasingFunction& g) {
  std::mt19937_64 rng(0x5eedULL);
  const double lo = std::max(g.t_lo() * 1e-3, 1e-300);
  const double hi = g.t_hi() * 1e3;
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  std::vector<double> ts;
  for (int i = 0; i < 1000; ++i) ts.push_back(std::exp(u(rng)));
  for (double t : f.breakpoints()) {
    ts.push_back(t);
    ts.push_back(std::nextafter(t, kInf));
  }
  for (const auto& [t, y] : g.knots()) ts.push_back(t);
  std::sort(ts.begin(), ts.end());
  return ts;
}

}  // namespace

ConstructionResult construct_psi(const StepFunction& f, const Exponents& e, int pad) {
  const StepFunction f2 = f.scaled(2.0);
  const CushionParams cushion = make_cushion(f2, e);
  TailedDecreasingFunction g0 = build_g0(f2, cushion);
  const LevelWindow window = level_window(g0, pad);
  TailedDecreasingFunction g = build_g(g0, window);
  OrliczFunction psi = psi_from_g(g, e);

  const double rp = e.r / e.p;
  const double J_f2 = lorentz_functional(f2, e).value;
  ConstructionResult res{e,
                         cushion,
                         window,
                         g0,
                         g,
                         psi,
                         lorentz_functional(f, e).value,
                         lorentz_functional(g0, e).value,
                         lorentz_functional(g, e).value,
                         condition3_integral(psi, e),
                         orlicz_modular(psi, f),
                         orlicz_modular(psi, g),
                         orlicz_modular(psi, g0.scaled(0.5)),
                         0.0,
                         0.0,
                         {}};
  auto add = [&res](std::string name, double value, double limit, bool passed, std::string detail) {
    res.diagnostics.push_back(
        Diagnostic{std::move(name), value, limit, passed, std::move(detail)});
  };

  {
    const TailedDecreasingFunction f0({PowerTail{0.0, cushion.delta, cushion.a}}, 1.0, {},
                                      PowerTail{0.0, cushion.delta, cushion.b});
    const double J_f0 = lorentz_functional(f0, e).value;
    const double res0 = std::abs(J_f0 - J_f2 / 2.0) / (J_f2 / 2.0);
    add("cushion J(f0) = J(2f)/2", res0, 1e-10, res0 <= 1e-10, "relative residual");
  }

  const std::vector<double> ts = sample_points(f2, g);
  {
    double min_ratio = kInf;
    bool ok = true;
    for (double t : ts) {
      const double v = f2.eval(t);
      const double w = g0.eval(t);
      ok = ok && w > v;
      if (v > 0.0) min_ratio = std::min(min_ratio, w / v);
    }
    add("g0 > 2f", min_ratio, 1.0, ok, "min g0/(2f) over samples with f > 0");
  }
  {
    const double limit = std::max(2.0, std::exp2(e.r));
    const double ratio = res.J_g0 / J_f2;
    add("J(g0) <= max(2, 2^r) J(2f)", ratio, limit, ratio <= limit * (1.0 + 1e-8),
        "J(g0)/J(2f)");
  }
  {
    double min_ratio = kInf;
    for (double t : ts) min_ratio = std::min(min_ratio, g.eval(t) / g0.eval(t));
    add("g > g0/2", min_ratio, 0.5, min_ratio > 0.5, "min g/g0 over samples");
  }
  {
    // Upper half only where the knot levels on both ends are consecutive.
    std::mt19937_64 rng(0xb0b0ULL);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double max_ratio = 0.0;
    int segments = 0;
    const auto knots = g.knots();
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
      if (knots[i].second != 2.0 * knots[i + 1].second) continue;
      ++segments;
      const double lo = knots[i].first;
      const double hi = knots[i + 1].first;
      for (double x : {0.5, u(rng), u(rng), u(rng)}) {
        const double t = lo + x * (hi - lo);
        if (t > lo && t < hi) max_ratio = std::max(max_ratio, g.eval(t) / g0.eval(t));
      }
    }
    add("g < 2 g0 on consecutive-level segments", max_ratio, 2.0, max_ratio < 2.0,
        "max g/g0 over " + std::to_string(segments) + " segments");
  }
  {
    // G(eps) = g(eps)^r eps^(r/p) <= (r/p) \int_0^eps g^r t^(r/p-1), which tends to 0.
    double worst = 0.0;
    double prev = kInf;
    bool decreasing = true;
    double last_G = 0.0;
    for (int j = 1; j <= 40; ++j) {
      const double eps = std::exp2(-j);
      const double G = std::pow(g.eval(eps), e.r) * std::pow(eps, rp);
      const double T = integrate_power(g, e.r, rp - 1.0, Interval(0.0, eps)).value;
      worst = std::max(worst, G / (rp * T));
      decreasing = decreasing && T < prev;
      prev = T;
      last_G = G;
    }
    add("g(eps)^r eps^(r/p) -> 0", worst, 1.0, worst <= 1.0 + 1e-10 && decreasing,
        "max G/majorant over eps = 2^-j, j <= 40; majorant decreasing: " +
            std::string(decreasing ? "yes" : "no") + "; G(2^-40) = " + fmt(last_G));
  }
  {
    const double factor = rp / (1.0 - std::exp2(-rp));
    double worst = 0.0;
    double prev = kInf;
    bool decreasing = true;
    double last_G = 0.0;
    for (int j = 1; j <= 40; ++j) {
      const double N = std::exp2(j);
      const double G = std::pow(g.eval(N), e.r) * std::pow(N, rp);
      const double band = integrate_power(g, e.r, rp - 1.0, Interval(N / 2.0, N)).value;
      const double tail = integrate_power(g, e.r, rp - 1.0, Interval(N / 2.0, kInf)).value;
      worst = std::max(worst, G / (factor * band));
      decreasing = decreasing && tail < prev;
      prev = tail;
      last_G = G;
    }
    add("g(N)^r N^(r/p) -> 0", worst, 1.0, worst <= 1.0 + 1e-10 && decreasing,
        "max G/majorant over N = 2^j, j <= 40; tail decreasing: " +
            std::string(decreasing ? "yes" : "no") + "; G(2^40) = " + fmt(last_G));
  }
  {
    double worst16 = 0.0;
    double worst18 = 0.0;
    for (double t : ts) {
      const SplitValue s = g.eval_split(t);
      const double lhs16 = psi.log_eval(s);
      const double rhs16 = e.r * std::log(s.value()) + (rp - 1.0) * std::log(t);
      worst16 = std::max(worst16, std::abs(std::expm1(lhs16 - rhs16)));
      const double lhs18 = (rp - 1.0) * std::log(g.invert_split(s));
      const double rhs18 = (rp - 1.0) * std::log(t);
      worst18 = std::max(worst18, std::abs(std::expm1(lhs18 - rhs18)));
    }
    add("Psi(g(t)) = g(t)^r t^(r/p-1)", worst16, 1e-10, worst16 <= 1e-10,
        "max relative residual");
    add("phi(g(t)) = t^(r/p-1)", worst18, 1e-10, worst18 <= 1e-10, "max relative residual");
  }

  add("K finite", res.K.value, kInf, res.K.finite(), to_string(res.K.divergent));
  add("M_f finite", res.M_f.value, kInf, res.M_f.finite(), to_string(res.M_f.divergent));

  res.identity_K_residual = std::abs(res.K.value - res.J_g / e.p) / res.K.value;
  res.identity_M_residual = std::abs(res.M_g.value - res.J_g) / res.J_g;
  add("K = J(g)/p", res.identity_K_residual, 1e-6,
      res.K.finite() && res.identity_K_residual <= 1e-6, "relative residual");
  add("M_g = J(g)", res.identity_M_residual, 1e-8,
      res.M_g.finite() && res.identity_M_residual <= 1e-8, "relative residual");
  {
    const double slack = 1.0 + 1e-12;
    const bool ok = res.M_f.value <= res.M_half_g0.value * slack &&
                    res.M_half_g0.value <= res.M_g.value * slack;
    add("M_f <= M(g0/2) <= M_g", res.M_half_g0.value, res.M_g.value, ok,
        "M_f = " + fmt(res.M_f.value) + ", M(g0/2) = " + fmt(res.M_half_g0.value) +
            ", M_g = " + fmt(res.M_g.value));
  }
  return res;
}

OrliczFunction convexify(const OrliczFunction& psi) {
  if (const auto* c = psi.as_constructed()) {
    if (c->exponents.r != 1.0) throw RangeError("convexification needs r = 1");
  } else if (const auto* pw = psi.as_piecewise()) {
    for (const PowerPiece& piece : pw->pieces) {
      if (piece.exponent < 1.0) throw RangeError("convexification needs Psi(s)/s nondecreasing");
    }
  } else {
    throw std::invalid_argument("Psi is already convexified");
  }
  return OrliczFunction::convexified(psi);
}

}  // namespace lorentz
