#include "lorentz/functionals.hpp"

#include <algorithm>
#include <cmath>

#include "lorentz/quadrature.hpp"

namespace lorentz {

void FunctionalValue::add(std::string label, double lo, double hi, IntegralValue v) {
  divergent = merge(divergent, v.divergent);
  value = finite() ? value + v.value : kInf;
  breakdown.push_back(Contribution{std::move(label), lo, hi, v});
}

FunctionalValue lorentz_functional(const StepFunction& f, const Exponents& e) {
  FunctionalValue out;
  const double s = e.r / e.p;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double a = f.step_lo(i);
    const double b = f.breakpoints()[i];
    const double v = (e.p / e.r) * std::pow(f.values()[i], e.r) * (std::pow(b, s) - std::pow(a, s));
    out.add("step " + std::to_string(i), a, b, IntegralValue{v});
  }
  return out;
}

FunctionalValue lorentz_functional(const TailedDecreasingFunction& f, const Exponents& e) {
  FunctionalValue out;
  const double alpha = e.r / e.p - 1.0;
  out.add("near-zero tail", 0.0, f.t_lo(), integrate_power(f, e.r, alpha, Interval(0.0, f.t_lo())));
  if (f.t_lo() < f.t_hi()) {
    out.add("core", f.t_lo(), f.t_hi(),
            integrate_power(f, e.r, alpha, Interval(f.t_lo(), f.t_hi())));
  }
  out.add("far tail", f.t_hi(), kInf, integrate_power(f, e.r, alpha, Interval(f.t_hi(), kInf)));
  return out;
}

FunctionalValue orlicz_modular(const OrliczFunction& psi, const StepFunction& f) {
  FunctionalValue out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double a = f.step_lo(i);
    const double b = f.breakpoints()[i];
    const double v = f.values()[i];
    const double level = v > 0.0 ? psi(v) : psi.at_zero();
    out.add("step " + std::to_string(i), a, b, IntegralValue{level * (b - a)});
  }
  if (psi.at_zero() > 0.0) {
    out.add("beyond support", f.support_measure(), kInf, IntegralValue{kInf, DivergentEnd::infinity});
  }
  return out;
}

namespace {

double tail_exponent(const Tail& tail) {
  return std::visit([](const auto& t) { return t.exponent; }, tail);
}

}  // namespace

FunctionalValue orlicz_modular(const OrliczFunction& psi, const TailedDecreasingFunction& f) {
  const auto zero = psi.zero_tail();
  const auto inf = psi.infinity_tail();
  if (!zero || !inf) {
    throw std::invalid_argument("modular of a tailed f needs Psi self-similar at both ends");
  }
  // f(rho t) = f(t) / 2 on either tail, rho = 2^(1/e). Past T the values lie
  // below the zero threshold of Psi, before T_near above its infinity one.
  const double e_far = tail_exponent(f.far());
  const double e_near = tail_exponent(f.near_zero());
  const double rho_far = std::exp2(1.0 / e_far);
  const double rho_near = std::exp2(1.0 / e_near);

  const double T = std::max(f.t_hi(), f.invert(zero->threshold));
  double T_near = std::min(f.t_lo(), f.invert(inf->threshold));
  if (const auto* pt = std::get_if<PowerTail>(&f.near_zero()); pt && pt->shift > 0.0) {
    // Below this point the shift is under 2^-50 of the power term; kept clear
    // of underflow at the cost of a slightly larger shift share.
    const double guard = std::pow(pt->coeff * std::exp2(-50.0) / pt->shift, 1.0 / e_near);
    T_near = std::min(T_near, std::max(guard, 0x1p-900));
  }
  T_near = std::min(T_near, T);

  auto F = [&](double t) { return std::exp(psi.log_eval(f.eval_split(t))); };
  auto quad = [&](double a, double b) {
    std::vector<double> cuts = f.kinks(a, b);
    for (double s : psi.kinks(f.eval(b), f.eval(a))) cuts.push_back(f.invert(s));
    return quad::integrate_log_split(F, a, b, cuts);
  };

  FunctionalValue out;
  out.add("t -> 0", 0.0, T_near,
          quad::geometric_sum(quad(T_near / rho_near, T_near), inf->log2_factor - 1.0 / e_near,
                              DivergentEnd::zero));
  if (T_near < T) out.add("middle", T_near, T, IntegralValue{quad(T_near, T)});
  out.add("t -> inf", T, kInf,
          quad::geometric_sum(quad(T, rho_far * T), 1.0 / e_far + zero->log2_factor,
                              DivergentEnd::infinity));
  return out;
}

FunctionalValue condition3_integral(const OrliczFunction& psi, const Exponents& e) {
  FunctionalValue out;
  const double alpha = e.q - 1.0;
  const double beta = -e.q / e.p;
  out.add("(0, 1]", 0.0, 1.0, psi_power_integral(psi, alpha, beta, Interval(0.0, 1.0)));
  out.add("(1, inf)", 1.0, kInf, psi_power_integral(psi, alpha, beta, Interval(1.0, kInf)));
  return out;
}

CalderonResult calderon_condition(const OrliczFunction& psi, int n) {
  if (n < 2) throw RangeError("Calderon condition needs n >= 2");
  const double k = 1.0 / (n - 1);
  CalderonResult out;
  out.value.add("(1, inf)", 1.0, kInf, psi_power_integral(psi, k, -k, Interval(1.0, kInf)));
  const Exponents e = make_exponents(n, 1.0);
  out.condition3_tail.add("(1, inf)", 1.0, kInf,
                          psi_power_integral(psi, e.q - 1.0, -e.q / e.p, Interval(1.0, kInf)));
  return out;
}

double condition3_integrand(const OrliczFunction& psi, const Exponents& e, double t) {
  return std::pow(t, e.q - 1.0) / std::pow(psi(t), e.q / e.p);
}


double calderon_integrand(const OrliczFunction& psi, int n, double t) {
  return std::pow(t / psi(t), 1.0 / (n - 1));
}

}  // namespace lorentz
