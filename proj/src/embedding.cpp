#include "lorentz/embedding.hpp"

#include <algorithm>
#include <cmath>

namespace lorentz {

int dyadic_level(double v) {
  if (!(v > 0.0) || !std::isfinite(v)) throw RangeError("dyadic level needs a finite v > 0");
  int E = 0;
  const double m = std::frexp(v, &E);  // v = m 2^E, m in [1/2, 1)
  return m == 0.5 ? E - 2 : E - 1;
}

DyadicDecomposition dyadic_decompose(const StepFunction& f) {
  DyadicDecomposition out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double v = f.values()[i];
    if (v == 0.0) continue;
    const int k = dyadic_level(v);
    const double a = f.step_lo(i);
    const double b = f.breakpoints()[i];
    if (!out.levels.empty() && out.levels.back().k == k && out.levels.back().interval.hi == a) {
      DyadicLevel& last = out.levels.back();
      last.interval.hi = b;
      last.measure = b - last.interval.lo;
    } else {
      out.levels.push_back(DyadicLevel{k, Interval(a, b), b - a});
    }
  }
  if (out.levels.empty()) throw std::invalid_argument("zero function has no dyadic levels");
  return out;
}

double log_level_constant(const Exponents& e) {
  return std::log(e.q) + e.q * std::log(2.0) - std::log1p(-std::exp2(-e.q));
}

double level_constant(const Exponents& e) { return std::exp(log_level_constant(e)); }

double embedding_constant(const Exponents& e) {
  return (e.p / e.r) * std::exp((e.r / e.q) * log_level_constant(e));
}

LevelBound level_bound(const OrliczFunction& psi, const Exponents& e, int k) {
  const double ln2 = std::log(2.0);
  const double log_lhs = (k + 1) * e.q * ln2 - (e.q / e.p) * psi.log_eval(std::exp2(k));
  const IntegralValue v = psi_power_integral(psi, e.q - 1.0, -e.q / e.p,
                                             Interval(std::exp2(k - 1), std::exp2(k)));
  return {log_lhs, std::log(v.value)};
}

namespace {

void link(EmbeddingReport& report, std::string name, double log_lhs, double log_rhs) {
  const bool ok = log_lhs <= log_rhs + std::log1p(kChainSlack);
  report.links.push_back(ChainLink{std::move(name), log_lhs, log_rhs, ok});
  report.holds = report.holds && ok;
}

double log_sum_exp(const std::vector<double>& xs) {
  const double m = *std::max_element(xs.begin(), xs.end());
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

}  // namespace

EmbeddingReport verify_embedding(const StepFunction& f, const OrliczFunction& psi,
                                 const Exponents& e) {
  const DyadicDecomposition dec = dyadic_decompose(f);
  EmbeddingReport rep;
  rep.J = lorentz_functional(f, e).value;
  rep.K = condition3_integral(psi, e);
  rep.M = orlicz_modular(psi, f);
  const double log_c8 = log_level_constant(e);
  rep.c8 = std::exp(log_c8);
  rep.c = embedding_constant(e);
  const double log_pr = std::log(e.p / e.r);
  const double ln2 = std::log(2.0);

  std::vector<double> log_a;
  double S6 = 0.0;
  double S9 = 0.0;
  for (const DyadicLevel& level : dec.levels) {
    const double log_psi = psi.log_eval(std::exp2(level.k));
    S6 += std::exp2((level.k + 1) * e.r) * std::pow(level.measure, e.r / e.p);
    log_a.push_back((level.k + 1) * e.q * ln2 - (e.q / e.p) * log_psi);
    S9 += level.measure * std::exp(log_psi);
  }
  rep.S6 = (e.p / e.r) * S6;
  rep.log_A = log_sum_exp(log_a);
  rep.S9 = S9;
  const double log_holder = log_pr + (e.r / e.q) * rep.log_A + (e.r / e.p) * std::log(S9);
  rep.holder = std::exp(log_holder);

  link(rep, "J <= S6", std::log(rep.J), std::log(rep.S6));
  link(rep, "S6 <= Holder split", std::log(rep.S6), log_holder);
  if (!rep.K.finite() || !rep.M.finite()) {
    rep.hypothesis_failed = true;
    rep.holds = true;
    return rep;
  }
  rep.log_S8 = log_c8 + std::log(rep.K.value);
  const double log_bound = std::log(rep.c) + (e.r / e.q) * std::log(rep.K.value) +
                           (e.r / e.p) * std::log(rep.M.value);
  rep.bound = std::exp(log_bound);
  link(rep, "A <= S8", rep.log_A, rep.log_S8);
  link(rep, "S9 <= M", std::log(S9), std::log(rep.M.value));
  link(rep, "J <= bound", std::log(rep.J), log_bound);
  return rep;
}

}  // namespace lorentz
