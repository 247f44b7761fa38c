#include <cmath>
#include <random>

#include "doctest.h"
#include "lorentz/construct.hpp"
#include "oracles.hpp"

using namespace lorentz;

namespace {

StepFunction random_step(std::mt19937_64& rng, int max_steps) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int n = 1 + static_cast<int>(u(rng) * max_steps);
  std::vector<double> br;
  std::vector<double> vals;
  double t = 0.0;
  double v = oracle::log_uniform(rng, 1e-2, 1e2);
  for (int i = 0; i < n; ++i) {
    t += oracle::log_uniform(rng, 1e-2, 1e2);
    br.push_back(t);
    vals.push_back(v);
    v *= 0.05 + 0.9 * u(rng);
  }
  return {br, vals};
}

Exponents random_exponents(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double p = 1.05 + 4.0 * u(rng);
  return make_exponents(p, std::max(0.1, p * (0.05 + 0.9 * u(rng))));
}

const StepFunction kUnit({1.0}, {1.0});

}  // namespace

TEST_CASE("cushion for the unit step") {
  const CushionParams c = make_cushion(kUnit, make_exponents(2, 1));
  CHECK(c.a == doctest::Approx(0.25));
  CHECK(c.b == doctest::Approx(1.0));
  CHECK(c.delta == doctest::Approx(1.0 / 6.0));
  CHECK(c.eval(1.0) == doctest::Approx(1.0 / 6.0));
  CHECK_THROWS(make_cushion(StepFunction(), make_exponents(2, 1)));
}

TEST_CASE("cushion carries half of J and scales with f") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 50; ++i) {
    const StepFunction f = random_step(rng, 20);
    const Exponents e = random_exponents(rng);
    const CushionParams c = make_cushion(f, e);
    const TailedDecreasingFunction f0({PowerTail{0.0, c.delta, c.a}}, 1.0, {},
                                      PowerTail{0.0, c.delta, c.b});
    const double J = lorentz_functional(f, e).value;
    CHECK(oracle::rel_err(lorentz_functional(f0, e).value, J / 2) < 1e-10);
    CHECK(oracle::rel_err(make_cushion(f.scaled(2.0), e).delta, 2.0 * c.delta) < 1e-12);
  }
}

TEST_CASE("g0 is f plus the cushion") {
  const CushionParams c = make_cushion(kUnit, make_exponents(2, 1));
  const auto g0 = build_g0(kUnit, c);
  for (double t : {1e-6, 0.01, 0.5, 1.0}) {
    CHECK(g0.eval(t) == doctest::Approx(1.0 + std::pow(t, -0.25) / 6.0).epsilon(1e-14));
  }
  for (double t : {1.0001, 2.0, 1e4}) CHECK(g0.eval(t) == doctest::Approx(1.0 / (6.0 * t)));

  std::mt19937_64 rng(9);
  for (int i = 0; i < 20; ++i) {
    const StepFunction f = random_step(rng, 30);
    const Exponents e = random_exponents(rng);
    const auto g = build_g0(f, make_cushion(f, e));
    for (int k = 0; k < 1000; ++k) {
      const double t = oracle::log_uniform(rng, 1e-6, 1e6);
      CHECK(g.eval(t) > f.eval(t));
    }
    const double bound = std::max(2.0, std::exp2(e.r)) * lorentz_functional(f, e).value;
    CHECK(lorentz_functional(g, e).value <= bound * (1 + 1e-8));
  }
}

TEST_CASE("g interpolates the dyadic crossings of g0") {
  const auto g0 = TailedDecreasingFunction::from_knots({{1.0, 2.0}, {3.0, 1.0}}, 1.0, 1.0);
  const auto g = build_g(g0);
  const auto knots = g.knots();
  CHECK(std::find(knots.begin(), knots.end(), std::pair{1.0, 2.0}) != knots.end());
  CHECK(std::find(knots.begin(), knots.end(), std::pair{3.0, 1.0}) != knots.end());
  CHECK(g.eval(2.0) == doctest::Approx(1.5));
  CHECK(g.is_continuous());
}

TEST_CASE("g stays within a factor 2 of a continuous g0") {
  const TailedDecreasingFunction g0({PowerTail{0.0, 1.0, 0.5}}, 1.0,
                                    {ShiftedPowerPiece{1.0, 5.0, 0.0, 1.0, 0.7}},
                                    PowerTail{0.0, std::pow(5.0, 1.3) * std::pow(5.0, -0.7), 1.3});
  const auto g = build_g(g0);
  std::mt19937_64 rng(10);
  for (int i = 0; i < 1000; ++i) {
    const double t = oracle::log_uniform(rng, g.t_lo(), g.t_hi());
    CHECK(g.eval(t) > g0.eval(t) / 2);
    CHECK(g.eval(t) < 2 * g0.eval(t));
  }
}

TEST_CASE("Psi from g satisfies the composition identities") {
  const Exponents e = make_exponents(2.5, 1.5);
  const auto g0 = build_g0(kUnit.scaled(2.0), make_cushion(kUnit.scaled(2.0), e));
  const auto g = build_g(g0);
  const auto psi = psi_from_g(g, e);
  const double rp = e.r / e.p;
  std::mt19937_64 rng(12);
  for (int i = 0; i < 1000; ++i) {
    const double t = oracle::log_uniform(rng, 1e-12, 1e12);
    const SplitValue s = g.eval_split(t);
    CHECK(oracle::rel_err(std::exp(psi.log_eval(s)),
                          std::pow(s.value(), e.r) * std::pow(t, rp - 1.0)) < 1e-10);
    CHECK(oracle::rel_err(std::pow(g.invert_split(s), rp - 1.0), std::pow(t, rp - 1.0)) < 1e-10);
  }
  std::vector<double> ss;
  for (int i = 0; i < 1000; ++i) ss.push_back(oracle::log_uniform(rng, 1e-8, 1e8));
  std::sort(ss.begin(), ss.end());
  for (std::size_t i = 1; i < ss.size(); ++i) {
    CHECK(psi(ss[i - 1]) <= psi(ss[i]));
    CHECK(phi(psi, ss[i - 1]) <= phi(psi, ss[i]));
  }
}

TEST_CASE("construct_psi on the unit step") {
  const ConstructionResult res = construct_psi(kUnit, make_exponents(2, 1));
  for (const Diagnostic& d : res.diagnostics) {
    INFO(d.name << ": " << d.value << " (" << d.detail << ")");
    CHECK(d.passed);
  }
  CHECK(res.K.finite());
  CHECK(res.M_f.finite());
  CHECK(res.identity_K_residual <= 1e-6);
  CHECK(res.identity_M_residual <= 1e-8);
  CHECK(res.J_f == doctest::Approx(2.0));

  const ConstructionResult again = construct_psi(kUnit, make_exponents(2, 1));
  CHECK(again.K.value == res.K.value);
  CHECK(again.M_f.value == res.M_f.value);
  CHECK(again.g == res.g);
  CHECK_THROWS(construct_psi(StepFunction(), make_exponents(2, 1)));
}

TEST_CASE("construct_psi on random steps passes every diagnostic") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 25; ++i) {
    const StepFunction f = random_step(rng, 50);
    const Exponents e = random_exponents(rng);
    const ConstructionResult res = construct_psi(f, e);
    for (const Diagnostic& d : res.diagnostics) {
      INFO("p=" << e.p << " r=" << e.r << " " << d.name << ": " << d.value << " (" << d.detail
                << ")");
      CHECK(d.passed);
    }
  }
}

TEST_CASE("the level window adapts to double range") {
  const StepFunction f({1.0, 2.0}, {1.0, 0.5});
  const ConstructionResult res = construct_psi(f, make_exponents(10, 0.1));
  CHECK(res.window.guard < 40);
  CHECK(res.all_passed());
  CHECK_THROWS_AS(construct_psi(f, make_exponents(10, 0.05)), RangeError);
}

TEST_CASE("widening the window leaves K and M_f unchanged") {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 5; ++i) {
    const StepFunction f = random_step(rng, 20);
    const Exponents e = random_exponents(rng);
    const ConstructionResult a = construct_psi(f, e, 4);
    const ConstructionResult b = construct_psi(f, e, 8);
    CHECK(oracle::rel_err(b.K.value, a.K.value) < 1e-8);
    CHECK(oracle::rel_err(b.M_f.value, a.M_f.value) < 1e-8);
  }
}

TEST_CASE("convexify examples") {
  const auto id = convexify(OrliczFunction::power(1.0, 1.0));
  for (double s : {0.01, 1.0, 50.0}) CHECK(id(s) == doctest::Approx(s));
  const auto tm = convexify(OrliczFunction::piecewise_power({1.0}, {PowerPiece{1, 1}, PowerPiece{1, 2}}));
  CHECK(tm(2.0) == doctest::Approx(2.5));
  CHECK(tm(4.0) == doctest::Approx(8.5));
  CHECK_THROWS_AS(convexify(OrliczFunction::power(1.0, 0.5)), RangeError);
  const auto built = construct_psi(kUnit, make_exponents(2, 1.5));
  CHECK_THROWS_AS(convexify(built.psi), RangeError);
}

TEST_CASE("convexified constructed Psi is a convex sandwich") {
  std::mt19937_64 rng(15);
  const ConstructionResult res = construct_psi(random_step(rng, 10), make_exponents(2.5, 1.0));
  const OrliczFunction& psi = res.psi;
  const auto psi0 = convexify(psi);
  for (int i = 0; i < 1000; ++i) {
    const double t = std::pow(10.0, -8.0 + 16.0 * i / 999.0);
    CHECK(psi0(t) <= psi(t) * (1 + 1e-12));
    CHECK(psi(t) <= psi0(2 * t) * (1 + 1e-12));
  }
  for (int i = 0; i < 300; ++i) {
    const double x = oracle::log_uniform(rng, 1e-6, 1e6);
    const double y = oracle::log_uniform(rng, 1e-6, 1e6);
    CHECK(psi0(0.5 * (x + y)) <= 0.5 * (psi0(x) + psi0(y)) * (1 + 1e-12));
  }
}
