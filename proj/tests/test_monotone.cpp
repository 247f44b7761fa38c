#include <cmath>
#include <random>

#include "doctest.h"
#include "lorentz/monotone.hpp"
#include "oracles.hpp"

using namespace lorentz;

namespace {

// Shifted-power near tail, a linear piece, a jump into a shifted-power piece,
// then a dyadic far tail.
TailedDecreasingFunction mixed_function() {
  std::vector<CorePiece> core{
      LinearPiece{1.0, 2.0, 2.0, 1.5},
      ShiftedPowerPiece{2.0, 4.0, 0.5, 1.0, 1.0},
  };
  return {PowerTail{1.0, 1.0, 0.5}, 1.0, core, DyadicTail{4.0, 0.75, 2.0}};
}

// Dyadic near tail, linear core, pure power far tail.
TailedDecreasingFunction dyadic_near_function() {
  std::vector<CorePiece> core{LinearPiece{0.5, 1.0, 2.0, 1.0}};
  return {DyadicTail{0.5, 2.0, 0.25}, 0.5, core, PowerTail{0.0, 1.0, 1.0}};
}

}  // namespace

TEST_CASE("make_exponents derives q and rejects bad ranges") {
  CHECK(make_exponents(2, 1).q == doctest::Approx(2.0));
  CHECK(make_exponents(3, 1).q == doctest::Approx(1.5));
  CHECK_THROWS_AS(make_exponents(2, 2), RangeError);
  CHECK_THROWS_WITH(make_exponents(2, 2), doctest::Contains("r < p"));
  CHECK_THROWS_WITH(make_exponents(1, 0.5), doctest::Contains("p > 1"));
  CHECK_THROWS_WITH(make_exponents(2, 0), doctest::Contains("r > 0"));
  CHECK_THROWS_AS(make_exponents(2, -1), RangeError);
}

TEST_CASE("exponent conjugacy holds to machine precision") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> up(1.0001, 10.0);
  std::uniform_real_distribution<double> u01(0.001, 0.999);
  for (int i = 0; i < 1000; ++i) {
    const double p = up(rng);
    const Exponents e = make_exponents(p, u01(rng) * p);
    CHECK(std::abs(e.r / e.p + e.r / e.q - 1.0) < 1e-14);
    CHECK(std::abs(1.0 / e.p + 1.0 / e.q - 1.0 / e.r) <= 1e-14 / e.r);
  }
}

TEST_CASE("step evaluation uses half-open steps") {
  const StepFunction f({1.0}, {1.0});
  CHECK(eval(f, 1.0) == 1.0);
  CHECK(eval(f, 0.25) == 1.0);
  CHECK(eval(f, 1.5) == 0.0);
  CHECK_THROWS_AS(eval(f, 0.0), RangeError);
  CHECK_THROWS_AS(StepFunction({1.0, 2.0}, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(StepFunction({2.0, 1.0}, {2.0, 1.0}), std::invalid_argument);
}

TEST_CASE("tailed evaluation and inversion examples") {
  const TailedDecreasingFunction one_over_t({PowerTail{0.0, 1.0, 1.0}}, 0.5,
                                            {LinearPiece{0.5, 1.0, 2.0, 1.0}},
                                            PowerTail{0.0, 1.0, 1.0});
  CHECK(eval(one_over_t, 10.0) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(invert(one_over_t, 0.1) == doctest::Approx(10.0).epsilon(1e-15));

  const TailedDecreasingFunction core({PowerTail{0.0, 2.0, 1.0}}, 1.0,
                                      {LinearPiece{1.0, 2.0, 2.0, 1.0}}, PowerTail{0.0, 2.0, 1.0});
  CHECK(eval(core, 1.5) == doctest::Approx(1.5));
  CHECK(invert(core, 1.5) == doctest::Approx(1.5));
  CHECK_THROWS_AS(eval(core, -1.0), RangeError);
}

TEST_CASE("construction rejects increasing junctions and misplaced anchors") {
  CHECK_THROWS_AS(TailedDecreasingFunction({PowerTail{0.0, 1.0, 1.0}}, 1.0,
                                           {LinearPiece{1.0, 2.0, 3.0, 1.0}},
                                           PowerTail{0.0, 1.0, 1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(TailedDecreasingFunction({DyadicTail{2.0, 2.0, 1.0}}, 1.0, {},
                                           PowerTail{0.0, 1.0, 1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(TailedDecreasingFunction({PowerTail{0.0, 1.0, 1.0}}, 1.0, {},
                                           PowerTail{0.5, 1.0, 1.0}),
                  std::invalid_argument);
}

TEST_CASE("monotone evaluation and inversion round trip") {
  std::mt19937_64 rng(11);
  for (const auto& fn : {mixed_function(), dyadic_near_function()}) {
    std::vector<double> ts;
    for (int i = 0; i < 1000; ++i) ts.push_back(oracle::log_uniform(rng, 1e-9, 1e9));
    std::sort(ts.begin(), ts.end());
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const double y = fn.eval(ts[i]);
      CHECK(oracle::rel_err(fn.invert(y), ts[i]) <= 1e-12);
      if (i > 0 && ts[i] > ts[i - 1]) CHECK(y < fn.eval(ts[i - 1]));
    }
  }
  const StepFunction step({1.0, 2.0, 5.0}, {4.0, 4.0, 1.0});
  for (int i = 0; i < 200; ++i) {
    const double a = oracle::log_uniform(rng, 1e-3, 10.0);
    const double b = oracle::log_uniform(rng, 1e-3, 10.0);
    CHECK(step.eval(std::min(a, b)) >= step.eval(std::max(a, b)));
  }
}

TEST_CASE("jumps invert to the jump abscissa") {
  const auto fn = mixed_function();
  // Left value at 2 is 1.5; right limit is 1.0.
  CHECK(fn.invert(1.25) == 2.0);
  CHECK(fn.invert(1.5) == doctest::Approx(2.0));
  CHECK(fn.invert(1.0) == 2.0);
  CHECK_FALSE(fn.is_continuous());
  CHECK(dyadic_near_function().is_continuous());
}

TEST_CASE("dyadic tail is self-similar and interpolates its knots") {
  const DyadicTail tail{1.0, 1.0, 0.5};  // period 4
  CHECK(tail.period() == doctest::Approx(4.0));
  for (long j = -5; j <= 5; ++j) {
    CHECK(tail.eval(tail.knot_t(j)) == doctest::Approx(tail.knot_y(j)).epsilon(1e-14));
  }
  CHECK(tail.eval(2.5) == doctest::Approx(tail.eval(10.0) * 2.0).epsilon(1e-14));
  // Linear between knots (1, 1) and (4, 1/2).
  CHECK(tail.eval(2.5) == doctest::Approx(0.75));
}

TEST_CASE("integrate_power examples") {
  const StepFunction one({1.0}, {1.0});
  const IntegralValue a = integrate_power(one, 1.0, -0.5, Interval(0.0, 1.0));
  CHECK(a.finite());
  CHECK(a.value == doctest::Approx(2.0).epsilon(1e-15));

  const TailedDecreasingFunction harmonic({PowerTail{0.0, 1.0, 1.0}}, 1.0, {},
                                          PowerTail{0.0, 1.0, 1.0});
  const IntegralValue d = integrate_power(harmonic, 1.0, 0.0, Interval(1.0, kInf));
  CHECK_FALSE(d.finite());
  CHECK(d.divergent == DivergentEnd::infinity);

  // Linear piece (1,2)-(2,1), squared: Simpson oracle.
  const TailedDecreasingFunction lin({PowerTail{0.0, 2.0, 1.0}}, 1.0,
                                     {LinearPiece{1.0, 2.0, 2.0, 1.0}}, PowerTail{0.0, 2.0, 1.0});
  const double want = oracle::simpson_log([](double t) { return (3.0 - t) * (3.0 - t); }, 1.0, 2.0);
  const IntegralValue got = integrate_power(lin, 2.0, 0.0, Interval(1.0, 2.0));
  CHECK(oracle::rel_err(got.value, want) <= 1e-8);
  CHECK(want == doctest::Approx(7.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("power_integral closed forms and divergence ends") {
  CHECK(power_integral(-1.0, 1.0, std::exp(2.0)).value == doctest::Approx(2.0));
  CHECK(power_integral(-1.0, 0.0, kInf).divergent == DivergentEnd::both);
  CHECK(power_integral(-2.0, 0.0, 1.0).divergent == DivergentEnd::zero);
  CHECK(power_integral(-2.0, 1.0, kInf).value == doctest::Approx(1.0));
  // Near-log exponent keeps full accuracy.
  CHECK(power_integral(-1.0 + 1e-12, 1.0, std::exp(1.0)).value ==
        doctest::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("integration is additive across split points") {
  std::mt19937_64 rng(3);
  const auto fn = mixed_function();
  std::uniform_real_distribution<double> urho(0.2, 3.0);
  for (int i = 0; i < 100; ++i) {
    const double rho = urho(rng);
    const double alpha = rho / 1.5 - 1.0;  // integrable at both ends for these tails
    double a = oracle::log_uniform(rng, 1e-6, 1e6);
    double b = oracle::log_uniform(rng, 1e-6, 1e6);
    double c = oracle::log_uniform(rng, 1e-6, 1e6);
    std::array<double, 3> xs{a, b, c};
    std::sort(xs.begin(), xs.end());
    const double left = integrate_power(fn, rho, alpha, Interval(xs[0], xs[1])).value;
    const double right = integrate_power(fn, rho, alpha, Interval(xs[1], xs[2])).value;
    const double whole = integrate_power(fn, rho, alpha, Interval(xs[0], xs[2])).value;
    CHECK(oracle::rel_err(left + right, whole) <= 1e-10);
  }
}

TEST_CASE("tail integrals agree with brute-force Simpson") {
  // Pure power closed form vs quadrature.
  const TailedDecreasingFunction pw({PowerTail{0.0, 3.0, 0.7}}, 1.0, {}, PowerTail{0.0, 3.0, 0.7});
  const double closed = integrate_power(pw, 2.0, 0.1, Interval(0.5, 40.0)).value;
  const double simpson = oracle::simpson_log(
      [](double t) { return std::pow(3.0 * std::pow(t, -0.7), 2.0) * std::pow(t, 0.1); }, 0.5,
      40.0);
  CHECK(oracle::rel_err(closed, simpson) <= 1e-8);

  // Shifted near tail from 0: binomial series vs Simpson over a long log range.
  const auto fn = mixed_function();
  const double rho = 1.3;
  const double alpha = -0.2;
  const double series = integrate_power(fn, rho, alpha, Interval(0.0, 1.0)).value;
  auto F = [&](double t) { return std::pow(1.0 + std::pow(t, -0.5), rho) * std::pow(t, alpha); };
  // Remainder below 1e-40 is integrated in closed form of the leading power.
  const double lo = 1e-40;
  const double head = std::pow(lo, -0.5 * rho + alpha + 1.0) / (-0.5 * rho + alpha + 1.0);
  const double brute = head + oracle::simpson_log_pieces(F, {1e-40, 1e-20, 1e-10, 1e-4, 1.0});
  CHECK(oracle::rel_err(series, brute) <= 1e-8);

  // Dyadic far tail: geometric summation vs explicit segment-by-segment sum.
  const DyadicTail& far = std::get<DyadicTail>(fn.far());
  const double tailsum = integrate_power(fn, 2.0, 0.5, Interval(4.0, kInf)).value;
  double explicit_sum = 0.0;
  for (long j = 0; j < 400; ++j) {
    explicit_sum += oracle::simpson_log(
        [&](double t) { return std::pow(far.eval(t), 2.0) * std::pow(t, 0.5); }, far.knot_t(j),
        far.knot_t(j + 1));
  }
  CHECK(oracle::rel_err(tailsum, explicit_sum) <= 1e-8);
  CHECK_FALSE(integrate_power(fn, 1.0, 1.0, Interval(4.0, kInf)).finite());
}
