#include <cmath>
#include <random>

#include "doctest.h"
#include "lorentz/embedding.hpp"
#include "oracles.hpp"

using namespace lorentz;

TEST_CASE("dyadic levels follow 2^k < v <= 2^(k+1)") {
  CHECK(dyadic_level(3.0) == 1);
  CHECK(dyadic_level(1.5) == 0);
  CHECK(dyadic_level(4.0) == 1);
  CHECK(dyadic_level(5.0) == 2);
  CHECK(dyadic_level(1.0) == -1);
  CHECK(dyadic_level(std::ldexp(1.0, -20)) == -21);
  CHECK(dyadic_level(std::nextafter(4.0, 5.0)) == 2);
  CHECK_THROWS_AS(dyadic_level(0.0), RangeError);
}

TEST_CASE("dyadic decomposition examples") {
  const auto d = dyadic_decompose(StepFunction({1.0, 2.0}, {3.0, 1.5}));
  REQUIRE(d.levels.size() == 2);
  CHECK(d.levels[0].k == 1);
  CHECK(d.levels[0].interval == Interval(0.0, 1.0));
  CHECK(d.levels[1].k == 0);
  CHECK(d.levels[1].interval == Interval(1.0, 2.0));
  CHECK(dyadic_decompose(StepFunction({1.0}, {4.0})).levels[0].k == 1);
  CHECK(dyadic_decompose(StepFunction({1.0}, {5.0})).levels[0].k == 2);
  // Same level merges.
  const auto m = dyadic_decompose(StepFunction({1.0, 3.0, 3.5}, {3.5, 2.5, 0.75}));
  REQUIRE(m.levels.size() == 2);
  CHECK(m.levels[0].interval == Interval(0.0, 3.0));
  CHECK(m.levels[0].measure == 3.0);
  CHECK_THROWS(dyadic_decompose(StepFunction()));
}

TEST_CASE("decomposition partitions the support and respects level bounds") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> br;
  std::vector<double> vals;
  double t = 0.0;
  double v = 1000.0;
  for (int i = 0; i < 200; ++i) {
    t += std::ldexp(std::floor(u(rng) * 16) + 1, -4);
    v *= 0.5 + 0.49 * u(rng);
    br.push_back(t);
    vals.push_back(v);
  }
  const StepFunction f(br, vals);
  const auto d = dyadic_decompose(f);
  double total = 0.0;
  for (const auto& level : d.levels) {
    total += level.measure;
    const double lo = std::exp2(level.k);
    const double hi = std::exp2(level.k + 1);
    for (double x : {level.interval.hi, 0.5 * (level.interval.lo + level.interval.hi)}) {
      CHECK(f.eval(x) > lo);
      CHECK(f.eval(x) <= hi);
    }
  }
  CHECK(total == f.support_measure());
}

TEST_CASE("embedding constant") {
  const Exponents e = make_exponents(2, 1);
  CHECK(level_constant(e) == doctest::Approx(32.0 / 3.0));
  CHECK(embedding_constant(e) == doctest::Approx(2.0 * std::sqrt(32.0 / 3.0)));
  CHECK(embedding_constant(e) == doctest::Approx(6.532).epsilon(1e-3));
  const Exponents e3 = make_exponents(3, 1);
  const double c8 = 1.5 * std::pow(2.0, 1.5) / (1.0 - std::pow(2.0, -1.5));
  CHECK(embedding_constant(e3) == doctest::Approx(3.0 * std::pow(c8, 2.0 / 3.0)));
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    const double p = 1.01 + 5 * std::uniform_real_distribution<double>()(rng);
    const double r = p * (0.01 + 0.98 * std::uniform_real_distribution<double>()(rng));
    const Exponents ei = make_exponents(p, r);
    CHECK(embedding_constant(ei) > p / r);
  }
}

TEST_CASE("per-level constant is attained") {
  // Psi is constant on (1/2, 1] and jumps to its top value there, so bounding
  // Psi(t) by Psi(1) loses nothing at k = 0.
  for (const auto& [p, r] : {std::pair{2.0, 1.0}, {3.0, 1.0}, {2.5, 2.0}}) {
    const Exponents e = make_exponents(p, r);
    const auto psi = OrliczFunction::piecewise_power(
        {0.5, 1.0}, {PowerPiece{std::pow(2.0, p), p}, PowerPiece{1.0, 0.0}, PowerPiece{1.0, p}});
    const LevelBound lb = level_bound(psi, e, 0);
    const double c8 = level_constant(e);
    CHECK(lb.ratio(c8) <= 1 + 1e-12);
    CHECK(lb.ratio(0.99 * c8) > 1.0);
    // Strict power: the bound holds at every level.
    const auto pw = OrliczFunction::power(1.0, p);
    for (int k = -10; k <= 10; ++k) {
      CHECK(level_bound(pw, e, k).ratio(c8) <= 1.0);
    }
  }
}

TEST_CASE("verify_embedding examples") {
  const Exponents e = make_exponents(2, 1);
  const auto two = OrliczFunction::two_power(2.0, 1.0);
  const EmbeddingReport rep = verify_embedding(StepFunction({1.0}, {1.0}), two, e);
  CHECK(rep.J == doctest::Approx(2.0));
  CHECK(rep.K.value == doctest::Approx(2.0));
  CHECK(rep.M.value == doctest::Approx(1.0));
  CHECK(rep.bound == doctest::Approx(embedding_constant(e) * std::sqrt(2.0)));
  CHECK(rep.bound == doctest::Approx(9.24).epsilon(1e-3));
  CHECK(rep.holds);
  CHECK_FALSE(rep.hypothesis_failed);
  CHECK(rep.links.size() == 5);

  const EmbeddingReport tiny =
      verify_embedding(StepFunction({1.0}, {std::ldexp(1.0, -20)}), two, e);
  CHECK(tiny.holds);
  CHECK_FALSE(tiny.hypothesis_failed);

  const EmbeddingReport bad =
      verify_embedding(StepFunction({1.0}, {1.0}), OrliczFunction::power(1.0, 2.0), e);
  CHECK(bad.hypothesis_failed);
  CHECK(bad.holds);
  CHECK_FALSE(bad.K.finite());
}

TEST_CASE("embedding fuzz: every link holds") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const double p = 1.0 + 9.0 * (1.0 - u(rng));
    const double r = p * (0.001 + 0.998 * u(rng));
    const Exponents e = make_exponents(p, r);
    const double eps = (p - 1.0) * (1.0 - u(rng));
    const auto psi = OrliczFunction::two_power(p, eps);
    const int n = 1 + static_cast<int>(u(rng) * 12);
    std::vector<double> vals;
    std::vector<double> br;
    double t = 0.0;
    double v = oracle::log_uniform(rng, 1e-3, 1e3);
    for (int i = 0; i < n; ++i) {
      t += oracle::log_uniform(rng, 1e-3, 1e2);
      br.push_back(t);
      vals.push_back(v);
      v *= 0.05 + 0.9 * u(rng);
    }
    const EmbeddingReport rep = verify_embedding(StepFunction(br, vals), psi, e);
    REQUIRE_FALSE(rep.hypothesis_failed);
    for (const ChainLink& l : rep.links) {
      if (!l.holds) ++violations;
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("embedding survives huge q") {
  const Exponents e = make_exponents(10.0, 9.99);
  CHECK(e.q > 9000);
  const auto psi = OrliczFunction::two_power(10.0, 5.0);
  const EmbeddingReport rep = verify_embedding(StepFunction({1.0, 3.0}, {40.0, 0.01}), psi, e);
  CHECK_FALSE(rep.hypothesis_failed);
  CHECK(rep.holds);
  CHECK(std::isfinite(rep.c));
  CHECK(std::isfinite(rep.bound));
}
