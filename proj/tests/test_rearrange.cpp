#include <algorithm>
#include <random>

#include "doctest.h"
#include "lorentz/rearrange.hpp"

using namespace lorentz;

TEST_CASE("rearrange_samples sorts, merges ties and drops zeros") {
  const std::vector<WeightedSample> s{{1, 1}, {3, 1}, {2, 1}};
  const StepFunction f = rearrange_samples(s);
  CHECK(f.values() == std::vector<double>{3, 2, 1});
  CHECK(f.breakpoints() == std::vector<double>{1, 2, 3});

  const std::vector<WeightedSample> ties{{2, 1}, {2, 3}};
  const StepFunction g = rearrange_samples(ties);
  CHECK(g.values() == std::vector<double>{2});
  CHECK(g.breakpoints() == std::vector<double>{4});

  CHECK(rearrange_samples({}).empty());

  const std::vector<WeightedSample> with_zero{{0, 5}, {1, 1}};
  CHECK(rearrange_samples(with_zero).support_measure() == 1.0);

  const std::vector<WeightedSample> bad{{1, 0}};
  CHECK_THROWS_AS(rearrange_samples(bad), RangeError);
}

TEST_CASE("rearrange_grid applies absolute values") {
  const std::vector<double> v{0.5, 1.5};
  const StepFunction f = rearrange_grid(v, 2.0);
  CHECK(f.values() == std::vector<double>{1.5, 0.5});
  CHECK(f.breakpoints() == std::vector<double>{2, 4});

  const std::vector<double> neg{-3};
  CHECK(rearrange_grid(neg, 1.0).values() == std::vector<double>{3});
  CHECK_THROWS_AS(rearrange_grid(neg, 0.0), RangeError);
}

TEST_CASE("uniform random grid: nonincreasing with full support") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(10000);
  for (double& x : v) x = u(rng);
  const StepFunction f = rearrange_grid(v, 1.0);
  CHECK(std::is_sorted(f.values().rbegin(), f.values().rend()));
  CHECK(f.support_measure() == 10000.0);
  std::vector<double> sorted = v;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  CHECK(f.values() == sorted);
}

TEST_CASE("rearranging a step function is idempotent") {
  const StepFunction f({1.0, 2.5, 4.0}, {5.0, 2.0, 0.5});
  std::vector<WeightedSample> samples;
  for (std::size_t i = 0; i < f.size(); ++i) {
    samples.push_back({f.values()[i], f.breakpoints()[i] - f.step_lo(i)});
  }
  std::reverse(samples.begin(), samples.end());
  CHECK(rearrange_samples(samples) == f);
}
