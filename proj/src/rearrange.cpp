#include "lorentz/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lorentz {

StepFunction rearrange_samples(std::span<const WeightedSample> samples) {
  std::vector<WeightedSample> kept;
  kept.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const WeightedSample& s = samples[i];
    if (!(s.measure > 0.0) || !std::isfinite(s.measure)) {
      throw RangeError("sample " + std::to_string(i) + ": measure must be finite and > 0");
    }
    if (!std::isfinite(s.value)) {
      throw RangeError("sample " + std::to_string(i) + ": value must be finite");
    }
    if (s.value != 0.0) kept.push_back({std::abs(s.value), s.measure});
  }
  std::stable_sort(kept.begin(), kept.end(),
                   [](const WeightedSample& a, const WeightedSample& b) { return a.value > b.value; });

  std::vector<double> breakpoints;
  std::vector<double> values;
  double cumulative = 0.0;
  for (const WeightedSample& s : kept) {
    cumulative += s.measure;
    if (!values.empty() && values.back() == s.value) {
      breakpoints.back() = cumulative;
    } else {
      breakpoints.push_back(cumulative);
      values.push_back(s.value);
    }
  }
  return {std::move(breakpoints), std::move(values)};
}

StepFunction rearrange_grid(std::span<const double> values, double cell_measure) {
  if (!(cell_measure > 0.0)) throw RangeError("cell measure must be > 0");
  std::vector<WeightedSample> samples;
  samples.reserve(values.size());
  for (double v : values) samples.push_back({v, cell_measure});
  return rearrange_samples(samples);
}

}  // namespace lorentz
