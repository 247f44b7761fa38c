#pragma once

// Nonincreasing rearrangement of weighted samples.

#include <span>
#include <vector>

#include "lorentz/monotone.hpp"

namespace lorentz {

struct WeightedSample {
  double value;    // |sample| is taken on ingestion
  double measure;  // > 0
};

/// Sorted descending by |value|; equal values merge into one step, zeros are
/// dropped, and breakpoints are cumulative measures.
StepFunction rearrange_samples(std::span<const WeightedSample> samples);

/// Uniform-grid convenience: every value carries cell_measure.
StepFunction rearrange_grid(std::span<const double> values, double cell_measure);

}  // namespace lorentz
