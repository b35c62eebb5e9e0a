#pragma once

#include <span>

namespace testlab::learn {

struct Scores {
  double mae = 0.0;
  double mse = 0.0;
  double rmse = 0.0;
  double mdae = 0.0;
  /// NaN when the targets are constant; `r2_defined` is then false.
  double r2 = 0.0;
  bool r2_defined = true;
};

/// Needs equal lengths of at least 2 (DimensionMismatch / InvalidArgument).
Scores evaluate(std::span<const double> predictions, std::span<const double> targets);

struct WelchResult {
  double t = 0.0;
  double df = 0.0;
  double p = 1.0;  // two-sided
};

/// Welch's unequal-variance t-test. Throws InvalidArgument for samples
/// shorter than 2 and DegenerateVariance when both variances are zero.
WelchResult welch_t_test(std::span<const double> a, std::span<const double> b);

}  // namespace testlab::learn
