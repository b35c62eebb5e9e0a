#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "testlab/learn/regressor.hpp"

namespace testlab::analysis {

struct PermutationImportance {
  double baseline_r2 = 0.0;
  /// drops[j][r] = baseline R^2 - R^2 with feature j shuffled in repeat r.
  std::vector<std::vector<double>> drops;

  std::vector<double> means() const;
};

/// Shuffles one test column at a time; each (feature, repeat) pair has its
/// own seeded stream, so results do not depend on evaluation order.
/// Throws DataError when the test targets are constant.
PermutationImportance permutation_importance(const learn::Regressor& model,
                                             const learn::Samples& test, std::size_t repeats,
                                             std::uint64_t seed);

/// Feature indices by decreasing mean importance, ties by name, at most k.
std::vector<std::size_t> rank_features(std::span<const double> mean_importance,
                                       std::span<const std::string> names, std::size_t k);

struct Correlation {
  double r = 0.0;
  double p = 1.0;
};

/// Pearson r with a two-sided p from t = r sqrt((n - 2) / (1 - r^2)).
/// Needs n >= 3; throws ConstantInput when either input is constant.
Correlation pearson(std::span<const double> x, std::span<const double> y);

struct ReportInput {
  std::vector<std::string> names;
  PermutationImportance importance;
  std::vector<std::vector<double>> columns;  // test feature values per feature
  std::vector<double> targets;
  std::size_t top = 15;
};

/// Writes importance.csv (ranked summary with Pearson r and p),
/// importance_samples.csv (every drop, for box plots), scatter.csv
/// (min-max normalised values of the ranked features against the target),
/// importance.svg and scatter.svg. Returns the number of ranked rows.
std::size_t write_importance_report(const std::filesystem::path& dir, const ReportInput& in);

}  // namespace testlab::analysis
