#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "testlab/common/csv.hpp"
#include "testlab/metrics/class_metrics.hpp"
#include "testlab/metrics/manifest.hpp"

namespace testlab::metrics {

struct FeatureVector {
  std::vector<std::string> names;
  std::vector<double> values;
};

/// Lexical counters keyed by their feature names ("CS" + counter name).
MetricMap lexical_feature_map(const LexicalMetrics& lexical);

/// Concatenates the blocks in manifest order. Throws SchemaMismatch if a
/// manifest name is missing from every block or a value is not finite.
FeatureVector assemble_feature_vector(const MetricMap& class_metrics, const MetricMap& context,
                                      const LexicalMetrics& lexical, const Manifest& manifest);

/// One row per project class, in index order.
struct FeatureTable {
  std::vector<std::string> names;
  std::vector<std::string> class_ids;
  std::vector<std::vector<double>> rows;

  CsvTable to_csv() const;
  /// Checks the header against `manifest` (class_id first, then its names).
  static FeatureTable from_csv(const CsvTable& csv, const Manifest& manifest);
};

FeatureVector class_feature_vector(const ProjectAnalysis& analysis, std::size_t cls,
                                   const Manifest& manifest);
FeatureTable extract_features(const ProjectAnalysis& analysis, const Manifest& manifest);

/// Loads and analyses a project tree.
FeatureTable extract_project(const std::filesystem::path& project, const Manifest& manifest);

}  // namespace testlab::metrics
