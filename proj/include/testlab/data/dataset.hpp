#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "testlab/common/csv.hpp"
#include "testlab/metrics/extractor.hpp"
#include "testlab/metrics/manifest.hpp"

namespace testlab::data {

using Matrix = std::vector<std::vector<double>>;

/// Labelled samples: one row per class, one column per metric.
struct Dataset {
  std::vector<std::string> feature_names;
  std::vector<std::string> class_ids;
  Matrix rows;
  std::vector<double> targets;

  std::size_t size() const { return rows.size(); }
  std::size_t dims() const { return feature_names.size(); }

  /// Throws DataError on ragged rows, non-finite values, duplicate names
  /// or targets outside [0, 1].
  void validate() const;

  Dataset subset(std::span<const std::size_t> row_indices) const;
  /// Keeps the named columns in the given order; MissingMetric if absent.
  Dataset select(std::span<const std::string> names) const;
  std::vector<double> column(std::size_t j) const;

  /// `class_id, <features...>, testability`.
  CsvTable to_csv() const;
  static Dataset from_csv(const CsvTable& csv);
  static Dataset load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;
};

inline constexpr std::string_view kDatasetBanner = "# testlab dataset v1";
inline constexpr std::string_view kTargetColumn = "testability";

struct JoinResult {
  Dataset dataset;
  std::vector<std::string> features_without_label;
  std::vector<std::string> labels_without_features;
};

/// Inner join on class id, in feature-table order.
JoinResult join(const metrics::FeatureTable& features, const std::map<std::string, double>& labels);

/// Simple class (LOC < 5) or data class (no non-accessor methods but at
/// least one attribute).
bool is_trivial_class(double loc, double nomnamm, double noia, double nosa);

/// Drops trivial classes. Throws MissingMetric when CSLOC, CSNOMNAMM,
/// CSNOIA or CSNOSA is absent. Removed ids are appended to `removed`.
Dataset filter_trivial_classes(const Dataset& ds, std::vector<std::string>* removed = nullptr);

/// Seeded shuffle; the first floor(n * fraction) shuffled rows train.
struct Split {
  Dataset train;
  Dataset test;
};
Split split(const Dataset& ds, double train_fraction, std::uint64_t seed);

/// Local outlier factor with Euclidean distance. The neighbourhood of a
/// point holds every other point within its k-distance, so ties enlarge
/// it. A point whose reachability sum is zero (k or more duplicates) gets
/// LOF 1; a point with such a neighbour gets +inf. Needs n > k >= 1.
std::vector<double> lof_scores(const Matrix& points, std::size_t k);

/// Rows with LOF > threshold are dropped; their ids go to `removed`.
Dataset remove_outliers(const Dataset& ds, std::size_t k, double threshold,
                        std::vector<std::string>* removed = nullptr);

struct ScalerParams {
  std::vector<std::string> names;
  std::vector<double> means;
  std::vector<double> sds;
  std::vector<bool> degenerate;

  bool operator==(const ScalerParams&) const = default;
};

/// Per-column mean and population SD. Columns whose SD is negligible
/// relative to their magnitude are degenerate and scale to 0.
ScalerParams fit_scaler(const Dataset& train);
void apply_scaler(const ScalerParams& params, std::span<double> row);
Dataset apply_scaler(const ScalerParams& params, const Dataset& ds);
ScalerParams select(const ScalerParams& params, std::span<const std::string> names);

enum class Variant { DS1, DS2, DS3, DS4, DS5 };
Variant parse_variant(std::string_view text);  // UnknownVariant
std::string_view to_string(Variant v);

inline constexpr std::size_t kSelectedFeatures = 20;

/// Columns kept by a variant. DS2 ranks columns of `train` by absolute
/// Pearson correlation with the target (constant columns rank as 0, ties
/// keep manifest order) and keeps the top 20.
std::vector<std::string> variant_columns(const Dataset& train, Variant variant,
                                         const metrics::Manifest& manifest);
Dataset make_variant(const Dataset& ds, Variant variant, const metrics::Manifest& manifest);

struct PrepareOptions {
  double train_fraction = 0.7;
  std::uint64_t seed = 42;
  std::size_t lof_k = 20;
  double lof_threshold = 1.5;
  Variant variant = Variant::DS1;
};

struct Prepared {
  Dataset train;  // scaled, variant columns
  Dataset test;   // scaled with the train scaler, variant columns
  ScalerParams scaler;  // restricted to the variant columns
  std::string manifest_hash;
  Variant variant = Variant::DS1;
  std::vector<std::string> unmatched_features;
  std::vector<std::string> unmatched_labels;
  std::vector<std::string> trivial;
  std::vector<std::string> outliers;
};

/// Fits outlier removal, scaler and variant selection on `train` only and
/// applies them to both partitions.
Prepared preprocess(const Dataset& train, const Dataset& test, const metrics::Manifest& manifest,
                    const PrepareOptions& options);

/// join -> trivial filter -> split -> outliers -> scaling -> variant.
Prepared prepare(const metrics::FeatureTable& features, const std::map<std::string, double>& labels,
                 const metrics::Manifest& manifest, const PrepareOptions& options);

/// scaler.json: manifest hash, variant and per-column statistics.
std::string scaler_to_json(const ScalerParams& params, std::string_view manifest_hash,
                           Variant variant);
struct ScalerFile {
  ScalerParams params;
  std::string manifest_hash;
  Variant variant = Variant::DS1;
};
ScalerFile scaler_from_json(std::string_view text);

/// Writes dataset.csv (train), test.csv, scaler.json and drop_report.txt.
void write_prepared(const std::filesystem::path& dir, const Prepared& prepared);

}  // namespace testlab::data
