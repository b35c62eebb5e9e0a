#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "testlab/learn/model.hpp"
#include "testlab/metrics/class_metrics.hpp"
#include "testlab/metrics/manifest.hpp"

namespace testlab::inference {

/// Anything that maps a named raw metric vector onto a testability value.
class Predictor {
 public:
  virtual ~Predictor() = default;
  /// Manifest hash the predictor was trained against.
  virtual std::string manifest_hash() const = 0;
  /// Must be safe to call concurrently.
  virtual double predict(std::span<const std::string> names,
                         std::span<const double> values) const = 0;
};

class ModelPredictor final : public Predictor {
 public:
  explicit ModelPredictor(const learn::Model& model) : model_(&model) {}
  std::string manifest_hash() const override { return model_->scaler().manifest_hash; }
  double predict(std::span<const std::string> names,
                 std::span<const double> values) const override {
    return model_->predict_raw(names, values);
  }

 private:
  const learn::Model* model_;
};

struct Estimate {
  std::string class_id;
  double testability = 0.0;
  /// Simple or data class; the predictor was not consulted.
  bool trivial = false;
  /// Unclamped predictor output (equal to testability for trivial classes).
  double raw = 1.0;
};

/// Clamps into [0, 1]; NaN raises NumericError.
double clamp_unit(double value);

/// Trivial classes score 1 without a prediction. Otherwise the manifest's
/// metrics are extracted, handed to the predictor and the result clamped.
/// Throws ManifestMismatch when the predictor's manifest differs from
/// `manifest`, ClassNotFound for an unknown class id.
Estimate estimate_testability(std::string_view class_id, const metrics::ProjectAnalysis& analysis,
                              const metrics::Manifest& manifest, const Predictor& predictor);

/// Every class of the project, in index order, estimated concurrently.
std::vector<Estimate> estimate_all(const metrics::ProjectAnalysis& analysis,
                                   const metrics::Manifest& manifest, const Predictor& predictor);

/// Loads the project and the model file, then estimates one class.
Estimate estimate_testability(std::string_view class_id, const std::filesystem::path& project,
                              const std::filesystem::path& model_file,
                              const metrics::Manifest& manifest);

CsvTable estimates_table(std::span<const Estimate> estimates);

}  // namespace testlab::inference
