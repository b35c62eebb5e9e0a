#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "testlab/data/dataset.hpp"
#include "testlab/learn/ensemble.hpp"
#include "testlab/learn/selection.hpp"

namespace testlab::learn {

/// Candidate hyperparameters per family plus candidate voting weights.
///
/// JSON form:
///   {"folds": 5, "grid_mode": true,
///    "HGBR": {"max_depth": [3, 8, ...], ...}, "RFR": {...}, "MLPR": {...},
///    "VoR": {"weights": [[0, 0, 0, "2/6", "3/6", "1/6"], ...]}}
/// A family without an entry uses its defaults.
struct TrainConfig {
  std::map<Family, std::vector<Json>> grids;
  std::vector<VotingWeights> weights{kBestVotingWeights};
  std::size_t folds = 5;
  bool grid_mode = true;

  static TrainConfig from_json(const Json& j);
  static TrainConfig load(const std::filesystem::path& path);
};

/// A fitted ensemble together with the preprocessing it expects.
class Model {
 public:
  Model(std::unique_ptr<VotingEnsemble> ensemble, data::ScalerFile scaler, Json selection);

  /// Prediction on an already scaled vector in `features()` order.
  double predict_scaled(std::span<const double> x) const;
  /// Picks the model's features from a named raw vector, scales, predicts.
  double predict_raw(std::span<const std::string> names, std::span<const double> values) const;

  const std::vector<std::string>& features() const { return scaler_.params.names; }
  const data::ScalerFile& scaler() const { return scaler_; }
  const VotingEnsemble& ensemble() const { return *ensemble_; }
  const Json& selection() const { return selection_; }

  std::string to_json() const;
  static Model from_json(std::string_view text);
  static Model load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

 private:
  std::unique_ptr<VotingEnsemble> ensemble_;
  data::ScalerFile scaler_;
  Json selection_;
};

/// Grid search for every family that some candidate weight vector uses,
/// weight selection on the winners, then a refit on all of `train`.
Model train_model(const data::Dataset& train, const data::ScalerFile& scaler,
                  const TrainConfig& config, std::uint64_t seed);

}  // namespace testlab::learn
