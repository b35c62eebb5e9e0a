#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "testlab/learn/regressor.hpp"

namespace testlab::learn {

struct TreeParams {
  std::size_t max_depth = 8;
  std::size_t min_samples_split = 28;
  std::size_t min_samples_leaf = 1;
  /// Features examined per split; 0 means all.
  std::size_t max_features = 0;
};

/// CART regression tree with squared-error splits. Thresholds are midpoints
/// between consecutive distinct values; `x <= threshold` goes left. Among
/// equal gains the lowest feature index, then the lowest threshold wins.
class RegressionTree final : public Regressor {
 public:
  struct Node {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    std::uint32_t left = 0;
    std::uint32_t right = 0;
    double value = 0.0;
  };

  RegressionTree() = default;
  RegressionTree(std::vector<Node> nodes, std::size_t dims, TreeParams params);

  /// `rows` may repeat indices (bootstrap samples).
  static RegressionTree fit(const Samples& s, std::span<const std::size_t> rows,
                            const TreeParams& params, std::mt19937_64* rng = nullptr);
  static RegressionTree fit(const Samples& s, const TreeParams& params);

  Family family() const override { return Family::DTR; }
  std::size_t dims() const override { return dims_; }
  double predict(std::span<const double> x) const override;
  Json to_json() const override;
  static RegressionTree from_json(const Json& j);

  const std::vector<Node>& nodes() const { return nodes_; }
  std::size_t depth() const;
  const TreeParams& params() const { return params_; }

 private:
  std::vector<Node> nodes_;
  std::size_t dims_ = 0;
  TreeParams params_;
};

struct ForestParams {
  std::size_t n_estimators = 150;
  std::size_t max_depth = 28;
  std::size_t min_samples_split = 2;
  std::size_t min_samples_leaf = 1;
  bool bootstrap = true;
};

/// Bagged trees; each split examines ceil(d / 3) random features.
class RandomForest final : public Regressor {
 public:
  RandomForest() = default;
  RandomForest(std::vector<RegressionTree> trees, std::size_t dims, ForestParams params);

  static RandomForest fit(const Samples& s, const ForestParams& params, std::uint64_t seed);

  Family family() const override { return Family::RFR; }
  std::size_t dims() const override { return dims_; }
  double predict(std::span<const double> x) const override;
  Json to_json() const override;
  static RandomForest from_json(const Json& j);

  const std::vector<RegressionTree>& trees() const { return trees_; }

 private:
  std::vector<RegressionTree> trees_;
  std::size_t dims_ = 0;
  ForestParams params_;
};

}  // namespace testlab::learn
