#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "testlab/learn/regressor.hpp"

namespace testlab::learn {

struct HgbParams {
  std::size_t max_iter = 500;
  double learning_rate = 0.1;
  std::size_t max_depth = 18;
  std::size_t min_samples_leaf = 15;
  std::size_t max_leaf_nodes = 31;
  std::size_t max_bins = 256;
};

/// Per-feature bin edges. A value falls into bin b when exactly b edges are
/// strictly below it, so `x <= edges[b]` iff its bin is at most b.
struct BinMapper {
  std::vector<std::vector<double>> edges;

  static BinMapper fit(const Samples& s, std::size_t max_bins);
  std::uint16_t bin(std::size_t feature, double x) const;
  std::size_t bins(std::size_t feature) const { return edges[feature].size() + 1; }
};

/// Gradient boosting on binned features with squared loss. Trees grow
/// best-first by gain; leaf values are Newton steps (mean residual).
class HistGradientBoosting final : public Regressor {
 public:
  struct Node {
    int feature = -1;
    double threshold = 0.0;
    std::uint32_t left = 0;
    std::uint32_t right = 0;
    double value = 0.0;  // already multiplied by the learning rate
  };
  using Tree = std::vector<Node>;

  HistGradientBoosting() = default;
  HistGradientBoosting(double baseline, std::vector<Tree> trees, std::size_t dims,
                       HgbParams params);

  static HistGradientBoosting fit(const Samples& s, const HgbParams& params);

  Family family() const override { return Family::HGBR; }
  std::size_t dims() const override { return dims_; }
  double predict(std::span<const double> x) const override;
  Json to_json() const override;
  static HistGradientBoosting from_json(const Json& j);

  /// Training MSE before boosting, then after every iteration.
  const std::vector<double>& loss_history() const { return loss_history_; }
  std::size_t iterations() const { return trees_.size(); }
  double baseline() const { return baseline_; }

 private:
  double baseline_ = 0.0;
  std::vector<Tree> trees_;
  std::size_t dims_ = 0;
  HgbParams params_;
  std::vector<double> loss_history_;
};

}  // namespace testlab::learn
