#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "testlab/learn/ensemble.hpp"
#include "testlab/learn/regressor.hpp"

namespace testlab::learn {

/// Seeded shuffle cut into k contiguous folds whose sizes differ by at most
/// one. Needs 2 <= k <= n.
std::vector<std::vector<std::size_t>> kfold_indices(std::size_t n, std::size_t k,
                                                    std::uint64_t seed);

/// Cartesian product of a {"key": [values...]} object; scalars count as
/// one-element lists. Earlier keys vary slowest.
std::vector<Json> expand_grid(const Json& grid);

struct CvRow {
  Json params;
  std::vector<double> fold_rmse;
  double mean_rmse = 0.0;
};

struct GridResult {
  std::size_t best = 0;
  std::vector<CvRow> table;
};

/// Exhaustive k-fold search scored by RMSE; the lowest mean wins and ties
/// keep grid order. A single candidate is returned without fitting.
GridResult grid_search_cv(Family family, const std::vector<Json>& candidates, const Samples& s,
                          std::size_t folds, std::uint64_t seed, bool grid_mode = true);

struct WeightSearch {
  std::size_t best = 0;
  std::vector<double> mean_rmse;
};

/// Picks voting weights by k-fold RMSE. Base models are fitted once per
/// fold with `params` and their predictions reused for every candidate.
WeightSearch select_weights(const std::vector<VotingWeights>& candidates,
                            const std::map<Family, Json>& params, const Samples& s,
                            std::size_t folds, std::uint64_t seed);

}  // namespace testlab::learn
