#include "testlab/learn/selection.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "testlab/common/error.hpp"
#include "testlab/common/stats.hpp"

namespace testlab::learn {

std::vector<std::vector<std::size_t>> kfold_indices(std::size_t n, std::size_t k,
                                                    std::uint64_t seed) {
  if (k < 2) throw InvalidArgument("cross-validation needs at least 2 folds");
  if (k > n) {
    throw InvalidArgument("cannot cut " + std::to_string(n) + " rows into " + std::to_string(k) +
                          " folds");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::vector<std::size_t>> folds(k);
  std::size_t pos = 0;
  for (std::size_t f = 0; f < k; ++f) {
    const std::size_t size = n / k + (f < n % k ? 1 : 0);
    folds[f].assign(order.begin() + static_cast<std::ptrdiff_t>(pos),
                    order.begin() + static_cast<std::ptrdiff_t>(pos + size));
    pos += size;
  }
  return folds;
}

std::vector<Json> expand_grid(const Json& grid) {
  if (!grid.is_object()) throw InvalidParams("a parameter grid must be a JSON object");
  std::vector<Json> out{Json::object()};
  for (const auto& [key, values] : grid.items()) {
    const Json list = values.is_array() ? values : Json::array({values});
    if (list.empty()) throw InvalidParams("grid entry '" + key + "' has no values");
    std::vector<Json> next;
    for (const auto& partial : out) {
      for (const auto& v : list) {
        Json c = partial;
        c[key] = v;
        next.push_back(std::move(c));
      }
    }
    out = std::move(next);
  }
  return out;
}

namespace {

double rmse(const std::vector<double>& p, const Samples& s) {
  double ss = 0.0;
  for (std::size_t i = 0; i < s.n; ++i) ss += (p[i] - s.y[i]) * (p[i] - s.y[i]);
  return std::sqrt(ss / static_cast<double>(s.n));
}

struct FoldData {
  Samples train;
  Samples test;
};

std::vector<FoldData> make_folds(const Samples& s, std::size_t k, std::uint64_t seed) {
  const auto folds = kfold_indices(s.n, k, seed);
  std::vector<FoldData> out;
  for (std::size_t f = 0; f < k; ++f) {
    std::vector<std::size_t> train;
    for (std::size_t g = 0; g < k; ++g) {
      if (g != f) train.insert(train.end(), folds[g].begin(), folds[g].end());
    }
    std::sort(train.begin(), train.end());
    std::vector<std::size_t> test = folds[f];
    std::sort(test.begin(), test.end());
    out.push_back({s.subset(train), s.subset(test)});
  }
  return out;
}

}  // namespace

GridResult grid_search_cv(Family family, const std::vector<Json>& candidates, const Samples& s,
                          std::size_t folds, std::uint64_t seed, bool grid_mode) {
  if (candidates.empty()) throw InvalidParams("empty parameter grid");
  for (const auto& c : candidates) validate_params(family, c, grid_mode);
  GridResult result;
  if (candidates.size() == 1) {
    result.table.push_back({candidates[0], {}, std::numeric_limits<double>::quiet_NaN()});
    return result;
  }
  const auto data = make_folds(s, folds, seed);
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    CvRow row;
    row.params = candidates[c];
    for (std::size_t f = 0; f < data.size(); ++f) {
      const auto model = fit_family(family, candidates[c], data[f].train,
                                    stats::mix_seed(seed, 1000 + f), grid_mode);
      row.fold_rmse.push_back(rmse(model->predict_all(data[f].test), data[f].test));
    }
    row.mean_rmse = stats::mean(row.fold_rmse);
    result.table.push_back(std::move(row));
    if (result.table.back().mean_rmse < result.table[result.best].mean_rmse) result.best = c;
  }
  return result;
}

WeightSearch select_weights(const std::vector<VotingWeights>& candidates,
                            const std::map<Family, Json>& params, const Samples& s,
                            std::size_t folds, std::uint64_t seed) {
  if (candidates.empty()) throw InvalidParams("empty voting-weight grid");
  for (const auto& w : candidates) validate_weights(w);
  WeightSearch out;
  if (candidates.size() == 1) {
    out.mean_rmse.push_back(std::numeric_limits<double>::quiet_NaN());
    return out;
  }
  const auto data = make_folds(s, folds, seed);
  out.mean_rmse.assign(candidates.size(), 0.0);
  for (std::size_t f = 0; f < data.size(); ++f) {
    std::array<std::vector<double>, 6> preds;
    for (std::size_t pos = 0; pos < 6; ++pos) {
      bool used = false;
      for (const auto& w : candidates) used = used || w[pos] != 0.0;
      if (!used) continue;
      const Family fam = *family_at(pos);
      auto it = params.find(fam);
      const Json p = it == params.end() ? default_params(fam) : it->second;
      preds[pos] = fit_family(fam, p, data[f].train, stats::mix_seed(seed, 1000 + f))
                       ->predict_all(data[f].test);
    }
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      std::vector<double> vote(data[f].test.n);
      for (std::size_t i = 0; i < vote.size(); ++i) {
        std::array<double, 6> row{};
        for (std::size_t pos = 0; pos < 6; ++pos) {
          if (candidates[c][pos] != 0.0) row[pos] = preds[pos][i];
        }
        vote[i] = weighted_vote(candidates[c], row);
      }
      out.mean_rmse[c] += rmse(vote, data[f].test) / static_cast<double>(data.size());
    }
  }
  for (std::size_t c = 1; c < candidates.size(); ++c) {
    if (out.mean_rmse[c] < out.mean_rmse[out.best]) out.best = c;
  }
  return out;
}

}  // namespace testlab::learn
