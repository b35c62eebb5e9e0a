#include "testlab/learn/tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "testlab/common/error.hpp"
#include "testlab/common/parallel.hpp"
#include "testlab/common/stats.hpp"

namespace testlab::learn {

namespace {

struct Split {
  int feature = -1;
  double threshold = 0.0;
  double score = 0.0;
};

class TreeBuilder {
 public:
  TreeBuilder(const Samples& s, const TreeParams& p, std::mt19937_64* rng)
      : s_(s), p_(p), rng_(rng) {
    features_.resize(s.d);
    std::iota(features_.begin(), features_.end(), 0);
    per_split_ = p.max_features == 0 ? s.d : std::min(p.max_features, s.d);
  }

  std::vector<RegressionTree::Node> take() { return std::move(nodes_); }

  std::uint32_t build(std::vector<std::size_t>& rows, std::size_t depth) {
    double sum = 0.0;
    double lo = s_.y[rows.front()];
    double hi = lo;
    for (std::size_t r : rows) {
      sum += s_.y[r];
      lo = std::min(lo, s_.y[r]);
      hi = std::max(hi, s_.y[r]);
    }
    const std::size_t m = rows.size();
    const auto idx = static_cast<std::uint32_t>(nodes_.size());
    nodes_.push_back({-1, 0.0, 0, 0, sum / static_cast<double>(m)});
    if (depth >= p_.max_depth || m < p_.min_samples_split || m < 2 * p_.min_samples_leaf ||
        lo == hi) {
      return idx;
    }
    const Split best = find_split(rows, sum);
    if (best.feature < 0) return idx;

    std::vector<std::size_t> left, right;
    left.reserve(m);
    right.reserve(m);
    for (std::size_t r : rows) {
      (s_.at(r, static_cast<std::size_t>(best.feature)) <= best.threshold ? left : right)
          .push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();
    const std::uint32_t l = build(left, depth + 1);
    const std::uint32_t r = build(right, depth + 1);
    auto& node = nodes_[idx];
    node.feature = best.feature;
    node.threshold = best.threshold;
    node.left = l;
    node.right = r;
    return idx;
  }

 private:
  std::vector<std::size_t> candidate_features() {
    if (per_split_ == s_.d) return features_;
    for (std::size_t i = 0; i < per_split_; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, s_.d - 1);
      std::swap(features_[i], features_[pick(*rng_)]);
    }
    std::vector<std::size_t> out(features_.begin(),
                                 features_.begin() + static_cast<std::ptrdiff_t>(per_split_));
    std::sort(out.begin(), out.end());
    return out;
  }

  Split find_split(const std::vector<std::size_t>& rows, double sum) {
    const std::size_t m = rows.size();
    const double parent = sum * sum / static_cast<double>(m);
    double sum_sq = 0.0;
    for (std::size_t r : rows) sum_sq += s_.y[r] * s_.y[r];
    const double min_gain = 1e-12 * (sum_sq - parent) + 1e-300;
    Split best;
    best.score = parent + min_gain;
    for (std::size_t f : candidate_features()) {
      buf_.clear();
      for (std::size_t r : rows) buf_.emplace_back(s_.at(r, f), s_.y[r]);
      std::sort(buf_.begin(), buf_.end());
      double left_sum = 0.0;
      for (std::size_t i = 0; i + 1 < m; ++i) {
        left_sum += buf_[i].second;
        const double a = buf_[i].first;
        const double b = buf_[i + 1].first;
        if (a == b) continue;
        const std::size_t nl = i + 1;
        const std::size_t nr = m - nl;
        if (nl < p_.min_samples_leaf || nr < p_.min_samples_leaf) continue;
        const double right_sum = sum - left_sum;
        const double score = left_sum * left_sum / static_cast<double>(nl) +
                             right_sum * right_sum / static_cast<double>(nr);
        if (score > best.score) {
          double t = a + (b - a) / 2.0;
          if (!(t < b)) t = a;
          best = {static_cast<int>(f), t, score};
        }
      }
    }
    return best;
  }

  const Samples& s_;
  const TreeParams& p_;
  std::mt19937_64* rng_;
  std::vector<std::size_t> features_;
  std::size_t per_split_ = 0;
  std::vector<std::pair<double, double>> buf_;
  std::vector<RegressionTree::Node> nodes_;
};

}  // namespace

RegressionTree::RegressionTree(std::vector<Node> nodes, std::size_t dims, TreeParams params)
    : nodes_(std::move(nodes)), dims_(dims), params_(params) {
  if (nodes_.empty()) throw InvalidParams("a tree needs at least one node");
  for (const auto& n : nodes_) {
    if (n.feature >= 0 && (static_cast<std::size_t>(n.feature) >= dims_ ||
                           n.left >= nodes_.size() || n.right >= nodes_.size())) {
      throw InvalidParams("tree node refers outside the tree");
    }
  }
}

RegressionTree RegressionTree::fit(const Samples& s, std::span<const std::size_t> rows,
                                   const TreeParams& params, std::mt19937_64* rng) {
  if (rows.empty()) throw InvalidArgument("cannot fit a tree on zero rows");
  if (params.max_features != 0 && params.max_features < s.d && rng == nullptr) {
    throw InvalidArgument("feature subsampling needs a random generator");
  }
  TreeBuilder builder(s, params, rng);
  std::vector<std::size_t> work(rows.begin(), rows.end());
  builder.build(work, 0);
  return RegressionTree(builder.take(), s.d, params);
}

RegressionTree RegressionTree::fit(const Samples& s, const TreeParams& params) {
  std::vector<std::size_t> rows(s.n);
  std::iota(rows.begin(), rows.end(), 0);
  return fit(s, rows, params);
}

double RegressionTree::predict(std::span<const double> x) const {
  check_dims(x);
  std::size_t i = 0;
  while (nodes_[i].feature >= 0) {
    const auto& n = nodes_[i];
    i = x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
  }
  return nodes_[i].value;
}

std::size_t RegressionTree::depth() const {
  std::vector<std::size_t> depth(nodes_.size(), 0);
  std::size_t best = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    best = std::max(best, depth[i]);
    if (nodes_[i].feature >= 0) {
      depth[nodes_[i].left] = depth[i] + 1;
      depth[nodes_[i].right] = depth[i] + 1;
    }
  }
  return best;
}

Json RegressionTree::to_json() const {
  Json j;
  j["family"] = "DTR";
  j["dims"] = dims_;
  j["params"] = {{"max_depth", params_.max_depth},
                 {"min_samples_split", params_.min_samples_split},
                 {"min_samples_leaf", params_.min_samples_leaf},
                 {"max_features", params_.max_features}};
  Json feature = Json::array(), threshold = Json::array(), left = Json::array(),
       right = Json::array(), value = Json::array();
  for (const auto& n : nodes_) {
    feature.push_back(n.feature);
    threshold.push_back(n.threshold);
    left.push_back(n.left);
    right.push_back(n.right);
    value.push_back(n.value);
  }
  j["feature"] = std::move(feature);
  j["threshold"] = std::move(threshold);
  j["left"] = std::move(left);
  j["right"] = std::move(right);
  j["value"] = std::move(value);
  return j;
}

RegressionTree RegressionTree::from_json(const Json& j) {
  TreeParams p;
  const auto& jp = j.at("params");
  p.max_depth = jp.at("max_depth").get<std::size_t>();
  p.min_samples_split = jp.at("min_samples_split").get<std::size_t>();
  p.min_samples_leaf = jp.at("min_samples_leaf").get<std::size_t>();
  p.max_features = jp.at("max_features").get<std::size_t>();
  const auto feature = j.at("feature").get<std::vector<int>>();
  const auto threshold = j.at("threshold").get<std::vector<double>>();
  const auto left = j.at("left").get<std::vector<std::uint32_t>>();
  const auto right = j.at("right").get<std::vector<std::uint32_t>>();
  const auto value = j.at("value").get<std::vector<double>>();
  const std::size_t n = feature.size();
  if (threshold.size() != n || left.size() != n || right.size() != n || value.size() != n) {
    throw InvalidParams("tree arrays have different lengths");
  }
  std::vector<Node> nodes(n);
  for (std::size_t i = 0; i < n; ++i) nodes[i] = {feature[i], threshold[i], left[i], right[i], value[i]};
  return RegressionTree(std::move(nodes), j.at("dims").get<std::size_t>(), p);
}

RandomForest::RandomForest(std::vector<RegressionTree> trees, std::size_t dims,
                           ForestParams params)
    : trees_(std::move(trees)), dims_(dims), params_(params) {
  if (trees_.empty()) throw InvalidParams("a forest needs at least one tree");
}

RandomForest RandomForest::fit(const Samples& s, const ForestParams& params, std::uint64_t seed) {
  if (s.n == 0) throw InvalidArgument("cannot fit a forest on zero rows");
  if (params.n_estimators == 0) throw InvalidParams("n_estimators must be positive");
  TreeParams tp;
  tp.max_depth = params.max_depth;
  tp.min_samples_split = params.min_samples_split;
  tp.min_samples_leaf = params.min_samples_leaf;
  tp.max_features = (s.d + 2) / 3;
  std::vector<RegressionTree> trees(params.n_estimators);
  parallel_for(params.n_estimators, [&](std::size_t t) {
    std::mt19937_64 rng(stats::mix_seed(seed, t));
    std::vector<std::size_t> rows(s.n);
    if (params.bootstrap) {
      std::uniform_int_distribution<std::size_t> pick(0, s.n - 1);
      for (auto& r : rows) r = pick(rng);
    } else {
      std::iota(rows.begin(), rows.end(), 0);
    }
    trees[t] = RegressionTree::fit(s, rows, tp, &rng);
  });
  return RandomForest(std::move(trees), s.d, params);
}

double RandomForest::predict(std::span<const double> x) const {
  check_dims(x);
  double sum = 0.0;
  for (const auto& t : trees_) sum += t.predict(x);
  return sum / static_cast<double>(trees_.size());
}

Json RandomForest::to_json() const {
  Json j;
  j["family"] = "RFR";
  j["dims"] = dims_;
  j["params"] = {{"n_estimators", params_.n_estimators},
                 {"max_depth", params_.max_depth},
                 {"min_samples_split", params_.min_samples_split},
                 {"min_samples_leaf", params_.min_samples_leaf},
                 {"bootstrap", params_.bootstrap}};
  Json trees = Json::array();
  for (const auto& t : trees_) trees.push_back(t.to_json());
  j["trees"] = std::move(trees);
  return j;
}

RandomForest RandomForest::from_json(const Json& j) {
  ForestParams p;
  const auto& jp = j.at("params");
  p.n_estimators = jp.at("n_estimators").get<std::size_t>();
  p.max_depth = jp.at("max_depth").get<std::size_t>();
  p.min_samples_split = jp.at("min_samples_split").get<std::size_t>();
  p.min_samples_leaf = jp.at("min_samples_leaf").get<std::size_t>();
  p.bootstrap = jp.at("bootstrap").get<bool>();
  std::vector<RegressionTree> trees;
  for (const auto& t : j.at("trees")) trees.push_back(RegressionTree::from_json(t));
  return RandomForest(std::move(trees), j.at("dims").get<std::size_t>(), p);
}

}  // namespace testlab::learn
