#include "testlab/learn/hgb.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "testlab/common/error.hpp"

namespace testlab::learn {

BinMapper BinMapper::fit(const Samples& s, std::size_t max_bins) {
  if (max_bins < 2 || max_bins > 256) throw InvalidParams("max_bins must lie in [2, 256]");
  BinMapper m;
  m.edges.resize(s.d);
  std::vector<double> col(s.n);
  for (std::size_t f = 0; f < s.d; ++f) {
    for (std::size_t i = 0; i < s.n; ++i) col[i] = s.at(i, f);
    std::sort(col.begin(), col.end());
    std::vector<double> distinct = col;
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    auto& e = m.edges[f];
    if (distinct.size() <= max_bins) {
      for (std::size_t i = 0; i + 1 < distinct.size(); ++i) {
        double t = distinct[i] + (distinct[i + 1] - distinct[i]) / 2.0;
        if (!(t < distinct[i + 1])) t = distinct[i];
        e.push_back(t);
      }
      continue;
    }
    for (std::size_t q = 1; q < max_bins; ++q) {
      const double pos = static_cast<double>(q) / static_cast<double>(max_bins) *
                         static_cast<double>(col.size() - 1);
      const auto lo = static_cast<std::size_t>(std::floor(pos));
      const std::size_t hi = std::min(lo + 1, col.size() - 1);
      const double t = col[lo] + (col[hi] - col[lo]) * (pos - static_cast<double>(lo));
      if (e.empty() || t > e.back()) e.push_back(t);
    }
  }
  return m;
}

std::uint16_t BinMapper::bin(std::size_t feature, double x) const {
  const auto& e = edges[feature];
  return static_cast<std::uint16_t>(std::lower_bound(e.begin(), e.end(), x) - e.begin());
}

namespace {

struct Histogram {
  std::vector<double> grad;
  std::vector<std::uint32_t> count;
};

struct Candidate {
  double gain = 0.0;
  int feature = -1;
  std::size_t bin = 0;
};

struct Leaf {
  std::uint32_t node = 0;
  std::size_t depth = 0;
  std::vector<std::size_t> rows;
  std::vector<Histogram> hist;  // per feature
  double grad_sum = 0.0;
  Candidate split;
};

class Grower {
 public:
  Grower(const std::vector<std::vector<std::uint16_t>>& binned, const BinMapper& bins,
         const std::vector<double>& grad, const HgbParams& p)
      : binned_(binned), bins_(bins), grad_(grad), p_(p) {}

  /// Returns the tree and, per training row, the leaf value applied to it.
  HistGradientBoosting::Tree grow(std::vector<double>& update) {
    HistGradientBoosting::Tree tree;
    std::vector<Leaf> leaves;
    Leaf root;
    root.rows.resize(grad_.size());
    std::iota(root.rows.begin(), root.rows.end(), 0);
    root.hist = build_hist(root.rows);
    for (std::size_t i : root.rows) root.grad_sum += grad_[i];
    tree.push_back({});
    evaluate(root);
    leaves.push_back(std::move(root));

    std::size_t n_leaves = 1;
    while (n_leaves < p_.max_leaf_nodes) {
      std::size_t best = leaves.size();
      for (std::size_t i = 0; i < leaves.size(); ++i) {
        if (leaves[i].split.feature < 0) continue;
        if (best == leaves.size() || leaves[i].split.gain > leaves[best].split.gain) best = i;
      }
      if (best == leaves.size()) break;
      Leaf parent = std::move(leaves[best]);
      leaves.erase(leaves.begin() + static_cast<std::ptrdiff_t>(best));
      const auto f = static_cast<std::size_t>(parent.split.feature);
      Leaf left, right;
      for (std::size_t r : parent.rows) {
        (binned_[f][r] <= parent.split.bin ? left : right).rows.push_back(r);
      }
      for (std::size_t r : left.rows) left.grad_sum += grad_[r];
      right.grad_sum = parent.grad_sum - left.grad_sum;
      Leaf& small = left.rows.size() <= right.rows.size() ? left : right;
      Leaf& large = left.rows.size() <= right.rows.size() ? right : left;
      small.hist = build_hist(small.rows);
      large.hist = std::move(parent.hist);
      for (std::size_t g = 0; g < large.hist.size(); ++g) {
        for (std::size_t b = 0; b < large.hist[g].grad.size(); ++b) {
          large.hist[g].grad[b] -= small.hist[g].grad[b];
          large.hist[g].count[b] -= small.hist[g].count[b];
        }
      }
      auto& node = tree[parent.node];
      node.feature = parent.split.feature;
      node.threshold = bins_.edges[f][parent.split.bin];
      node.left = static_cast<std::uint32_t>(tree.size());
      node.right = static_cast<std::uint32_t>(tree.size() + 1);
      left.node = node.left;
      right.node = node.right;
      tree.push_back({});
      tree.push_back({});
      left.depth = right.depth = parent.depth + 1;
      evaluate(left);
      evaluate(right);
      leaves.push_back(std::move(left));
      leaves.push_back(std::move(right));
      ++n_leaves;
    }
    for (const auto& leaf : leaves) {
      const double value =
          -p_.learning_rate * leaf.grad_sum / static_cast<double>(leaf.rows.size());
      tree[leaf.node].value = value;
      for (std::size_t r : leaf.rows) update[r] = value;
    }
    return tree;
  }

 private:
  std::vector<Histogram> build_hist(const std::vector<std::size_t>& rows) const {
    std::vector<Histogram> hist(binned_.size());
    for (std::size_t f = 0; f < binned_.size(); ++f) {
      auto& h = hist[f];
      h.grad.assign(bins_.bins(f), 0.0);
      h.count.assign(bins_.bins(f), 0);
      const auto& col = binned_[f];
      for (std::size_t r : rows) {
        h.grad[col[r]] += grad_[r];
        ++h.count[col[r]];
      }
    }
    return hist;
  }

  void evaluate(Leaf& leaf) const {
    leaf.split = {};
    const std::size_t n = leaf.rows.size();
    if (leaf.depth >= p_.max_depth || n < 2 * p_.min_samples_leaf) return;
    const double total = leaf.grad_sum;
    const double parent = total * total / static_cast<double>(n);
    for (std::size_t f = 0; f < leaf.hist.size(); ++f) {
      const auto& h = leaf.hist[f];
      double gl = 0.0;
      std::size_t nl = 0;
      for (std::size_t b = 0; b + 1 < h.grad.size(); ++b) {
        gl += h.grad[b];
        nl += h.count[b];
        if (h.count[b] == 0) continue;
        const std::size_t nr = n - nl;
        if (nl < p_.min_samples_leaf) continue;
        if (nr < p_.min_samples_leaf) break;
        const double gr = total - gl;
        const double gain = gl * gl / static_cast<double>(nl) +
                            gr * gr / static_cast<double>(nr) - parent;
        if (gain > leaf.split.gain) leaf.split = {gain, static_cast<int>(f), b};
      }
    }
  }

  const std::vector<std::vector<std::uint16_t>>& binned_;
  const BinMapper& bins_;
  const std::vector<double>& grad_;
  const HgbParams& p_;
};

double mse(const std::vector<double>& y, const std::vector<double>& pred) {
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) s += (y[i] - pred[i]) * (y[i] - pred[i]);
  return s / static_cast<double>(y.size());
}

}  // namespace

HistGradientBoosting::HistGradientBoosting(double baseline, std::vector<Tree> trees,
                                           std::size_t dims, HgbParams params)
    : baseline_(baseline), trees_(std::move(trees)), dims_(dims), params_(params) {
  for (const auto& t : trees_) {
    if (t.empty()) throw InvalidParams("boosted tree without nodes");
    for (const auto& n : t) {
      if (n.feature >= 0 && (static_cast<std::size_t>(n.feature) >= dims_ || n.left >= t.size() ||
                             n.right >= t.size())) {
        throw InvalidParams("boosted tree node refers outside the tree");
      }
    }
  }
}

HistGradientBoosting HistGradientBoosting::fit(const Samples& s, const HgbParams& params) {
  if (s.n == 0) throw InvalidArgument("cannot fit boosting on zero rows");
  if (params.max_leaf_nodes < 2) throw InvalidParams("max_leaf_nodes must be at least 2");
  if (params.min_samples_leaf < 1) throw InvalidParams("min_samples_leaf must be positive");
  if (!(params.learning_rate > 0.0)) throw InvalidParams("learning_rate must be positive");
  const BinMapper bins = BinMapper::fit(s, params.max_bins);
  std::vector<std::vector<std::uint16_t>> binned(s.d, std::vector<std::uint16_t>(s.n));
  for (std::size_t f = 0; f < s.d; ++f)
    for (std::size_t i = 0; i < s.n; ++i) binned[f][i] = bins.bin(f, s.at(i, f));

  HistGradientBoosting model;
  model.dims_ = s.d;
  model.params_ = params;
  model.baseline_ = std::accumulate(s.y.begin(), s.y.end(), 0.0) / static_cast<double>(s.n);
  std::vector<double> pred(s.n, model.baseline_);
  std::vector<double> grad(s.n);
  std::vector<double> update(s.n);
  model.loss_history_.push_back(mse(s.y, pred));
  for (std::size_t it = 0; it < params.max_iter; ++it) {
    for (std::size_t i = 0; i < s.n; ++i) grad[i] = pred[i] - s.y[i];
    Grower grower(binned, bins, grad, params);
    model.trees_.push_back(grower.grow(update));
    for (std::size_t i = 0; i < s.n; ++i) pred[i] += update[i];
    model.loss_history_.push_back(mse(s.y, pred));
  }
  return model;
}

double HistGradientBoosting::predict(std::span<const double> x) const {
  check_dims(x);
  double out = baseline_;
  for (const auto& t : trees_) {
    std::size_t i = 0;
    while (t[i].feature >= 0) {
      i = x[static_cast<std::size_t>(t[i].feature)] <= t[i].threshold ? t[i].left : t[i].right;
    }
    out += t[i].value;
  }
  return out;
}

Json HistGradientBoosting::to_json() const {
  Json j;
  j["family"] = "HGBR";
  j["dims"] = dims_;
  j["params"] = {{"max_iter", params_.max_iter},
                 {"learning_rate", params_.learning_rate},
                 {"max_depth", params_.max_depth},
                 {"min_samples_leaf", params_.min_samples_leaf},
                 {"max_leaf_nodes", params_.max_leaf_nodes},
                 {"max_bins", params_.max_bins}};
  j["baseline"] = baseline_;
  Json trees = Json::array();
  for (const auto& t : trees_) {
    Json nodes = Json::array();
    for (const auto& n : t) {
      nodes.push_back(n.feature < 0 ? Json::array({n.value})
                                    : Json::array({n.feature, n.threshold, n.left, n.right}));
    }
    trees.push_back(std::move(nodes));
  }
  j["trees"] = std::move(trees);
  return j;
}

HistGradientBoosting HistGradientBoosting::from_json(const Json& j) {
  HgbParams p;
  const auto& jp = j.at("params");
  p.max_iter = jp.at("max_iter").get<std::size_t>();
  p.learning_rate = jp.at("learning_rate").get<double>();
  p.max_depth = jp.at("max_depth").get<std::size_t>();
  p.min_samples_leaf = jp.at("min_samples_leaf").get<std::size_t>();
  p.max_leaf_nodes = jp.at("max_leaf_nodes").get<std::size_t>();
  p.max_bins = jp.at("max_bins").get<std::size_t>();
  std::vector<Tree> trees;
  for (const auto& jt : j.at("trees")) {
    Tree t;
    for (const auto& jn : jt) {
      Node n;
      if (jn.size() == 1) {
        n.value = jn[0].get<double>();
      } else if (jn.size() == 4) {
        n.feature = jn[0].get<int>();
        n.threshold = jn[1].get<double>();
        n.left = jn[2].get<std::uint32_t>();
        n.right = jn[3].get<std::uint32_t>();
      } else {
        throw InvalidParams("malformed boosted tree node");
      }
      t.push_back(n);
    }
    trees.push_back(std::move(t));
  }
  return HistGradientBoosting(j.at("baseline").get<double>(), std::move(trees),
                              j.at("dims").get<std::size_t>(), p);
}

}  // namespace testlab::learn
