#include "testlab/learn/regressor.hpp"

#include <algorithm>
#include <set>

#include "testlab/common/error.hpp"
#include "testlab/data/dataset.hpp"
#include "testlab/learn/hgb.hpp"
#include "testlab/learn/mlp.hpp"
#include "testlab/learn/tree.hpp"

namespace testlab::learn {

Samples Samples::subset(std::span<const std::size_t> rows) const {
  Samples out;
  out.n = rows.size();
  out.d = d;
  out.x.reserve(rows.size() * d);
  out.y.reserve(rows.size());
  for (std::size_t r : rows) {
    auto src = row(r);
    out.x.insert(out.x.end(), src.begin(), src.end());
    out.y.push_back(y.at(r));
  }
  return out;
}

Samples Samples::from_rows(const std::vector<std::vector<double>>& rows,
                           const std::vector<double>& targets) {
  if (rows.size() != targets.size()) throw DimensionMismatch("rows and targets differ in length");
  Samples s;
  s.n = rows.size();
  s.d = rows.empty() ? 0 : rows.front().size();
  s.x.reserve(s.n * s.d);
  for (const auto& r : rows) {
    if (r.size() != s.d) throw DimensionMismatch("ragged sample rows");
    s.x.insert(s.x.end(), r.begin(), r.end());
  }
  s.y = targets;
  return s;
}

Samples Samples::from_dataset(const data::Dataset& ds) {
  Samples s = from_rows(ds.rows, ds.targets);
  s.d = ds.dims();
  return s;
}

std::string_view to_string(Family f) {
  switch (f) {
    case Family::DTR: return "DTR";
    case Family::HGBR: return "HGBR";
    case Family::RFR: return "RFR";
    case Family::MLPR: return "MLPR";
    case Family::VoR: return "VoR";
  }
  return "DTR";
}

Family parse_family(std::string_view text) {
  if (text == "DTR") return Family::DTR;
  if (text == "HGBR") return Family::HGBR;
  if (text == "RFR") return Family::RFR;
  if (text == "MLPR" || text == "MLP") return Family::MLPR;
  if (text == "VoR") return Family::VoR;
  throw InvalidParams("unknown model family '" + std::string(text) +
                      "' (expected DTR, HGBR, RFR, MLPR or VoR)");
}

std::vector<double> Regressor::predict_all(const Samples& s) const {
  std::vector<double> out(s.n);
  for (std::size_t i = 0; i < s.n; ++i) out[i] = predict(s.row(i));
  return out;
}

void Regressor::check_dims(std::span<const double> x) const {
  if (x.size() != dims()) {
    throw DimensionMismatch(std::string(to_string(family())) + " model expects " +
                            std::to_string(dims()) + " features, got " + std::to_string(x.size()));
  }
}

namespace {

const std::set<std::string>& allowed_keys(Family f) {
  static const std::set<std::string> dtr{"criterion", "max_depth", "min_samples_split",
                                         "min_samples_leaf"};
  static const std::set<std::string> rfr{"n_estimators", "criterion", "max_depth",
                                         "min_samples_split", "min_samples_leaf", "bootstrap"};
  static const std::set<std::string> hgb{"loss",           "max_depth", "min_samples_leaf",
                                         "max_iter",       "learning_rate", "max_leaf_nodes",
                                         "max_bins"};
  static const std::set<std::string> mlp{"hidden_layer_sizes", "activation",  "learning_rate",
                                         "epochs",             "learning_rate_init",
                                         "batch_size",         "alpha"};
  switch (f) {
    case Family::DTR: return dtr;
    case Family::RFR: return rfr;
    case Family::HGBR: return hgb;
    case Family::MLPR:
    case Family::VoR: return mlp;
  }
  return dtr;
}

std::string where(Family f, std::string_view key) {
  return std::string(to_string(f)) + "." + std::string(key);
}

std::size_t get_count(Family f, const Json& p, const char* key, std::size_t fallback) {
  if (!p.contains(key)) return fallback;
  const auto& v = p.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw InvalidParams(where(f, key) + " must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

double get_real(Family f, const Json& p, const char* key, double fallback) {
  if (!p.contains(key)) return fallback;
  if (!p.at(key).is_number()) throw InvalidParams(where(f, key) + " must be a number");
  return p.at(key).get<double>();
}

std::string get_text(Family f, const Json& p, const char* key, const std::string& fallback) {
  if (!p.contains(key)) return fallback;
  if (!p.at(key).is_string()) throw InvalidParams(where(f, key) + " must be a string");
  return p.at(key).get<std::string>();
}

// Python-style range(start, stop, step) membership.
void in_range(Family f, const char* key, std::size_t v, std::size_t start, std::size_t stop,
              std::size_t step) {
  if (v < start || v >= stop || (v - start) % step != 0) {
    throw InvalidParams(where(f, key) + " = " + std::to_string(v) + " is outside range(" +
                        std::to_string(start) + ", " + std::to_string(stop) + ", " +
                        std::to_string(step) + ")");
  }
}

TreeParams tree_params(const Json& p, bool grid) {
  const Family f = Family::DTR;
  if (get_text(f, p, "criterion", "mse") != "mse") {
    throw InvalidParams("DTR.criterion: only 'mse' is implemented");
  }
  TreeParams t;
  t.max_depth = get_count(f, p, "max_depth", t.max_depth);
  t.min_samples_split = get_count(f, p, "min_samples_split", t.min_samples_split);
  t.min_samples_leaf = get_count(f, p, "min_samples_leaf", t.min_samples_leaf);
  if (t.min_samples_split < 2) throw InvalidParams("DTR.min_samples_split must be at least 2");
  if (t.min_samples_leaf < 1) throw InvalidParams("DTR.min_samples_leaf must be at least 1");
  if (grid) {
    in_range(f, "max_depth", t.max_depth, 3, 50, 5);
    in_range(f, "min_samples_split", t.min_samples_split, 2, 30, 2);
  }
  return t;
}

ForestParams forest_params(const Json& p, bool grid) {
  const Family f = Family::RFR;
  if (get_text(f, p, "criterion", "mse") != "mse") {
    throw InvalidParams("RFR.criterion: only 'mse' is implemented");
  }
  ForestParams r;
  r.n_estimators = get_count(f, p, "n_estimators", r.n_estimators);
  r.max_depth = get_count(f, p, "max_depth", r.max_depth);
  r.min_samples_split = get_count(f, p, "min_samples_split", r.min_samples_split);
  r.min_samples_leaf = get_count(f, p, "min_samples_leaf", r.min_samples_leaf);
  if (p.contains("bootstrap")) {
    if (!p.at("bootstrap").is_boolean()) throw InvalidParams("RFR.bootstrap must be a boolean");
    r.bootstrap = p.at("bootstrap").get<bool>();
  }
  if (r.n_estimators < 1) throw InvalidParams("RFR.n_estimators must be positive");
  if (r.min_samples_split < 2) throw InvalidParams("RFR.min_samples_split must be at least 2");
  if (r.min_samples_leaf < 1) throw InvalidParams("RFR.min_samples_leaf must be at least 1");
  if (grid) {
    in_range(f, "n_estimators", r.n_estimators, 50, 200, 50);
    in_range(f, "max_depth", r.max_depth, 3, 50, 5);
    in_range(f, "min_samples_split", r.min_samples_split, 2, 30, 2);
  }
  return r;
}

HgbParams hgb_params(const Json& p, bool grid) {
  const Family f = Family::HGBR;
  const auto loss = get_text(f, p, "loss", "least_squares");
  if (loss != "least_squares" && loss != "squared_error") {
    throw InvalidParams("HGBR.loss: only 'least_squares' is implemented");
  }
  HgbParams h;
  h.max_depth = get_count(f, p, "max_depth", h.max_depth);
  h.min_samples_leaf = get_count(f, p, "min_samples_leaf", h.min_samples_leaf);
  h.max_iter = get_count(f, p, "max_iter", h.max_iter);
  h.learning_rate = get_real(f, p, "learning_rate", h.learning_rate);
  h.max_leaf_nodes = get_count(f, p, "max_leaf_nodes", h.max_leaf_nodes);
  h.max_bins = get_count(f, p, "max_bins", h.max_bins);
  if (h.min_samples_leaf < 1) throw InvalidParams("HGBR.min_samples_leaf must be at least 1");
  if (h.max_leaf_nodes < 2) throw InvalidParams("HGBR.max_leaf_nodes must be at least 2");
  if (h.max_bins < 2 || h.max_bins > 256) throw InvalidParams("HGBR.max_bins must lie in [2, 256]");
  if (!(h.learning_rate > 0.0)) throw InvalidParams("HGBR.learning_rate must be positive");
  if (grid) {
    in_range(f, "max_depth", h.max_depth, 3, 50, 5);
    in_range(f, "min_samples_leaf", h.min_samples_leaf, 5, 50, 10);
    in_range(f, "max_iter", h.max_iter, 100, 600, 100);
  }
  return h;
}

MlpParams mlp_params(const Json& p, bool grid) {
  const Family f = Family::MLPR;
  MlpParams m;
  if (p.contains("hidden_layer_sizes")) {
    const auto& h = p.at("hidden_layer_sizes");
    if (!h.is_array() || h.empty()) {
      throw InvalidParams("MLPR.hidden_layer_sizes must be a non-empty list");
    }
    m.hidden.clear();
    for (const auto& v : h) {
      if (!v.is_number_integer() || v.get<long long>() < 1) {
        throw InvalidParams("MLPR.hidden_layer_sizes entries must be positive integers");
      }
      m.hidden.push_back(v.get<std::size_t>());
    }
  }
  m.activation = parse_activation(get_text(f, p, "activation", "tanh"));
  const auto schedule = get_text(f, p, "learning_rate", "constant");
  if (schedule != "constant" && schedule != "adaptive") {
    throw InvalidParams("MLPR.learning_rate must be 'constant' or 'adaptive'");
  }
  m.adaptive = schedule == "adaptive";
  m.epochs = get_count(f, p, "epochs", m.epochs);
  m.learning_rate = get_real(f, p, "learning_rate_init", m.learning_rate);
  m.batch_size = get_count(f, p, "batch_size", m.batch_size);
  m.alpha = get_real(f, p, "alpha", m.alpha);
  if (m.batch_size < 1) throw InvalidParams("MLPR.batch_size must be positive");
  if (!(m.learning_rate > 0.0)) throw InvalidParams("MLPR.learning_rate_init must be positive");
  if (!(m.alpha >= 0.0)) throw InvalidParams("MLPR.alpha must be non-negative");
  if (grid) {
    const bool known = m.hidden == std::vector<std::size_t>{256, 100} ||
                       m.hidden == std::vector<std::size_t>{512, 256, 100};
    if (!known) throw InvalidParams("MLPR.hidden_layer_sizes must be (256, 100) or (512, 256, 100)");
    in_range(f, "epochs", m.epochs, 100, 500, 50);
  }
  return m;
}

}  // namespace

void validate_params(Family family, const Json& params, bool grid_mode) {
  if (!params.is_object()) {
    throw InvalidParams(std::string(to_string(family)) + " parameters must be a JSON object");
  }
  for (const auto& [key, _] : params.items()) {
    if (!allowed_keys(family).contains(key)) throw InvalidParams("unknown parameter " + where(family, key));
  }
  switch (family) {
    case Family::DTR: tree_params(params, grid_mode); break;
    case Family::RFR: forest_params(params, grid_mode); break;
    case Family::HGBR: hgb_params(params, grid_mode); break;
    case Family::MLPR: mlp_params(params, grid_mode); break;
    case Family::VoR: throw InvalidParams("VoR has no base-model parameters");
  }
}

Json default_params(Family family) {
  switch (family) {
    case Family::DTR:
      return {{"criterion", "mse"}, {"max_depth", 8}, {"min_samples_split", 28}};
    case Family::RFR:
      return {{"n_estimators", 150}, {"criterion", "mse"}, {"max_depth", 28},
              {"min_samples_split", 2}};
    case Family::HGBR:
      return {{"loss", "least_squares"}, {"max_depth", 18}, {"min_samples_leaf", 15},
              {"max_iter", 500}};
    case Family::MLPR:
      return {{"hidden_layer_sizes", {512, 256, 100}}, {"activation", "tanh"},
              {"learning_rate", "constant"}, {"epochs", 100}};
    case Family::VoR:
      break;
  }
  return Json::object();
}

std::unique_ptr<Regressor> fit_family(Family family, const Json& params, const Samples& train,
                                      std::uint64_t seed, bool grid_mode) {
  validate_params(family, params, grid_mode);
  if (train.n == 0) throw InvalidArgument("cannot fit a model on an empty training set");
  switch (family) {
    case Family::DTR:
      return std::make_unique<RegressionTree>(RegressionTree::fit(train, tree_params(params, false)));
    case Family::RFR:
      return std::make_unique<RandomForest>(
          RandomForest::fit(train, forest_params(params, false), seed));
    case Family::HGBR:
      return std::make_unique<HistGradientBoosting>(
          HistGradientBoosting::fit(train, hgb_params(params, false)));
    case Family::MLPR:
      return std::make_unique<Perceptron>(Perceptron::fit(train, mlp_params(params, false), seed));
    case Family::VoR:
      break;
  }
  return nullptr;
}

std::unique_ptr<Regressor> regressor_from_json(const Json& j) {
  try {
    switch (parse_family(j.at("family").get<std::string>())) {
      case Family::DTR: return std::make_unique<RegressionTree>(RegressionTree::from_json(j));
      case Family::RFR: return std::make_unique<RandomForest>(RandomForest::from_json(j));
      case Family::HGBR:
        return std::make_unique<HistGradientBoosting>(HistGradientBoosting::from_json(j));
      case Family::MLPR: return std::make_unique<Perceptron>(Perceptron::from_json(j));
      case Family::VoR: break;
    }
  } catch (const nlohmann::json::exception& e) {
    throw SchemaMismatch(std::string("malformed model JSON: ") + e.what());
  }
  return nullptr;
}

}  // namespace testlab::learn
