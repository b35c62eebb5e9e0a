#include "testlab/learn/model.hpp"

#include <algorithm>
#include <cmath>

#include "testlab/common/error.hpp"
#include "testlab/common/stats.hpp"
#include "testlab/common/text.hpp"

namespace testlab::learn {

TrainConfig TrainConfig::from_json(const Json& j) {
  if (!j.is_object()) throw InvalidParams("training config must be a JSON object");
  TrainConfig c;
  for (const auto& [key, value] : j.items()) {
    if (key == "folds") {
      if (!value.is_number_integer() || value.get<long long>() < 2) {
        throw InvalidParams("folds must be an integer >= 2");
      }
      c.folds = value.get<std::size_t>();
    } else if (key == "grid_mode") {
      if (!value.is_boolean()) throw InvalidParams("grid_mode must be true or false");
      c.grid_mode = value.get<bool>();
    } else if (key == "VoR") {
      if (!value.is_object() || !value.contains("weights") || !value.at("weights").is_array()) {
        throw InvalidParams("VoR entry needs a 'weights' list");
      }
      c.weights.clear();
      for (const auto& w : value.at("weights")) c.weights.push_back(parse_weights(w));
      if (c.weights.empty()) throw InvalidParams("VoR weight list is empty");
    } else {
      const Family f = parse_family(key);
      auto candidates = expand_grid(value);
      for (const auto& p : candidates) validate_params(f, p, c.grid_mode);
      c.grids[f] = std::move(candidates);
    }
  }
  return c;
}

TrainConfig TrainConfig::load(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return from_json(Json::parse(text));
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidParams(path.string() + ": " + e.what());
  }
}

Model::Model(std::unique_ptr<VotingEnsemble> ensemble, data::ScalerFile scaler, Json selection)
    : ensemble_(std::move(ensemble)), scaler_(std::move(scaler)), selection_(std::move(selection)) {
  if (!ensemble_) throw InvalidParams("model without an ensemble");
  if (ensemble_->dims() != scaler_.params.names.size()) {
    throw DimensionMismatch("ensemble expects " + std::to_string(ensemble_->dims()) +
                            " features but the scaler has " +
                            std::to_string(scaler_.params.names.size()));
  }
}

double Model::predict_scaled(std::span<const double> x) const { return ensemble_->predict(x); }

double Model::predict_raw(std::span<const std::string> names,
                          std::span<const double> values) const {
  if (names.size() != values.size()) throw DimensionMismatch("names and values differ in length");
  std::vector<double> x;
  x.reserve(features().size());
  for (const auto& f : features()) {
    auto it = std::find(names.begin(), names.end(), f);
    if (it == names.end()) throw MissingMetric("model feature '" + f + "' was not extracted");
    x.push_back(values[static_cast<std::size_t>(it - names.begin())]);
  }
  data::apply_scaler(scaler_.params, x);
  return ensemble_->predict(x);
}

std::string Model::to_json() const {
  Json j;
  j["format"] = "testlab-model";
  j["version"] = 1;
  j["manifest_hash"] = scaler_.manifest_hash;
  j["variant"] = data::to_string(scaler_.variant);
  j["scaler"] = Json::parse(
      data::scaler_to_json(scaler_.params, scaler_.manifest_hash, scaler_.variant));
  j["selection"] = selection_;
  j["ensemble"] = ensemble_->to_json();
  return j.dump() + "\n";
}

Model Model::from_json(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaMismatch(std::string("model file is not valid JSON: ") + e.what());
  }
  try {
    if (j.at("format") != "testlab-model" || j.at("version") != 1) {
      throw SchemaMismatch("not a testlab model file (version 1)");
    }
    auto scaler = data::scaler_from_json(j.at("scaler").dump());
    if (scaler.manifest_hash != j.at("manifest_hash").get<std::string>()) {
      throw SchemaMismatch("model and scaler disagree on the manifest hash");
    }
    auto ensemble = std::make_unique<VotingEnsemble>(VotingEnsemble::from_json(j.at("ensemble")));
    return Model(std::move(ensemble), std::move(scaler), j.value("selection", Json::object()));
  } catch (const nlohmann::json::exception& e) {
    throw SchemaMismatch(std::string("malformed model file: ") + e.what());
  }
}

Model Model::load(const std::filesystem::path& path) { return from_json(read_file(path)); }

void Model::save(const std::filesystem::path& path) const { write_file(path, to_json()); }

namespace {

std::uint64_t family_stream(Family f) { return 100 + static_cast<std::uint64_t>(f); }

Json cv_table_json(const GridResult& r) {
  Json rows = Json::array();
  for (const auto& row : r.table) {
    Json jr;
    jr["params"] = row.params;
    jr["mean_rmse"] = std::isnan(row.mean_rmse) ? Json(nullptr) : Json(row.mean_rmse);
    jr["fold_rmse"] = row.fold_rmse;
    rows.push_back(std::move(jr));
  }
  return {{"best", r.best}, {"candidates", std::move(rows)}};
}

}  // namespace

Model train_model(const data::Dataset& train, const data::ScalerFile& scaler,
                  const TrainConfig& config, std::uint64_t seed) {
  if (train.feature_names != scaler.params.names) {
    throw SchemaMismatch("dataset columns do not match the scaler columns");
  }
  if (train.size() == 0) throw InvalidArgument("training dataset is empty");
  const Samples s = Samples::from_dataset(train);

  std::map<Family, Json> best;
  Json selection = Json::object();
  for (std::size_t pos = 0; pos < 6; ++pos) {
    bool used = false;
    for (const auto& w : config.weights) used = used || w[pos] != 0.0;
    if (!used) continue;
    const Family f = *family_at(pos);
    auto it = config.grids.find(f);
    const std::vector<Json> candidates =
        it == config.grids.end() ? std::vector<Json>{default_params(f)} : it->second;
    const auto result = grid_search_cv(f, candidates, s, config.folds,
                                       stats::mix_seed(seed, family_stream(f)), config.grid_mode);
    best[f] = result.table[result.best].params;
    selection[std::string(to_string(f))] = cv_table_json(result);
  }

  const auto ws = select_weights(config.weights, best, s, config.folds, stats::mix_seed(seed, 7));
  const VotingWeights weights = config.weights[ws.best];
  Json wrows = Json::array();
  for (std::size_t c = 0; c < config.weights.size(); ++c) {
    wrows.push_back({{"weights", config.weights[c]},
                     {"mean_rmse", std::isnan(ws.mean_rmse[c]) ? Json(nullptr)
                                                               : Json(ws.mean_rmse[c])}});
  }
  selection["VoR"] = {{"best", ws.best}, {"candidates", std::move(wrows)}};

  std::map<Family, std::unique_ptr<Regressor>> models;
  for (std::size_t pos = 0; pos < 6; ++pos) {
    if (weights[pos] == 0.0) continue;
    const Family f = *family_at(pos);
    models[f] = fit_family(f, best.at(f), s, stats::mix_seed(seed, family_stream(f)),
                           config.grid_mode);
  }
  auto ensemble = std::make_unique<VotingEnsemble>(weights, std::move(models));
  return Model(std::move(ensemble), scaler, std::move(selection));
}

}  // namespace testlab::learn
