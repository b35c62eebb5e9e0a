#include "testlab/learn/ensemble.hpp"

#include <cmath>

#include "testlab/common/error.hpp"
#include "testlab/common/text.hpp"

namespace testlab::learn {

std::optional<Family> family_at(std::size_t position) {
  switch (position) {
    case 2: return Family::DTR;
    case 3: return Family::HGBR;
    case 4: return Family::RFR;
    case 5: return Family::MLPR;
    default: return std::nullopt;
  }
}

void validate_weights(const VotingWeights& w) {
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!std::isfinite(w[i]) || w[i] < 0.0) {
      throw InvalidParams("voting weight for " + std::string(kVotingPositions[i]) +
                          " must be finite and non-negative");
    }
    sum += w[i];
  }
  if (w[0] != 0.0 || w[1] != 0.0) {
    throw InvalidParams("Linear and SVMR are not implemented; their voting weights must be 0");
  }
  if (std::fabs(sum - 1.0) > 1e-9) {
    throw InvalidParams("voting weights must sum to 1 (got " + format_double(sum) + ")");
  }
}

double weighted_vote(const VotingWeights& w, const std::array<double, 6>& predictions) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 0.0) continue;
    num += w[i] * predictions[i];
    den += w[i];
  }
  return num / den;
}

VotingWeights parse_weights(const Json& j) {
  if (!j.is_array() || j.size() != 6) throw InvalidParams("voting weights need 6 entries");
  VotingWeights w{};
  for (std::size_t i = 0; i < 6; ++i) {
    const auto& v = j[i];
    if (v.is_number()) {
      w[i] = v.get<double>();
    } else if (v.is_string()) {
      const auto parts = split(v.get<std::string>(), '/');
      try {
        if (parts.size() == 1) {
          w[i] = parse_double(trim(parts[0]));
        } else if (parts.size() == 2) {
          w[i] = parse_double(trim(parts[0])) / parse_double(trim(parts[1]));
        } else {
          throw DataError("bad fraction");
        }
      } catch (const DataError&) {
        throw InvalidParams("voting weight '" + v.get<std::string>() + "' is not a number or a/b");
      }
    } else {
      throw InvalidParams("voting weights must be numbers or fraction strings");
    }
  }
  validate_weights(w);
  return w;
}

VotingEnsemble::VotingEnsemble(VotingWeights weights,
                               std::map<Family, std::unique_ptr<Regressor>> models)
    : weights_(weights), models_(std::move(models)) {
  validate_weights(weights_);
  bool first = true;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (weights_[i] == 0.0) continue;
    const auto f = family_at(i);
    auto it = models_.find(*f);
    if (it == models_.end() || !it->second) {
      throw InvalidParams("voting weight for " + std::string(kVotingPositions[i]) +
                          " is non-zero but no model was supplied");
    }
    if (first) {
      dims_ = it->second->dims();
      first = false;
    } else if (it->second->dims() != dims_) {
      throw DimensionMismatch("ensemble members disagree on the feature count");
    }
  }
}

double VotingEnsemble::predict(std::span<const double> x) const {
  check_dims(x);
  std::array<double, 6> preds{};
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (weights_[i] != 0.0) preds[i] = models_.at(*family_at(i))->predict(x);
  }
  return weighted_vote(weights_, preds);
}

const Regressor* VotingEnsemble::model(Family f) const {
  auto it = models_.find(f);
  return it == models_.end() ? nullptr : it->second.get();
}

Json VotingEnsemble::to_json() const {
  Json j;
  j["family"] = "VoR";
  j["dims"] = dims_;
  j["weights"] = weights_;
  Json members = Json::object();
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (weights_[i] == 0.0) continue;
    const Family f = *family_at(i);
    members[std::string(to_string(f))] = models_.at(f)->to_json();
  }
  j["members"] = std::move(members);
  return j;
}

VotingEnsemble VotingEnsemble::from_json(const Json& j) {
  try {
    VotingWeights w = j.at("weights").get<VotingWeights>();
    std::map<Family, std::unique_ptr<Regressor>> models;
    for (const auto& [name, body] : j.at("members").items()) {
      models[parse_family(name)] = regressor_from_json(body);
    }
    return VotingEnsemble(w, std::move(models));
  } catch (const nlohmann::json::exception& e) {
    throw SchemaMismatch(std::string("malformed ensemble JSON: ") + e.what());
  }
}

}  // namespace testlab::learn
