#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string_view>

#include "testlab/learn/regressor.hpp"

namespace testlab::learn {

/// Weight positions: Linear, SVMR, DTR, HGBR, RFR, MLPR.
using VotingWeights = std::array<double, 6>;
inline constexpr std::array<std::string_view, 6> kVotingPositions = {"Linear", "SVMR", "DTR",
                                                                     "HGBR",   "RFR",  "MLPR"};
inline constexpr VotingWeights kBestVotingWeights = {0, 0, 0, 2.0 / 6, 3.0 / 6, 1.0 / 6};

/// Family at a weight position; positions 0 and 1 have no implementation.
std::optional<Family> family_at(std::size_t position);

/// Weights must be finite, non-negative, sum to 1 (within 1e-9) and leave
/// the Linear and SVMR positions at 0. Throws InvalidParams.
void validate_weights(const VotingWeights& w);

/// sum(w_i p_i) / sum(w_i) over the positions with non-zero weight.
double weighted_vote(const VotingWeights& w, const std::array<double, 6>& predictions);

/// Parses [w0..w5] where entries are numbers or fraction strings "a/b".
VotingWeights parse_weights(const Json& j);

class VotingEnsemble final : public Regressor {
 public:
  /// Needs a fitted model for every position with non-zero weight.
  VotingEnsemble(VotingWeights weights, std::map<Family, std::unique_ptr<Regressor>> models);

  Family family() const override { return Family::VoR; }
  std::size_t dims() const override { return dims_; }
  double predict(std::span<const double> x) const override;
  Json to_json() const override;
  static VotingEnsemble from_json(const Json& j);

  const VotingWeights& weights() const { return weights_; }
  const Regressor* model(Family f) const;

 private:
  VotingWeights weights_;
  std::map<Family, std::unique_ptr<Regressor>> models_;
  std::size_t dims_ = 0;
};

}  // namespace testlab::learn
