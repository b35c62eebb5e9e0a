#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace testlab::data {
struct Dataset;
}

namespace testlab::learn {

using Json = nlohmann::ordered_json;

/// Dense training data, row-major.
struct Samples {
  std::size_t n = 0;
  std::size_t d = 0;
  std::vector<double> x;
  std::vector<double> y;

  double at(std::size_t i, std::size_t j) const { return x[i * d + j]; }
  std::span<const double> row(std::size_t i) const { return {x.data() + i * d, d}; }

  Samples subset(std::span<const std::size_t> rows) const;
  static Samples from_rows(const std::vector<std::vector<double>>& rows,
                           const std::vector<double>& targets);
  static Samples from_dataset(const data::Dataset& ds);
};

/// VoR is the voting ensemble; it is never fitted through `fit_family`.
enum class Family { DTR, HGBR, RFR, MLPR, VoR };

std::string_view to_string(Family f);
Family parse_family(std::string_view text);  // InvalidParams

class Regressor {
 public:
  virtual ~Regressor() = default;
  virtual Family family() const = 0;
  virtual std::size_t dims() const = 0;
  /// Thread-safe. Throws DimensionMismatch when the length is wrong.
  virtual double predict(std::span<const double> x) const = 0;
  virtual Json to_json() const = 0;

  std::vector<double> predict_all(const Samples& s) const;

 protected:
  void check_dims(std::span<const double> x) const;
};

/// Fits a model of `family` with hyperparameters given as a JSON object
/// (missing keys take the defaults). `grid_mode` rejects values outside
/// the searched ranges.
std::unique_ptr<Regressor> fit_family(Family family, const Json& params, const Samples& train,
                                      std::uint64_t seed, bool grid_mode = false);

/// Default hyperparameters of a family as JSON.
Json default_params(Family family);

/// Throws InvalidParams for unknown keys, wrong types or out-of-range values.
void validate_params(Family family, const Json& params, bool grid_mode);

std::unique_ptr<Regressor> regressor_from_json(const Json& j);

}  // namespace testlab::learn
