#include "testlab/label/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "testlab/common/error.hpp"
#include "testlab/common/stats.hpp"
#include "testlab/common/text.hpp"

namespace testlab::label {

namespace {

std::size_t feature_column(const metrics::FeatureTable& t, std::string_view name) {
  auto it = std::find(t.names.begin(), t.names.end(), name);
  if (it == t.names.end()) throw MissingMetric("feature table lacks " + std::string(name));
  return static_cast<std::size_t>(it - t.names.begin());
}

double unit(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

CsvTable synthetic_coverage(const metrics::FeatureTable& features, std::uint64_t seed,
                            std::size_t runs) {
  const std::size_t cc = feature_column(features, "CC_Sum_All");
  const std::size_t cbo = feature_column(features, "CSCBO");
  const std::size_t loc = feature_column(features, "CSLOC");
  const std::size_t nom = feature_column(features, "CSNOM");

  CsvTable t;
  t.header = {"class_id", "run_id",   "statement", "branch",
              "mutation", "suite_size", "nom",     "gen_time_minutes"};
  for (std::size_t i = 0; i < features.rows.size(); ++i) {
    const auto& row = features.rows[i];
    const double difficulty = 0.03 * row[cc] + 0.05 * row[cbo] + 0.002 * row[loc];
    const double reach = std::exp(-difficulty);
    const double methods = std::max(1.0, row[nom]);
    std::mt19937_64 rng(stats::mix_seed(seed, i));
    std::normal_distribution<double> noise(0.0, 0.04);
    std::uniform_real_distribution<double> minutes(0.5, 6.0);
    for (std::size_t r = 0; r < runs; ++r) {
      const double statement = unit(reach + noise(rng));
      const double branch = unit(std::pow(reach, 1.4) + noise(rng));
      const double mutation = unit(0.85 * reach + noise(rng));
      const double suite = std::max(1.0, std::round(1.0 + 0.8 * methods + 10.0 * noise(rng)));
      t.rows.push_back({features.class_ids[i], std::to_string(r + 1), format_double(statement),
                        format_double(branch), format_double(mutation), format_double(suite),
                        format_double(methods), format_double(minutes(rng))});
    }
  }
  return t;
}

}  // namespace testlab::label
