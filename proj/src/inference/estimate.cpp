#include "testlab/inference/estimate.hpp"

#include <cmath>

#include "testlab/common/error.hpp"
#include "testlab/common/parallel.hpp"
#include "testlab/common/text.hpp"
#include "testlab/data/dataset.hpp"
#include "testlab/metrics/extractor.hpp"
#include "testlab/metrics/project.hpp"

namespace testlab::inference {

double clamp_unit(double value) {
  if (std::isnan(value)) throw NumericError("predictor returned NaN");
  if (value < 0.0) return 0.0;
  if (value > 1.0) return 1.0;
  return value;
}

namespace {

void check_manifest(const metrics::Manifest& manifest, const Predictor& predictor) {
  const auto expected = manifest.hash();
  const auto actual = predictor.manifest_hash();
  if (actual != expected) {
    throw ManifestMismatch("model was trained against metric manifest " + actual +
                           " but the extractor uses " + expected);
  }
}

Estimate estimate_index(std::size_t cls, const metrics::ProjectAnalysis& analysis,
                        const metrics::Manifest& manifest, const Predictor& predictor) {
  Estimate e;
  e.class_id = analysis.index().cls(cls).id;
  const auto& m = analysis.cls(cls).metrics;
  const auto get = [&](std::string_view name) {
    auto it = m.find(name);
    if (it == m.end()) throw MissingMetric("class metric " + std::string(name) + " missing");
    return it->second;
  };
  if (data::is_trivial_class(get("CSLOC"), get("CSNOMNAMM"), get("CSNOIA"), get("CSNOSA"))) {
    e.trivial = true;
    e.testability = 1.0;
    e.raw = 1.0;
    return e;
  }
  const auto features = metrics::class_feature_vector(analysis, cls, manifest);
  e.raw = predictor.predict(features.names, features.values);
  e.testability = clamp_unit(e.raw);
  return e;
}

}  // namespace

Estimate estimate_testability(std::string_view class_id, const metrics::ProjectAnalysis& analysis,
                              const metrics::Manifest& manifest, const Predictor& predictor) {
  check_manifest(manifest, predictor);
  const auto cls = analysis.index().find(class_id);
  if (!cls) throw ClassNotFound("class '" + std::string(class_id) + "' is not in the project");
  return estimate_index(*cls, analysis, manifest, predictor);
}

std::vector<Estimate> estimate_all(const metrics::ProjectAnalysis& analysis,
                                   const metrics::Manifest& manifest, const Predictor& predictor) {
  check_manifest(manifest, predictor);
  std::vector<Estimate> out(analysis.classes().size());
  parallel_for(out.size(),
               [&](std::size_t i) { out[i] = estimate_index(i, analysis, manifest, predictor); });
  return out;
}

Estimate estimate_testability(std::string_view class_id, const std::filesystem::path& project,
                              const std::filesystem::path& model_file,
                              const metrics::Manifest& manifest) {
  const auto model = learn::Model::load(model_file);
  const ModelPredictor predictor(model);
  check_manifest(manifest, predictor);
  const auto index = metrics::load_project(project);
  const metrics::ProjectAnalysis analysis(index);
  return estimate_testability(class_id, analysis, manifest, predictor);
}

CsvTable estimates_table(std::span<const Estimate> estimates) {
  CsvTable t;
  t.header = {"class_id", "testability"};
  for (const auto& e : estimates) t.rows.push_back({e.class_id, format_double(e.testability)});
  return t;
}

}  // namespace testlab::inference
