#include "testlab/metrics/extractor.hpp"

#include <cmath>

#include "testlab/common/error.hpp"
#include "testlab/common/text.hpp"

namespace testlab::metrics {

MetricMap lexical_feature_map(const LexicalMetrics& lexical) {
  MetricMap out;
  const auto values = lexical.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    out["CS" + std::string(LexicalMetrics::kNames[i])] = static_cast<double>(values[i]);
  }
  return out;
}

FeatureVector assemble_feature_vector(const MetricMap& class_metrics, const MetricMap& context,
                                      const LexicalMetrics& lexical, const Manifest& manifest) {
  const MetricMap lex = lexical_feature_map(lexical);
  FeatureVector fv;
  fv.names.reserve(manifest.size());
  fv.values.reserve(manifest.size());
  for (const auto& spec : manifest.metrics()) {
    const MetricMap* block = nullptr;
    switch (spec.block) {
      case MetricBlock::Class:
        block = &class_metrics;
        break;
      case MetricBlock::Context:
        block = &context;
        break;
      case MetricBlock::Lexical:
        block = &lex;
        break;
    }
    auto it = block->find(spec.name);
    if (it == block->end()) {
      throw SchemaMismatch("metric '" + spec.name + "' is not produced by the extractor (" +
                           std::string(to_string(spec.block)) + " block)");
    }
    if (!std::isfinite(it->second)) {
      throw SchemaMismatch("metric '" + spec.name + "' is not finite");
    }
    fv.names.push_back(spec.name);
    fv.values.push_back(it->second);
  }
  return fv;
}

CsvTable FeatureTable::to_csv() const {
  CsvTable t;
  t.header.push_back("class_id");
  t.header.insert(t.header.end(), names.begin(), names.end());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::vector<std::string> row;
    row.reserve(names.size() + 1);
    row.push_back(class_ids[r]);
    for (double v : rows[r]) row.push_back(format_double(v));
    t.rows.push_back(std::move(row));
  }
  return t;
}

FeatureTable FeatureTable::from_csv(const CsvTable& csv, const Manifest& manifest) {
  const auto names = manifest.names();
  if (csv.header.empty() || csv.header[0] != "class_id") {
    throw SchemaMismatch("features file must start with a 'class_id' column");
  }
  if (csv.header.size() != names.size() + 1 ||
      !std::equal(names.begin(), names.end(), csv.header.begin() + 1)) {
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (i + 1 >= csv.header.size() || csv.header[i + 1] != names[i]) {
        throw SchemaMismatch("features header does not match the manifest at column " +
                             std::to_string(i + 2) + " (expected '" + names[i] + "')");
      }
    }
    throw SchemaMismatch("features header has " + std::to_string(csv.header.size() - 1) +
                         " metrics, manifest lists " + std::to_string(names.size()));
  }
  FeatureTable t;
  t.names = names;
  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    const auto& row = csv.rows[r];
    t.class_ids.push_back(row[0]);
    std::vector<double> values;
    values.reserve(names.size());
    for (std::size_t c = 1; c < row.size(); ++c) {
      try {
        values.push_back(parse_double(row[c]));
      } catch (const DataError&) {
        throw DataError("features row " + std::to_string(r + 1) + ", column '" + csv.header[c] +
                        "': not a number ('" + row[c] + "')");
      }
      if (!std::isfinite(values.back())) {
        throw DataError("features row " + std::to_string(r + 1) + ", column '" + csv.header[c] +
                        "': value is not finite");
      }
    }
    t.rows.push_back(std::move(values));
  }
  return t;
}

FeatureVector class_feature_vector(const ProjectAnalysis& analysis, std::size_t cls,
                                   const Manifest& manifest) {
  const auto& info = analysis.index().cls(cls);
  return assemble_feature_vector(analysis.cls(cls).metrics, analysis.package_context(info.package),
                                 analysis.lexical(info.file), manifest);
}

FeatureTable extract_features(const ProjectAnalysis& analysis, const Manifest& manifest) {
  FeatureTable t;
  t.names = manifest.names();
  const auto& classes = analysis.index().classes();
  for (std::size_t i = 0; i < classes.size(); ++i) {
    t.class_ids.push_back(classes[i].id);
    t.rows.push_back(class_feature_vector(analysis, i, manifest).values);
  }
  return t;
}

FeatureTable extract_project(const std::filesystem::path& project, const Manifest& manifest) {
  const ProjectIndex index = load_project(project);
  const ProjectAnalysis analysis(index);
  return extract_features(analysis, manifest);
}

}  // namespace testlab::metrics
