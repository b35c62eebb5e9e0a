#include "testlab/testlab.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <limits>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "testlab/analysis/importance.hpp"
#include "testlab/common/csv.hpp"
#include "testlab/common/error.hpp"
#include "testlab/common/text.hpp"
#include "testlab/data/dataset.hpp"
#include "testlab/inference/estimate.hpp"
#include "testlab/label/synthetic.hpp"
#include "testlab/label/testability.hpp"
#include "testlab/learn/evaluation.hpp"
#include "testlab/learn/model.hpp"
#include "testlab/metrics/extractor.hpp"
#include "testlab/metrics/project.hpp"
#include "testlab/quality/quality.hpp"

using namespace testlab;

struct testlab_manifest {
  metrics::Manifest manifest;
};

struct testlab_project {
  explicit testlab_project(metrics::ProjectIndex idx)
      : index(std::move(idx)), analysis(index) {}
  metrics::ProjectIndex index;
  metrics::ProjectAnalysis analysis;
};

struct testlab_model {
  explicit testlab_model(learn::Model m) : model(std::move(m)) {}
  learn::Model model;
};

namespace {

thread_local std::string g_last_error;

testlab_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Io: return TESTLAB_ERR_IO;
    case ErrorKind::Lex: return TESTLAB_ERR_LEX;
    case ErrorKind::Parse: return TESTLAB_ERR_PARSE;
    case ErrorKind::Schema: return TESTLAB_ERR_SCHEMA;
    case ErrorKind::Data: return TESTLAB_ERR_DATA;
    case ErrorKind::InvalidArgument: return TESTLAB_ERR_INVALID_ARGUMENT;
    case ErrorKind::NotFound: return TESTLAB_ERR_NOT_FOUND;
    case ErrorKind::Numeric: return TESTLAB_ERR_NUMERIC;
  }
  return TESTLAB_ERR_INTERNAL;
}

template <typename F>
testlab_status guarded(F&& body) {
  g_last_error.clear();
  try {
    body();
    return TESTLAB_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    g_last_error = e.what();
    return TESTLAB_ERR_IO;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return TESTLAB_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = std::string("internal error: ") + e.what();
    return TESTLAB_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "internal error";
    return TESTLAB_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw InvalidArgument(std::string(what) + " must not be NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

const metrics::Manifest& manifest_of(const testlab_manifest* m) {
  return m ? m->manifest : metrics::default_manifest();
}

data::Dataset load_for_model(const learn::Model& model, const char* dataset_csv) {
  require(dataset_csv, "dataset path");
  const auto ds = data::Dataset::load(dataset_csv);
  return ds.select(model.features());
}

}  // namespace

extern "C" {

const char* testlab_version(void) { return "1.0.0"; }

const char* testlab_last_error(void) { return g_last_error.c_str(); }

const char* testlab_status_name(testlab_status status) {
  switch (status) {
    case TESTLAB_OK: return "ok";
    case TESTLAB_ERR_IO: return "io error";
    case TESTLAB_ERR_LEX: return "lexical error";
    case TESTLAB_ERR_PARSE: return "parse error";
    case TESTLAB_ERR_SCHEMA: return "schema error";
    case TESTLAB_ERR_DATA: return "data error";
    case TESTLAB_ERR_INVALID_ARGUMENT: return "invalid argument";
    case TESTLAB_ERR_NOT_FOUND: return "not found";
    case TESTLAB_ERR_NUMERIC: return "numeric error";
    case TESTLAB_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void testlab_string_free(char* s) { std::free(s); }

void testlab_doubles_free(double* values) { std::free(values); }

testlab_status testlab_manifest_open(const char* path, testlab_manifest** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    auto m = std::make_unique<testlab_manifest>();
    m->manifest = path ? metrics::Manifest::load(path) : metrics::default_manifest();
    *out = m.release();
  });
}

void testlab_manifest_free(testlab_manifest* manifest) { delete manifest; }

size_t testlab_manifest_size(const testlab_manifest* manifest) {
  return manifest_of(manifest).size();
}

testlab_status testlab_manifest_hash(const testlab_manifest* manifest, char** out) {
  return guarded([&] {
    require(out, "out");
    *out = dup_string(manifest_of(manifest).hash());
  });
}

testlab_status testlab_manifest_write(const testlab_manifest* manifest, const char* path) {
  return guarded([&] {
    require(path, "path");
    manifest_of(manifest).save(path);
  });
}

testlab_status testlab_project_open(const char* dir, testlab_project** out) {
  return guarded([&] {
    require(dir, "project directory");
    require(out, "out");
    *out = nullptr;
    if (!std::filesystem::is_directory(dir)) {
      throw IoError(std::string("project directory '") + dir + "' does not exist");
    }
    *out = new testlab_project(metrics::load_project(dir));
  });
}

void testlab_project_free(testlab_project* project) { delete project; }

size_t testlab_project_class_count(const testlab_project* project) {
  return project ? project->index.classes().size() : 0;
}

const char* testlab_project_class_id(const testlab_project* project, size_t index) {
  if (!project || index >= project->index.classes().size()) return nullptr;
  return project->index.cls(index).id.c_str();
}

testlab_status testlab_extract(const testlab_project* project, const testlab_manifest* manifest,
                               const char* out_csv) {
  return guarded([&] {
    require(project, "project");
    require(out_csv, "output path");
    const auto table = metrics::extract_features(project->analysis, manifest_of(manifest));
    write_csv(out_csv, table.to_csv());
  });
}

testlab_status testlab_quality(const testlab_project* project, const char* project_name,
                               const char* out_csv) {
  return guarded([&] {
    require(project, "project");
    require(out_csv, "output path");
    const auto rows = quality::assess(project->analysis, project_name ? project_name : "project");
    write_csv(out_csv, quality::quality_table(rows));
  });
}

testlab_status testlab_label(const char* coverage_csv, const char* const* rename, size_t n_rename,
                             const char* out_csv, size_t* n_classes) {
  return guarded([&] {
    require(coverage_csv, "coverage path");
    require(out_csv, "output path");
    std::map<std::string, std::string> map;
    for (size_t i = 0; i < n_rename; ++i) {
      require(rename, "rename list");
      require(rename[i], "rename entry");
      const std::string entry = rename[i];
      const auto eq = entry.find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == entry.size()) {
        throw InvalidArgument("column mapping '" + entry + "' is not of the form from=to");
      }
      map[entry.substr(0, eq)] = entry.substr(eq + 1);
    }
    const auto records = label::read_coverage(read_csv(coverage_csv), map);
    std::vector<label::TestabilityScore> scores;
    scores.reserve(records.size());
    for (const auto& r : records) scores.push_back(label::testability(r));
    write_csv(out_csv, label::labels_table(scores));
    if (n_classes) *n_classes = scores.size();
  });
}

testlab_status testlab_synthetic_coverage(const char* features_csv,
                                          const testlab_manifest* manifest, uint64_t seed,
                                          size_t runs, const char* out_csv) {
  return guarded([&] {
    require(features_csv, "features path");
    require(out_csv, "output path");
    if (runs == 0) throw InvalidArgument("runs must be at least 1");
    const auto table =
        metrics::FeatureTable::from_csv(read_csv(features_csv), manifest_of(manifest));
    write_csv(out_csv, label::synthetic_coverage(table, seed, runs));
  });
}

testlab_prepare_options testlab_prepare_defaults(void) {
  const data::PrepareOptions d;
  return {d.train_fraction, d.seed, d.lof_k, d.lof_threshold, "DS1"};
}

testlab_status testlab_prepare(const char* features_csv, const char* labels_csv,
                               const testlab_manifest* manifest,
                               const testlab_prepare_options* options, const char* out_dir,
                               testlab_prepare_summary* summary) {
  return guarded([&] {
    require(features_csv, "features path");
    require(labels_csv, "labels path");
    require(out_dir, "output directory");
    const auto& mf = manifest_of(manifest);
    data::PrepareOptions opts;
    if (options) {
      opts.train_fraction = options->train_fraction;
      opts.seed = options->seed;
      opts.lof_k = options->lof_k;
      opts.lof_threshold = options->lof_threshold;
      if (options->variant) opts.variant = data::parse_variant(options->variant);
    }
    const auto features = metrics::FeatureTable::from_csv(read_csv(features_csv), mf);
    const auto labels = label::read_labels(read_csv(labels_csv));
    const auto prepared = data::prepare(features, labels, mf, opts);
    data::write_prepared(out_dir, prepared);
    if (summary) {
      summary->train_rows = prepared.train.size();
      summary->test_rows = prepared.test.size();
      summary->features = prepared.train.dims();
      summary->trivial = prepared.trivial.size();
      summary->outliers = prepared.outliers.size();
      summary->unmatched_features = prepared.unmatched_features.size();
      summary->unmatched_labels = prepared.unmatched_labels.size();
    }
  });
}

testlab_status testlab_train(const char* data_dir, const char* config_json, uint64_t seed,
                             const char* out_model) {
  return guarded([&] {
    require(data_dir, "data directory");
    require(out_model, "output path");
    const std::filesystem::path dir(data_dir);
    const auto train = data::Dataset::load(dir / "dataset.csv");
    const auto scaler = data::scaler_from_json(read_file(dir / "scaler.json"));
    const auto config =
        config_json ? learn::TrainConfig::load(config_json) : learn::TrainConfig{};
    const auto model = learn::train_model(train, scaler, config, seed);
    model.save(out_model);
  });
}

testlab_status testlab_model_open(const char* path, testlab_model** out) {
  return guarded([&] {
    require(path, "model path");
    require(out, "out");
    *out = nullptr;
    *out = new testlab_model(learn::Model::load(path));
  });
}

void testlab_model_free(testlab_model* model) { delete model; }

size_t testlab_model_feature_count(const testlab_model* model) {
  return model ? model->model.features().size() : 0;
}

const char* testlab_model_feature(const testlab_model* model, size_t index) {
  if (!model || index >= model->model.features().size()) return nullptr;
  return model->model.features()[index].c_str();
}

testlab_status testlab_model_manifest_hash(const testlab_model* model, char** out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    *out = dup_string(model->model.scaler().manifest_hash);
  });
}

testlab_status testlab_model_predict_raw(const testlab_model* model, const char* const* names,
                                         const double* values, size_t n, double* out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    if (n > 0) {
      require(names, "names");
      require(values, "values");
    }
    std::vector<std::string> ns;
    ns.reserve(n);
    for (size_t i = 0; i < n; ++i) {
      require(names[i], "feature name");
      ns.emplace_back(names[i]);
    }
    *out = model->model.predict_raw(ns, std::span<const double>(values, n));
  });
}

testlab_status testlab_evaluate(const testlab_model* model, const char* dataset_csv,
                                testlab_scores* out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    const auto ds = load_for_model(model->model, dataset_csv);
    const auto s = learn::Samples::from_dataset(ds);
    const auto scores = learn::evaluate(model->model.ensemble().predict_all(s), s.y);
    *out = {scores.mae, scores.mse, scores.rmse, scores.mdae, scores.r2,
            scores.r2_defined ? 1 : 0, s.n};
  });
}

testlab_status testlab_squared_errors(const testlab_model* model, const char* dataset_csv,
                                      double** errors, size_t* n) {
  return guarded([&] {
    require(model, "model");
    require(errors, "errors");
    require(n, "n");
    *errors = nullptr;
    *n = 0;
    const auto ds = load_for_model(model->model, dataset_csv);
    const auto s = learn::Samples::from_dataset(ds);
    const auto p = model->model.ensemble().predict_all(s);
    auto* buf = static_cast<double*>(std::malloc(std::max<size_t>(1, s.n) * sizeof(double)));
    if (buf == nullptr) throw std::bad_alloc();
    for (size_t i = 0; i < s.n; ++i) buf[i] = (p[i] - s.y[i]) * (p[i] - s.y[i]);
    *errors = buf;
    *n = s.n;
  });
}

testlab_status testlab_welch_test(const double* a, size_t na, const double* b, size_t nb,
                                  testlab_welch* out) {
  return guarded([&] {
    require(a, "a");
    require(b, "b");
    require(out, "out");
    const auto r = learn::welch_t_test({a, na}, {b, nb});
    *out = {r.t, r.df, r.p};
  });
}

testlab_status testlab_estimate_class(const testlab_project* project,
                                      const testlab_manifest* manifest, const testlab_model* model,
                                      const char* class_id, testlab_estimate* out) {
  return guarded([&] {
    require(project, "project");
    require(model, "model");
    require(class_id, "class id");
    require(out, "out");
    const inference::ModelPredictor predictor(model->model);
    const auto e = inference::estimate_testability(class_id, project->analysis,
                                                   manifest_of(manifest), predictor);
    *out = {e.testability, e.raw, e.trivial ? 1 : 0};
  });
}

testlab_status testlab_estimate_all(const testlab_project* project,
                                    const testlab_manifest* manifest, const testlab_model* model,
                                    const char* out_csv) {
  return guarded([&] {
    require(project, "project");
    require(model, "model");
    require(out_csv, "output path");
    const inference::ModelPredictor predictor(model->model);
    const auto all = inference::estimate_all(project->analysis, manifest_of(manifest), predictor);
    write_csv(out_csv, inference::estimates_table(all));
  });
}

testlab_status testlab_importance(const testlab_model* model, const char* dataset_csv,
                                  size_t repeats, size_t top, uint64_t seed, const char* out_dir,
                                  size_t* rows) {
  return guarded([&] {
    require(model, "model");
    require(out_dir, "output directory");
    if (repeats == 0) throw InvalidArgument("repeats must be at least 1");
    const auto ds = load_for_model(model->model, dataset_csv);
    const auto s = learn::Samples::from_dataset(ds);
    analysis::ReportInput in;
    in.names = ds.feature_names;
    in.top = top;
    in.targets = ds.targets;
    for (size_t j = 0; j < ds.dims(); ++j) in.columns.push_back(ds.column(j));
    if (ds.dims() > 0) {
      in.importance = analysis::permutation_importance(model->model.ensemble(), s, repeats, seed);
    }
    const auto written = analysis::write_importance_report(out_dir, in);
    if (rows) *rows = written;
  });
}

testlab_status testlab_pearson(const double* x, const double* y, size_t n, double* r, double* p) {
  return guarded([&] {
    require(x, "x");
    require(y, "y");
    const auto c = analysis::pearson({x, n}, {y, n});
    if (r) *r = c.r;
    if (p) *p = c.p;
  });
}

}  // extern "C"
