/* C interface of the testlab library.
 *
 * Every fallible call returns a testlab_status. On failure the message is
 * available from testlab_last_error() on the same thread until the next
 * call on that thread. Strings returned through `char**` are owned by the
 * caller and released with testlab_string_free. Handles are released with
 * their matching *_free function; passing NULL to a free function is a
 * no-op. Handles are immutable after creation and may be shared between
 * threads.
 */
#ifndef TESTLAB_TESTLAB_H
#define TESTLAB_TESTLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TESTLAB_API __declspec(dllexport)
#else
#define TESTLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum testlab_status {
  TESTLAB_OK = 0,
  TESTLAB_ERR_IO = 1,
  TESTLAB_ERR_LEX = 2,
  TESTLAB_ERR_PARSE = 3,
  TESTLAB_ERR_SCHEMA = 4,
  TESTLAB_ERR_DATA = 5,
  TESTLAB_ERR_INVALID_ARGUMENT = 6,
  TESTLAB_ERR_NOT_FOUND = 7,
  TESTLAB_ERR_NUMERIC = 8,
  TESTLAB_ERR_INTERNAL = 9
} testlab_status;

TESTLAB_API const char* testlab_version(void);
TESTLAB_API const char* testlab_last_error(void);
TESTLAB_API const char* testlab_status_name(testlab_status status);
TESTLAB_API void testlab_string_free(char* s);

/* ---- metric manifest ---- */

typedef struct testlab_manifest testlab_manifest;

/* `path` NULL selects the built-in manifest. */
TESTLAB_API testlab_status testlab_manifest_open(const char* path, testlab_manifest** out);
TESTLAB_API void testlab_manifest_free(testlab_manifest* manifest);
TESTLAB_API size_t testlab_manifest_size(const testlab_manifest* manifest);
TESTLAB_API testlab_status testlab_manifest_hash(const testlab_manifest* manifest, char** out);
TESTLAB_API testlab_status testlab_manifest_write(const testlab_manifest* manifest,
                                                  const char* path);

/* ---- projects ---- */

typedef struct testlab_project testlab_project;

/* Parses every .java file below `dir` and computes all class metrics. */
TESTLAB_API testlab_status testlab_project_open(const char* dir, testlab_project** out);
TESTLAB_API void testlab_project_free(testlab_project* project);
TESTLAB_API size_t testlab_project_class_count(const testlab_project* project);
/* Borrowed pointer, valid while the project lives; NULL when out of range. */
TESTLAB_API const char* testlab_project_class_id(const testlab_project* project, size_t index);

/* Feature table (class_id + manifest columns) as CSV. */
TESTLAB_API testlab_status testlab_extract(const testlab_project* project,
                                           const testlab_manifest* manifest,
                                           const char* out_csv);

/* Per project and per package quality attributes as CSV. */
TESTLAB_API testlab_status testlab_quality(const testlab_project* project,
                                           const char* project_name, const char* out_csv);

/* ---- labels ---- */

/* `rename` is NULL or a list of "from=to" column renames of length n_rename. */
TESTLAB_API testlab_status testlab_label(const char* coverage_csv, const char* const* rename,
                                         size_t n_rename, const char* out_csv,
                                         size_t* n_classes);

/* Synthetic coverage (runs per class) for a feature table. */
TESTLAB_API testlab_status testlab_synthetic_coverage(const char* features_csv,
                                                      const testlab_manifest* manifest,
                                                      uint64_t seed, size_t runs,
                                                      const char* out_csv);

/* ---- dataset preparation ---- */

typedef struct testlab_prepare_options {
  double train_fraction;
  uint64_t seed;
  size_t lof_k;
  double lof_threshold; /* +inf disables outlier removal */
  const char* variant;  /* "DS1" .. "DS5" */
} testlab_prepare_options;

TESTLAB_API testlab_prepare_options testlab_prepare_defaults(void);

typedef struct testlab_prepare_summary {
  size_t train_rows;
  size_t test_rows;
  size_t features;
  size_t trivial;
  size_t outliers;
  size_t unmatched_features;
  size_t unmatched_labels;
} testlab_prepare_summary;

/* Writes dataset.csv, test.csv, scaler.json and drop_report.txt to out_dir. */
TESTLAB_API testlab_status testlab_prepare(const char* features_csv, const char* labels_csv,
                                           const testlab_manifest* manifest,
                                           const testlab_prepare_options* options,
                                           const char* out_dir,
                                           testlab_prepare_summary* summary);

/* ---- models ---- */

typedef struct testlab_model testlab_model;

/* Trains on `data_dir`/dataset.csv with `data_dir`/scaler.json. `config_json`
 * is NULL (default hyperparameters) or a grid configuration file. */
TESTLAB_API testlab_status testlab_train(const char* data_dir, const char* config_json,
                                         uint64_t seed, const char* out_model);

TESTLAB_API testlab_status testlab_model_open(const char* path, testlab_model** out);
TESTLAB_API void testlab_model_free(testlab_model* model);
TESTLAB_API size_t testlab_model_feature_count(const testlab_model* model);
TESTLAB_API const char* testlab_model_feature(const testlab_model* model, size_t index);
TESTLAB_API testlab_status testlab_model_manifest_hash(const testlab_model* model, char** out);
/* Named raw metric values; the model picks, scales and predicts. */
TESTLAB_API testlab_status testlab_model_predict_raw(const testlab_model* model,
                                                     const char* const* names,
                                                     const double* values, size_t n,
                                                     double* out);

typedef struct testlab_scores {
  double mae;
  double mse;
  double rmse;
  double mdae;
  double r2; /* NaN when r2_defined is 0 */
  int r2_defined;
  size_t n;
} testlab_scores;

/* Scores on an already prepared (scaled) dataset such as test.csv. */
TESTLAB_API testlab_status testlab_evaluate(const testlab_model* model, const char* dataset_csv,
                                            testlab_scores* out);

/* Per-row squared errors of a model on a prepared dataset. The caller
 * frees the array with testlab_doubles_free. */
TESTLAB_API testlab_status testlab_squared_errors(const testlab_model* model,
                                                  const char* dataset_csv, double** errors,
                                                  size_t* n);
TESTLAB_API void testlab_doubles_free(double* values);

typedef struct testlab_welch {
  double t;
  double df;
  double p;
} testlab_welch;

TESTLAB_API testlab_status testlab_welch_test(const double* a, size_t na, const double* b,
                                              size_t nb, testlab_welch* out);

/* ---- inference ---- */

typedef struct testlab_estimate {
  double testability;
  double raw;
  int trivial;
} testlab_estimate;

TESTLAB_API testlab_status testlab_estimate_class(const testlab_project* project,
                                                  const testlab_manifest* manifest,
                                                  const testlab_model* model,
                                                  const char* class_id, testlab_estimate* out);

/* class_id,testability for every class of the project. */
TESTLAB_API testlab_status testlab_estimate_all(const testlab_project* project,
                                                const testlab_manifest* manifest,
                                                const testlab_model* model, const char* out_csv);

/* ---- analysis ---- */

/* Permutation importance on a prepared dataset plus the report files.
 * `rows` receives the number of ranked features written. */
TESTLAB_API testlab_status testlab_importance(const testlab_model* model,
                                              const char* dataset_csv, size_t repeats,
                                              size_t top, uint64_t seed, const char* out_dir,
                                              size_t* rows);

TESTLAB_API testlab_status testlab_pearson(const double* x, const double* y, size_t n,
                                           double* r, double* p);

#ifdef __cplusplus
}
#endif

#endif /* TESTLAB_TESTLAB_H */
