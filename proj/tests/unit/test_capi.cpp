#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "testlab/testlab.h"

namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("testlab_capi_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(CApi, StatusAndLastError) {
  testlab_project* p = nullptr;
  EXPECT_EQ(testlab_project_open("/definitely/not/here", &p), TESTLAB_ERR_IO);
  EXPECT_EQ(p, nullptr);
  EXPECT_NE(std::string(testlab_last_error()).find("/definitely/not/here"), std::string::npos);
  EXPECT_EQ(testlab_project_open(nullptr, &p), TESTLAB_ERR_INVALID_ARGUMENT);
  EXPECT_STREQ(testlab_status_name(TESTLAB_ERR_DATA), "data error");

  testlab_manifest* m = nullptr;
  ASSERT_EQ(testlab_manifest_open(nullptr, &m), TESTLAB_OK);
  EXPECT_STREQ(testlab_last_error(), "");
  EXPECT_EQ(testlab_manifest_size(m), 199u);
  testlab_manifest_free(m);
  testlab_manifest_free(nullptr);
  testlab_project_free(nullptr);
  testlab_model_free(nullptr);
}

TEST(CApi, LastErrorIsPerThread) {
  testlab_project* p = nullptr;
  ASSERT_NE(testlab_project_open("/nope", &p), TESTLAB_OK);
  std::string other;
  std::thread t([&] { other = testlab_last_error(); });
  t.join();
  EXPECT_EQ(other, "");
  EXPECT_NE(std::string(testlab_last_error()), "");
}

TEST(CApi, CoverageValidationNamesRowAndColumn) {
  const auto dir = fresh_dir("label");
  size_t n = 0;
  EXPECT_EQ(testlab_label(TESTLAB_DEMO_FIXTURES "/cov_invalid.csv", nullptr, 0,
                          (dir / "l.csv").c_str(), &n),
            TESTLAB_ERR_DATA);
  const std::string err = testlab_last_error();
  EXPECT_NE(err.find("row 2"), std::string::npos);
  EXPECT_NE(err.find("'line'"), std::string::npos);

  ASSERT_EQ(testlab_label(TESTLAB_DEMO_FIXTURES "/cov.csv", nullptr, 0, (dir / "l.csv").c_str(), &n),
            TESTLAB_OK);
  EXPECT_EQ(n, 3u);

  const char* bad_map[] = {"line"};
  EXPECT_EQ(testlab_label(TESTLAB_DEMO_FIXTURES "/cov.csv", bad_map, 1, (dir / "l.csv").c_str(), &n),
            TESTLAB_ERR_INVALID_ARGUMENT);
}

TEST(CApi, PearsonAndWelch) {
  const double x[] = {1, 2, 3, 4}, y[] = {1, 3, 2, 4}, flat[] = {1, 1, 1, 1};
  double r = 0, p = 0;
  ASSERT_EQ(testlab_pearson(x, y, 4, &r, &p), TESTLAB_OK);
  EXPECT_NEAR(r, 0.8, 1e-15);
  EXPECT_EQ(testlab_pearson(x, flat, 4, &r, &p), TESTLAB_ERR_NUMERIC);
  testlab_welch w{};
  ASSERT_EQ(testlab_welch_test(x, 4, x, 4, &w), TESTLAB_OK);
  EXPECT_NEAR(w.p, 1.0, 1e-12);
  EXPECT_EQ(testlab_welch_test(flat, 4, flat, 4, &w), TESTLAB_ERR_NUMERIC);
}

TEST(CApi, EndToEndPipeline) {
  const auto dir = fresh_dir("pipeline");
  const auto path = [&](const char* f) { return (dir / f).string(); };
  testlab_manifest* m = nullptr;
  ASSERT_EQ(testlab_manifest_open(nullptr, &m), TESTLAB_OK);
  testlab_project* proj = nullptr;
  ASSERT_EQ(testlab_project_open(TESTLAB_DEMO_CORPUS, &proj), TESTLAB_OK);
  EXPECT_GT(testlab_project_class_count(proj), 25u);
  EXPECT_EQ(testlab_project_class_id(proj, 100000), nullptr);

  ASSERT_EQ(testlab_extract(proj, m, path("features.csv").c_str()), TESTLAB_OK);
  ASSERT_EQ(testlab_synthetic_coverage(path("features.csv").c_str(), m, 3, 5,
                                       path("coverage.csv").c_str()),
            TESTLAB_OK);
  size_t labelled = 0;
  ASSERT_EQ(testlab_label(path("coverage.csv").c_str(), nullptr, 0, path("labels.csv").c_str(),
                          &labelled),
            TESTLAB_OK);
  EXPECT_EQ(labelled, testlab_project_class_count(proj));

  auto opts = testlab_prepare_defaults();
  opts.lof_k = 5;
  opts.variant = "DS9";
  testlab_prepare_summary s{};
  EXPECT_EQ(testlab_prepare(path("features.csv").c_str(), path("labels.csv").c_str(), m, &opts,
                            path("data").c_str(), &s),
            TESTLAB_ERR_INVALID_ARGUMENT);
  opts.variant = "DS1";
  ASSERT_EQ(testlab_prepare(path("features.csv").c_str(), path("labels.csv").c_str(), m, &opts,
                            path("data").c_str(), &s),
            TESTLAB_OK)
      << testlab_last_error();
  EXPECT_GT(s.train_rows, s.test_rows);
  EXPECT_EQ(s.features, 199u);

  ASSERT_EQ(testlab_train(path("data").c_str(), TESTLAB_CONFIG_DIR "/demo.json", 3,
                          path("model.json").c_str()),
            TESTLAB_OK)
      << testlab_last_error();
  testlab_model* model = nullptr;
  ASSERT_EQ(testlab_model_open(path("model.json").c_str(), &model), TESTLAB_OK);
  EXPECT_EQ(testlab_model_feature_count(model), 199u);
  char* mh = nullptr;
  char* xh = nullptr;
  ASSERT_EQ(testlab_model_manifest_hash(model, &mh), TESTLAB_OK);
  ASSERT_EQ(testlab_manifest_hash(m, &xh), TESTLAB_OK);
  EXPECT_STREQ(mh, xh);
  testlab_string_free(mh);
  testlab_string_free(xh);

  testlab_scores sc{};
  ASSERT_EQ(testlab_evaluate(model, path("data/test.csv").c_str(), &sc), TESTLAB_OK);
  EXPECT_GT(sc.n, 0u);
  EXPECT_NEAR(sc.rmse * sc.rmse, sc.mse, 1e-15);

  testlab_estimate e{};
  ASSERT_EQ(testlab_estimate_class(proj, m, model, "com.demo.model.Address", &e), TESTLAB_OK);
  EXPECT_EQ(e.testability, 1.0);
  EXPECT_EQ(e.trivial, 1);
  EXPECT_EQ(testlab_estimate_class(proj, m, model, "com.demo.Missing", &e),
            TESTLAB_ERR_NOT_FOUND);
  ASSERT_EQ(testlab_estimate_all(proj, m, model, path("pred.csv").c_str()), TESTLAB_OK);

  size_t rows = 0;
  ASSERT_EQ(testlab_importance(model, path("data/test.csv").c_str(), 3, 15, 1,
                               path("imp").c_str(), &rows),
            TESTLAB_OK);
  EXPECT_EQ(rows, 15u);
  ASSERT_EQ(testlab_quality(proj, "demo", path("quality.csv").c_str()), TESTLAB_OK);
  EXPECT_EQ(slurp(path("quality.csv")).rfind("scope,name,reusability", 0), 0u);

  // A model for a different manifest is refused.
  const auto other = dir / "other.manifest";
  {
    std::ofstream out(other);
    out << "# testlab-manifest v1\nCSLOC\tclass\tdirect\n";
  }
  testlab_manifest* small = nullptr;
  ASSERT_EQ(testlab_manifest_open(other.c_str(), &small), TESTLAB_OK);
  EXPECT_EQ(testlab_estimate_class(proj, small, model, "com.demo.model.Book", &e),
            TESTLAB_ERR_SCHEMA);
  testlab_manifest_free(small);

  testlab_model_free(model);
  testlab_project_free(proj);
  testlab_manifest_free(m);
}
