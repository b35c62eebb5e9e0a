#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "testlab/common/error.hpp"
#include "testlab/inference/estimate.hpp"
#include "testlab/metrics/project.hpp"

using namespace testlab;
using namespace testlab::inference;

namespace {

constexpr const char* kShop = TESTLAB_FIXTURE_DIR "/inference";

/// Fails the process if it is ever asked for a prediction.
class AbortingPredictor final : public Predictor {
 public:
  std::string manifest_hash() const override { return metrics::default_manifest().hash(); }
  double predict(std::span<const std::string>, std::span<const double>) const override {
    std::abort();
  }
};

class FixedPredictor final : public Predictor {
 public:
  explicit FixedPredictor(double value, std::string hash = metrics::default_manifest().hash())
      : value_(value), hash_(std::move(hash)) {}
  std::string manifest_hash() const override { return hash_; }
  double predict(std::span<const std::string> names, std::span<const double> values) const override {
    ++calls;
    last_size = names.size();
    EXPECT_EQ(names.size(), values.size());
    return value_;
  }
  mutable std::atomic<int> calls{0};
  mutable std::size_t last_size = 0;

 private:
  double value_;
  std::string hash_;
};

class InferenceTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    index_ = new metrics::ProjectIndex(metrics::load_project(kShop));
    analysis_ = new metrics::ProjectAnalysis(*index_);
  }
  static void TearDownTestSuite() {
    delete analysis_;
    delete index_;
  }
  static const metrics::ProjectAnalysis& analysis() { return *analysis_; }

 private:
  static inline metrics::ProjectIndex* index_ = nullptr;
  static inline metrics::ProjectAnalysis* analysis_ = nullptr;
};

}  // namespace

TEST_F(InferenceTest, DataClassSkipsTheModel) {
  const auto e = estimate_testability("shop.Customer", analysis(), metrics::default_manifest(),
                                      AbortingPredictor{});
  EXPECT_EQ(e.testability, 1.0);
  EXPECT_TRUE(e.trivial);
}

TEST_F(InferenceTest, SimpleClassSkipsTheModel) {
  const auto e = estimate_testability("shop.Marker", analysis(), metrics::default_manifest(),
                                      AbortingPredictor{});
  EXPECT_EQ(e.testability, 1.0);
  EXPECT_TRUE(e.trivial);
}

TEST_F(InferenceTest, ClampsModelOutput) {
  const auto& mf = metrics::default_manifest();
  const FixedPredictor low(-0.07), high(1.2), mid(0.42);
  EXPECT_EQ(estimate_testability("shop.Checkout", analysis(), mf, low).testability, 0.0);
  EXPECT_EQ(estimate_testability("shop.Checkout", analysis(), mf, high).testability, 1.0);
  const auto e = estimate_testability("shop.Checkout", analysis(), mf, mid);
  EXPECT_EQ(e.testability, 0.42);
  EXPECT_EQ(e.raw, 0.42);
  EXPECT_FALSE(e.trivial);
  EXPECT_EQ(mid.calls.load(), 1);
  EXPECT_EQ(mid.last_size, mf.size());
}

TEST_F(InferenceTest, NanOutputIsAnError) {
  const FixedPredictor nan(std::numeric_limits<double>::quiet_NaN());
  EXPECT_THROW(
      estimate_testability("shop.Checkout", analysis(), metrics::default_manifest(), nan),
      NumericError);
}

TEST_F(InferenceTest, Errors) {
  const auto& mf = metrics::default_manifest();
  EXPECT_THROW(estimate_testability("shop.Nope", analysis(), mf, FixedPredictor(0.5)),
               ClassNotFound);
  EXPECT_THROW(
      estimate_testability("shop.Checkout", analysis(), mf, FixedPredictor(0.5, "0000000000000000")),
      ManifestMismatch);
  // The manifest check happens before the trivial shortcut.
  EXPECT_THROW(
      estimate_testability("shop.Customer", analysis(), mf, FixedPredictor(0.5, "0000000000000000")),
      ManifestMismatch);
}

TEST_F(InferenceTest, EstimateAllCoversEveryClassInRange) {
  const FixedPredictor p(1.7);
  const auto all = estimate_all(analysis(), metrics::default_manifest(), p);
  ASSERT_EQ(all.size(), 3u);
  for (const auto& e : all) {
    EXPECT_GE(e.testability, 0.0);
    EXPECT_LE(e.testability, 1.0);
  }
  EXPECT_EQ(p.calls.load(), 1);
  EXPECT_EQ(estimates_table(all).rows.size(), 3u);
}

TEST(Clamp, UnitInterval) {
  EXPECT_EQ(clamp_unit(-0.07), 0.0);
  EXPECT_EQ(clamp_unit(1.2), 1.0);
  EXPECT_EQ(clamp_unit(0.42), 0.42);
  EXPECT_EQ(clamp_unit(-0.0), -0.0);
  EXPECT_THROW(clamp_unit(std::nan("")), NumericError);
}
