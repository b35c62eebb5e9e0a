#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "../support/oracles.hpp"
#include "testlab/common/error.hpp"
#include "testlab/common/stats.hpp"
#include "testlab/common/text.hpp"
#include "testlab/data/dataset.hpp"

using namespace testlab;
using namespace testlab::data;

namespace {

Dataset small_dataset(std::size_t n, std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Dataset ds;
  for (std::size_t j = 0; j < d; ++j) ds.feature_names.push_back("F" + std::to_string(j));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row(d);
    for (auto& v : row) v = u(rng);
    ds.rows.push_back(row);
    ds.class_ids.push_back("c" + std::to_string(i));
    ds.targets.push_back(u(rng));
  }
  return ds;
}

Dataset trivial_fixture() {
  Dataset ds;
  ds.feature_names = {"CSLOC", "CSNOMNAMM", "CSNOIA", "CSNOSA"};
  ds.class_ids = {"simple", "data", "normal", "empty_methods"};
  ds.rows = {{3, 2, 0, 0}, {40, 0, 2, 0}, {50, 4, 1, 0}, {20, 0, 0, 0}};
  ds.targets = {0.5, 0.5, 0.5, 0.5};
  return ds;
}

}  // namespace

TEST(TrivialFilter, RemovesSimpleAndDataClasses) {
  std::vector<std::string> removed;
  const auto kept = filter_trivial_classes(trivial_fixture(), &removed);
  EXPECT_EQ(kept.class_ids, (std::vector<std::string>{"normal", "empty_methods"}));
  EXPECT_EQ(removed, (std::vector<std::string>{"simple", "data"}));
}

TEST(TrivialFilter, MissingMetricIsAnError) {
  auto ds = trivial_fixture();
  ds = ds.select(std::vector<std::string>{"CSLOC", "CSNOIA", "CSNOSA"});
  EXPECT_THROW(filter_trivial_classes(ds), MissingMetric);
}

TEST(Join, InnerJoinReportsUnmatchedIds) {
  metrics::FeatureTable ft;
  ft.names = {"A"};
  ft.class_ids = {"x", "y", "z"};
  ft.rows = {{1}, {2}, {3}};
  const auto r = join(ft, {{"y", 0.2}, {"x", 0.1}, {"w", 0.9}});
  EXPECT_EQ(r.dataset.class_ids, (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(r.dataset.targets, (std::vector<double>{0.1, 0.2}));
  EXPECT_EQ(r.features_without_label, std::vector<std::string>{"z"});
  EXPECT_EQ(r.labels_without_features, std::vector<std::string>{"w"});
}

TEST(Split, SeventyThirtyAndDisjoint) {
  const auto ds = small_dataset(100, 2, 1);
  const auto s = split(ds, 0.7, 42);
  EXPECT_EQ(s.train.size(), 70u);
  EXPECT_EQ(s.test.size(), 30u);
  std::set<std::string> all(s.train.class_ids.begin(), s.train.class_ids.end());
  for (const auto& id : s.test.class_ids) EXPECT_TRUE(all.insert(id).second);
  EXPECT_EQ(all.size(), 100u);
}

TEST(Split, SameSeedSameSplit) {
  const auto ds = small_dataset(50, 2, 2);
  EXPECT_EQ(split(ds, 0.7, 9).train.class_ids, split(ds, 0.7, 9).train.class_ids);
  EXPECT_NE(split(ds, 0.7, 9).train.class_ids, split(ds, 0.7, 10).train.class_ids);
}

TEST(Split, FloorRuleNearOne) {
  const auto ds = small_dataset(10, 1, 3);
  const auto s = split(ds, 1.0 - 1e-9, 1);
  EXPECT_EQ(s.train.size(), 9u);
  EXPECT_EQ(s.test.size(), 1u);
  EXPECT_THROW(split(ds, 1.0, 1), InvalidArgument);
  EXPECT_THROW(split(ds, 0.0, 1), InvalidArgument);
}

TEST(Lof, GridInteriorIsNearOne) {
  std::vector<std::vector<double>> pts;
  for (int x = 0; x < 15; ++x)
    for (int y = 0; y < 15; ++y) pts.push_back({double(x), double(y)});
  const auto s = lof_scores(pts, 8);
  EXPECT_NEAR(s[7 * 15 + 7], 1.0, 0.05);
}

TEST(Lof, PlantedOutlierRanksFirst) {
  const auto pts = oracle::planted_outlier_points();
  const auto s = lof_scores(pts, 20);
  const auto top = std::max_element(s.begin(), s.end()) - s.begin();
  EXPECT_EQ(static_cast<std::size_t>(top), pts.size() - 1);
  EXPECT_GT(s.back(), 5.0);
}

TEST(Lof, IdenticalPointsScoreOne) {
  std::vector<std::vector<double>> pts(10, std::vector<double>{1.0, 2.0});
  for (double v : lof_scores(pts, 3)) EXPECT_EQ(v, 1.0);
}

TEST(Lof, PreconditionOnK) {
  std::vector<std::vector<double>> pts(5, std::vector<double>{0.0});
  EXPECT_THROW(lof_scores(pts, 5), InvalidArgument);
  EXPECT_THROW(lof_scores(pts, 0), InvalidArgument);
}

TEST(Lof, MatchesBruteForceOracleExactly) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 30 + rng() % 120;
    const std::size_t d = 1 + rng() % 6;
    const std::size_t k = 1 + rng() % 25;
    std::vector<std::vector<double>> pts(n, std::vector<double>(d));
    std::uniform_int_distribution<int> coarse(0, 6);
    std::normal_distribution<double> g(0.0, 1.0);
    for (auto& p : pts)
      for (auto& v : p) v = trial % 2 ? coarse(rng) : g(rng);  // odd trials force ties
    const auto got = lof_scores(pts, k);
    const auto want = oracle::lof(pts, k);
    for (std::size_t i = 0; i < n; ++i) ASSERT_EQ(got[i], want[i]) << "trial " << trial;
  }
}

TEST(RemoveOutliers, DropsExactlyThePlantedRow) {
  Dataset ds;
  ds.feature_names = {"x", "y"};
  ds.rows = oracle::planted_outlier_points();
  for (std::size_t i = 0; i < ds.rows.size(); ++i) {
    ds.class_ids.push_back("p" + std::to_string(i));
    ds.targets.push_back(0.5);
  }
  std::vector<std::string> removed;
  const auto out = remove_outliers(ds, 20, 1.5, &removed);
  EXPECT_EQ(removed, std::vector<std::string>{"p49"});
  EXPECT_EQ(out.size(), ds.size() - 1);
  EXPECT_EQ(remove_outliers(ds, 20, std::numeric_limits<double>::infinity()).size(), ds.size());
  EXPECT_THROW(remove_outliers(ds, ds.size(), 1.5), InvalidArgument);
}

TEST(Scaler, OwnColumnBecomesStandard) {
  const auto ds = small_dataset(40, 3, 5);
  const auto p = fit_scaler(ds);
  const auto z = apply_scaler(p, ds);
  for (std::size_t j = 0; j < 3; ++j) {
    const auto col = z.column(j);
    EXPECT_NEAR(stats::mean(col), 0.0, 1e-9);
    EXPECT_NEAR(stats::population_sd(col), 1.0, 1e-9);
  }
}

TEST(Scaler, ConstantColumnMapsToZero) {
  Dataset ds;
  ds.feature_names = {"c"};
  ds.rows = {{0.1}, {0.1}, {0.1}};
  ds.class_ids = {"a", "b", "c"};
  ds.targets = {0, 0, 0};
  const auto p = fit_scaler(ds);
  EXPECT_TRUE(p.degenerate[0]);
  for (const auto& r : apply_scaler(p, ds).rows) EXPECT_EQ(r[0], 0.0);
}

TEST(Scaler, NoClippingOutsideTrainRange) {
  Dataset ds;
  ds.feature_names = {"x"};
  ds.rows = {{0.0}, {2.0}};
  ds.class_ids = {"a", "b"};
  ds.targets = {0, 0};
  const auto p = fit_scaler(ds);  // mean 1, sd 1
  std::vector<double> row{11.0};
  apply_scaler(p, row);
  EXPECT_DOUBLE_EQ(row[0], 10.0);
}

TEST(Variants, ParseAndUnknown) {
  EXPECT_EQ(parse_variant("DS4"), Variant::DS4);
  EXPECT_THROW(parse_variant("DS6"), UnknownVariant);
}

namespace {

Dataset manifest_dataset(std::size_t n, std::uint64_t seed) {
  const auto& m = metrics::default_manifest();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Dataset ds;
  ds.feature_names = m.names();
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row(m.size());
    for (auto& v : row) v = u(rng);
    ds.rows.push_back(row);
    ds.class_ids.push_back("c" + std::to_string(i));
    ds.targets.push_back(0.5 * row[3] + 0.1 * u(rng));
  }
  return ds;
}

}  // namespace

TEST(Variants, BlockDrops) {
  const auto& m = metrics::default_manifest();
  const auto ds = manifest_dataset(30, 1);
  EXPECT_EQ(make_variant(ds, Variant::DS1, m).feature_names, ds.feature_names);
  const auto ds2 = make_variant(ds, Variant::DS2, m);
  EXPECT_EQ(ds2.dims(), 20u);
  EXPECT_NE(std::find(ds2.feature_names.begin(), ds2.feature_names.end(), ds.feature_names[3]),
            ds2.feature_names.end());
  for (const auto& n : make_variant(ds, Variant::DS3, m).feature_names) {
    EXPECT_FALSE(starts_with(n, "PK")) << n;
  }
  const auto ds4 = make_variant(ds, Variant::DS4, m);
  EXPECT_EQ(ds4.dims(), 131u);
  const auto ds5 = make_variant(ds, Variant::DS5, m);
  EXPECT_EQ(ds5.dims(), 199u - 135u);
  for (const auto& n : ds5.feature_names) EXPECT_EQ(n.find("_Mean"), std::string::npos) << n;
}

TEST(Prepare, TestRowsNeverInfluenceFittedParameters) {
  const auto& m = metrics::default_manifest();
  auto ds = manifest_dataset(80, 3);
  for (auto& r : ds.rows) r[*m.index_of("CSLOC")] = 100;  // nothing trivial
  PrepareOptions opt;
  opt.lof_k = 10;
  opt.variant = Variant::DS2;
  const auto parts = split(ds, opt.train_fraction, opt.seed);
  const auto a = preprocess(parts.train, parts.test, m, opt);
  auto garbage = parts.test;
  for (auto& r : garbage.rows)
    for (auto& v : r) v = 1e6;
  for (auto& t : garbage.targets) t = 1.0;
  const auto b = preprocess(parts.train, garbage, m, opt);
  EXPECT_EQ(a.scaler, b.scaler);
  EXPECT_EQ(a.train.rows, b.train.rows);
  EXPECT_EQ(a.outliers, b.outliers);
}

TEST(Prepare, CsvRoundTripAndScalerJson) {
  const auto& m = metrics::default_manifest();
  auto ds = manifest_dataset(40, 4);
  for (auto& r : ds.rows) r[*m.index_of("CSLOC")] = 100;
  metrics::FeatureTable ft{ds.feature_names, ds.class_ids, ds.rows};
  std::map<std::string, double> labels;
  for (std::size_t i = 0; i < ds.size(); ++i) labels[ds.class_ids[i]] = ds.targets[i];
  PrepareOptions opt;
  opt.lof_k = 5;
  opt.variant = Variant::DS3;
  const auto p = prepare(ft, labels, m, opt);
  const auto dir = std::filesystem::temp_directory_path() / "testlab_prepare_test";
  write_prepared(dir, p);
  const auto back = Dataset::load(dir / "dataset.csv");
  EXPECT_EQ(back.rows, p.train.rows);
  EXPECT_EQ(back.feature_names, p.train.feature_names);
  const auto sf = scaler_from_json(read_file(dir / "scaler.json"));
  EXPECT_EQ(sf.params, p.scaler);
  EXPECT_EQ(sf.manifest_hash, m.hash());
  EXPECT_EQ(sf.variant, Variant::DS3);
  std::filesystem::remove_all(dir);
}
