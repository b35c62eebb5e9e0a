#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "testlab/common/error.hpp"
#include "testlab/learn/evaluation.hpp"
#include "testlab/learn/hgb.hpp"
#include "testlab/learn/mlp.hpp"
#include "testlab/learn/model.hpp"
#include "testlab/learn/selection.hpp"
#include "testlab/learn/tree.hpp"

using namespace testlab;
using namespace testlab::learn;

namespace {

Samples linear_data(std::size_t n, std::uint64_t seed, double noise = 0.01) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> g(0.0, noise);
  Samples s;
  s.n = n;
  s.d = 2;
  for (std::size_t i = 0; i < n; ++i) {
    const double x1 = u(rng), x2 = u(rng);
    s.x.push_back(x1);
    s.x.push_back(x2);
    s.y.push_back(3.0 * x1 + g(rng));
  }
  return s;
}

Samples constant_target(std::size_t n, double c) {
  Samples s = linear_data(n, 3);
  for (auto& y : s.y) y = c;
  return s;
}

double r2(const Regressor& m, const Samples& s) {
  const auto p = m.predict_all(s);
  return evaluate(p, s.y).r2;
}

}  // namespace

TEST(Tree, StepFunctionFitsExactly) {
  Samples s;
  s.d = 1;
  for (int i = 0; i < 20; ++i) {
    s.x.push_back(i);
    s.y.push_back(i < 7 ? 0.2 : 0.9);
  }
  s.n = 20;
  TreeParams p;
  p.max_depth = 1;
  p.min_samples_split = 2;
  const auto t = RegressionTree::fit(s, p);
  ASSERT_EQ(t.nodes().size(), 3u);
  EXPECT_DOUBLE_EQ(t.nodes()[0].threshold, 6.5);
  for (std::size_t i = 0; i < s.n; ++i) EXPECT_DOUBLE_EQ(t.predict(s.row(i)), s.y[i]);
}

TEST(Tree, RootOnlyPredictsMean) {
  const auto s = linear_data(50, 1);
  TreeParams p;
  p.max_depth = 0;
  const auto t = RegressionTree::fit(s, p);
  double mean = 0;
  for (double y : s.y) mean += y;
  mean /= 50;
  EXPECT_DOUBLE_EQ(t.predict(s.row(0)), mean);
}

TEST(Tree, DepthLimitAndDimensionCheck) {
  const auto s = linear_data(300, 2);
  TreeParams p;
  p.max_depth = 4;
  p.min_samples_split = 2;
  const auto t = RegressionTree::fit(s, p);
  EXPECT_LE(t.depth(), 4u);
  std::vector<double> wrong{1.0};
  EXPECT_THROW(t.predict(wrong), DimensionMismatch);
}

TEST(Tree, RowOrderDoesNotChangeStructure) {
  auto s = linear_data(200, 5, 0.3);
  TreeParams p;
  p.max_depth = 6;
  p.min_samples_split = 2;
  const auto a = RegressionTree::fit(s, p);
  std::vector<std::size_t> perm(s.n);
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(1);
  std::shuffle(perm.begin(), perm.end(), rng);
  const auto b = RegressionTree::fit(s.subset(perm), p);
  ASSERT_EQ(a.nodes().size(), b.nodes().size());
  for (std::size_t i = 0; i < a.nodes().size(); ++i) {
    EXPECT_EQ(a.nodes()[i].feature, b.nodes()[i].feature);
    EXPECT_EQ(a.nodes()[i].threshold, b.nodes()[i].threshold);
  }
}

TEST(Forest, ConstantTarget) {
  const auto s = constant_target(100, 0.37);
  ForestParams p;
  p.n_estimators = 10;
  const auto f = RandomForest::fit(s, p, 1);
  EXPECT_DOUBLE_EQ(f.predict(s.row(3)), 0.37);
}

TEST(Forest, PredictionIsMeanOfTrees) {
  const auto s = linear_data(200, 4, 0.1);
  ForestParams p;
  p.n_estimators = 25;
  const auto f = RandomForest::fit(s, p, 9);
  for (std::size_t i = 0; i < 10; ++i) {
    double sum = 0;
    for (const auto& t : f.trees()) sum += t.predict(s.row(i));
    EXPECT_EQ(f.predict(s.row(i)), sum / 25.0);
  }
}

TEST(Forest, LearnsLinearSignal) {
  const auto train = linear_data(2000, 11);
  const auto test = linear_data(600, 12);
  const auto f = RandomForest::fit(train, ForestParams{}, 3);
  EXPECT_GT(r2(f, test), 0.95);
}

TEST(Forest, SeedDeterminism) {
  const auto s = linear_data(100, 4, 0.1);
  ForestParams p;
  p.n_estimators = 5;
  EXPECT_EQ(RandomForest::fit(s, p, 2).to_json(), RandomForest::fit(s, p, 2).to_json());
}

TEST(Hgb, LossNeverIncreases) {
  const auto s = linear_data(500, 6, 0.2);
  HgbParams p;
  p.max_iter = 120;
  const auto m = HistGradientBoosting::fit(s, p);
  const auto& h = m.loss_history();
  ASSERT_EQ(h.size(), 121u);
  for (std::size_t i = 1; i < h.size(); ++i) EXPECT_LE(h[i], h[i - 1]) << "iteration " << i;
  EXPECT_LT(h.back(), 0.5 * h.front());
}

TEST(Hgb, ConstantTargetAndBinning) {
  const auto s = constant_target(60, 0.8);
  HgbParams p;
  p.max_iter = 10;
  const auto m = HistGradientBoosting::fit(s, p);
  EXPECT_DOUBLE_EQ(m.predict(s.row(0)), 0.8);

  const auto big = linear_data(3000, 8);
  const auto bins = BinMapper::fit(big, 256);
  EXPECT_LE(bins.bins(0), 256u);
  std::uint16_t prev_bin = 0;
  for (double x = -0.1; x < 1.1; x += 0.001) {
    const auto b = bins.bin(0, x);
    EXPECT_GE(b, prev_bin);
    prev_bin = b;
  }
}

TEST(Hgb, JsonRoundTripPredictsIdentically) {
  const auto s = linear_data(300, 7, 0.1);
  HgbParams p;
  p.max_iter = 30;
  const auto m = HistGradientBoosting::fit(s, p);
  const auto back = HistGradientBoosting::from_json(Json::parse(m.to_json().dump()));
  for (std::size_t i = 0; i < 20; ++i) EXPECT_EQ(m.predict(s.row(i)), back.predict(s.row(i)));
}

TEST(Mlp, ConstantTarget) {
  const auto s = constant_target(64, 0.42);
  MlpParams p;
  p.hidden = {16, 8};
  p.epochs = 20;
  const auto m = Perceptron::fit(s, p, 5);
  EXPECT_NEAR(m.predict(s.row(0)), 0.42, 1e-6);
}

TEST(Mlp, GradientMatchesCentralDifferences) {
  for (auto act : {Activation::Tanh, Activation::Logistic}) {
    MlpParams p;
    p.hidden = {7, 5};
    p.activation = act;
    auto net = Perceptron::initialise(4, p, 3, false);
    Samples batch;
    batch.n = 5;
    batch.d = 4;
    std::mt19937_64 rng(4);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int i = 0; i < 20; ++i) batch.x.push_back(g(rng));
    for (int i = 0; i < 5; ++i) batch.y.push_back(g(rng));
    const auto analytic = net.gradient(batch);
    auto theta = net.parameters();
    const double h = 1e-6;
    for (std::size_t k = 0; k < theta.size(); ++k) {
      const double keep = theta[k];
      theta[k] = keep + h;
      net.set_parameters(theta);
      const double up = net.loss(batch);
      theta[k] = keep - h;
      net.set_parameters(theta);
      const double down = net.loss(batch);
      theta[k] = keep;
      net.set_parameters(theta);
      const double numeric = (up - down) / (2 * h);
      const double denom = std::max({std::fabs(analytic[k]), std::fabs(numeric), 1e-8});
      EXPECT_LT(std::fabs(analytic[k] - numeric) / denom, 1e-4) << "parameter " << k;
    }
  }
}

TEST(Mlp, LearnsAndRoundTrips) {
  const auto train = linear_data(400, 21);
  MlpParams p;
  p.hidden = {32, 16};
  p.epochs = 60;
  p.batch_size = 32;
  const auto m = Perceptron::fit(train, p, 1);
  EXPECT_GT(r2(m, linear_data(200, 22)), 0.9);
  EXPECT_LT(m.loss_curve().back(), m.loss_curve().front());
  const auto back = Perceptron::from_json(Json::parse(m.to_json().dump()));
  EXPECT_EQ(back.predict(train.row(0)), m.predict(train.row(0)));
}

TEST(Voting, BestWeightsExample) {
  EXPECT_NEAR(weighted_vote(kBestVotingWeights, {0, 0, 0, 0.6, 0.3, 0.6}), 0.45, 1e-15);
  EXPECT_THROW(validate_weights({0.1, 0, 0, 0.3, 0.3, 0.3}), InvalidParams);
  EXPECT_THROW(validate_weights({0, 0, 0, 0.5, 0.6, 0}), InvalidParams);
  const auto w = parse_weights(Json::array({0, 0, 0, "2/6", "3/6", "1/6"}));
  EXPECT_EQ(w, kBestVotingWeights);
}

TEST(Voting, SingleModelIsIdentity) {
  const auto s = linear_data(100, 2, 0.1);
  std::map<Family, std::unique_ptr<Regressor>> models;
  models[Family::RFR] = fit_family(Family::RFR, {{"n_estimators", 5}}, s, 1);
  const auto* raw = models[Family::RFR].get();
  VotingEnsemble e({0, 0, 0, 0, 1, 0}, std::move(models));
  for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(e.predict(s.row(i)), raw->predict(s.row(i)));
}

TEST(Evaluate, Examples) {
  std::vector<double> t{0.1, 0.5, 0.9};
  auto perfect = evaluate(t, t);
  EXPECT_EQ(perfect.mae, 0.0);
  EXPECT_EQ(perfect.rmse, 0.0);
  EXPECT_EQ(perfect.mdae, 0.0);
  EXPECT_EQ(perfect.r2, 1.0);
  std::vector<double> mean(3, 0.5);
  EXPECT_NEAR(evaluate(mean, t).r2, 0.0, 1e-15);
  auto hand = evaluate(std::vector<double>{0, 1}, std::vector<double>{1, 1});
  EXPECT_DOUBLE_EQ(hand.mae, 0.5);
  EXPECT_DOUBLE_EQ(hand.mse, 0.5);
  EXPECT_NEAR(hand.rmse, 0.7071067811865476, 1e-15);
  EXPECT_DOUBLE_EQ(hand.mdae, 0.5);
  EXPECT_FALSE(hand.r2_defined);
  EXPECT_TRUE(std::isnan(hand.r2));
  EXPECT_THROW(evaluate(std::vector<double>{1}, std::vector<double>{1}), InvalidArgument);
}

TEST(Welch, IdenticalSymmetricAndSeparated) {
  std::vector<double> a{1.2, 2.3, 3.1, 4.8, 5.0};
  std::vector<double> b{2.2, 3.9, 4.1, 6.5, 7.7, 8.0};
  EXPECT_NEAR(welch_t_test(a, a).p, 1.0, 1e-9);
  EXPECT_EQ(welch_t_test(a, b).p, welch_t_test(b, a).p);
  const auto r = welch_t_test(a, b);
  EXPECT_NEAR(r.t, -1.7641773391960267, 1e-12);
  EXPECT_NEAR(r.df, 8.7844321007683, 1e-9);
  EXPECT_NEAR(r.p, 0.11234803155036292, 1e-10);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g0(0, 1), g5(5, 1);
  std::vector<double> x, y;
  for (int i = 0; i < 100; ++i) {
    x.push_back(g0(rng));
    y.push_back(g5(rng));
  }
  EXPECT_LT(welch_t_test(x, y).p, 1e-10);
  std::vector<double> flat{2, 2, 2};
  EXPECT_THROW(welch_t_test(flat, flat), DegenerateVariance);
}

TEST(Selection, KFoldPartitions) {
  for (std::size_t n : {10u, 23u, 101u}) {
    const auto folds = kfold_indices(n, 5, 3);
    std::set<std::size_t> all;
    std::size_t lo = n, hi = 0;
    for (const auto& f : folds) {
      lo = std::min(lo, f.size());
      hi = std::max(hi, f.size());
      for (std::size_t i : f) EXPECT_TRUE(all.insert(i).second);
    }
    EXPECT_EQ(all.size(), n);
    EXPECT_LE(hi - lo, 1u);
  }
  EXPECT_THROW(kfold_indices(10, 1, 0), InvalidArgument);
}

TEST(Selection, GridExpansionAndValidation) {
  const auto g = expand_grid(Json::parse(R"({"max_depth": [3, 8], "min_samples_split": [2, 4, 6]})"));
  ASSERT_EQ(g.size(), 6u);
  EXPECT_EQ(g[1]["min_samples_split"], 4);
  EXPECT_THROW(validate_params(Family::RFR, {{"max_depth", 4}}, true), InvalidParams);
  EXPECT_NO_THROW(validate_params(Family::RFR, {{"max_depth", 4}}, false));
  EXPECT_THROW(validate_params(Family::HGBR, {{"shrinkage", 1}}, false), InvalidParams);
  EXPECT_NO_THROW(validate_params(Family::HGBR, default_params(Family::HGBR), true));
  EXPECT_NO_THROW(validate_params(Family::MLPR, default_params(Family::MLPR), true));
}

TEST(Selection, SingleCandidateIsReturned) {
  const auto s = linear_data(30, 1);
  const auto r = grid_search_cv(Family::DTR, {{{"max_depth", 8}}}, s, 5, 1);
  EXPECT_EQ(r.best, 0u);
  EXPECT_EQ(r.table.size(), 1u);
}

TEST(Selection, PlantedOptimumRecovered) {
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1, 1);
    std::normal_distribution<double> noise(0, 0.5);
    Samples s;
    s.n = 300;
    s.d = 3;
    for (std::size_t i = 0; i < s.n; ++i) {
      const double x0 = u(rng);
      s.x.insert(s.x.end(), {x0, u(rng), u(rng)});
      s.y.push_back((x0 > 0 ? 1.0 : 0.0) + noise(rng));
    }
    const std::vector<Json> grid = expand_grid(
        Json::parse(R"({"max_depth": [48, 3, 28], "min_samples_split": [2]})"));
    const auto r = grid_search_cv(Family::DTR, grid, s, 5, seed);
    hits += r.table[r.best].params["max_depth"] == 3;
  }
  EXPECT_GE(hits, 9);
}

TEST(Model, TrainSaveLoadPredict) {
  data::Dataset ds;
  const auto s = linear_data(80, 5, 0.05);
  for (std::size_t i = 0; i < s.n; ++i) {
    ds.rows.push_back({s.at(i, 0), s.at(i, 1)});
    ds.targets.push_back(std::clamp(s.y[i] / 3.0, 0.0, 1.0));
    ds.class_ids.push_back("c" + std::to_string(i));
  }
  ds.feature_names = {"A", "B"};
  data::ScalerFile sf;
  sf.params = data::fit_scaler(ds);
  sf.manifest_hash = "0123456789abcdef";
  const auto scaled = data::apply_scaler(sf.params, ds);
  auto cfg = TrainConfig::from_json(Json::parse(R"({
    "folds": 3,
    "grid_mode": false,
    "HGBR": {"max_iter": [20, 40], "min_samples_leaf": [5]},
    "RFR": {"n_estimators": [10], "max_depth": [8]},
    "MLPR": {"hidden_layer_sizes": [[8]], "epochs": [5]},
    "VoR": {"weights": [[0, 0, 0, "1/3", "1/3", "1/3"], [0, 0, 0, "2/6", "3/6", "1/6"]]}
  })"));
  const auto m = train_model(scaled, sf, cfg, 42);
  EXPECT_EQ(m.selection()["HGBR"]["candidates"].size(), 2u);
  const auto path = std::filesystem::temp_directory_path() / "testlab_model_test.json";
  m.save(path);
  const auto back = Model::load(path);
  EXPECT_EQ(back.to_json(), m.to_json());
  const std::vector<std::string> names{"B", "A"};
  const std::vector<double> raw{ds.rows[0][1], ds.rows[0][0]};
  EXPECT_EQ(back.predict_raw(names, raw), m.predict_scaled(scaled.rows[0]));
  std::filesystem::remove(path);
}
