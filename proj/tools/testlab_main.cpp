#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "testlab/testlab.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

/// Raised inside a command to stop with the library's error message.
struct Failure {
  int code;
  std::string message;
};

void check(testlab_status s, const std::string& step) {
  if (s != TESTLAB_OK) {
    throw Failure{kExitData, step + ": " + testlab_last_error()};
  }
}

template <typename T, void (*Free)(T*)>
struct Handle {
  T* ptr = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(ptr); }
  T** out() { return &ptr; }
  T* get() const { return ptr; }
};

using Manifest = Handle<testlab_manifest, testlab_manifest_free>;
using Project = Handle<testlab_project, testlab_project_free>;
using Model = Handle<testlab_model, testlab_model_free>;

struct Globals {
  std::uint64_t seed = 42;
  std::string manifest;
};

void open_manifest(const Globals& g, Manifest& m) {
  check(testlab_manifest_open(g.manifest.empty() ? nullptr : g.manifest.c_str(), m.out()),
        "loading the metric manifest");
}

void open_project(const std::string& dir, Project& p) {
  check(testlab_project_open(dir.c_str(), p.out()), "reading project '" + dir + "'");
}

void open_model(const std::string& path, Model& m) {
  check(testlab_model_open(path.c_str(), m.out()), "loading model '" + path + "'");
}

void ensure_parent(const std::string& path) {
  const auto parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// ---------------------------------------------------------------- commands

struct ExtractArgs {
  std::string project, out;
};

void run_extract(const Globals& g, const ExtractArgs& a) {
  Manifest m;
  open_manifest(g, m);
  Project p;
  open_project(a.project, p);
  ensure_parent(a.out);
  check(testlab_extract(p.get(), m.get(), a.out.c_str()), "extracting metrics");
  std::cout << "extracted " << testlab_project_class_count(p.get()) << " classes x "
            << testlab_manifest_size(m.get()) << " metrics -> " << a.out << "\n";
}

struct LabelArgs {
  std::string coverage, out;
  std::vector<std::string> map;
};

void run_label(const Globals&, const LabelArgs& a) {
  std::vector<const char*> rename;
  for (const auto& r : a.map) rename.push_back(r.c_str());
  std::size_t n = 0;
  ensure_parent(a.out);
  check(testlab_label(a.coverage.c_str(), rename.data(), rename.size(), a.out.c_str(), &n),
        "labelling '" + a.coverage + "'");
  std::cout << "labelled " << n << " classes -> " << a.out << "\n";
}

struct PrepareArgs {
  std::string features, labels, out, variant = "DS1";
  double train_fraction = 0.7;
  std::size_t lof_k = 20;
  double lof_threshold = 1.5;
  bool no_outliers = false;
};

void run_prepare(const Globals& g, const PrepareArgs& a) {
  Manifest m;
  open_manifest(g, m);
  auto opts = testlab_prepare_defaults();
  opts.seed = g.seed;
  opts.train_fraction = a.train_fraction;
  opts.lof_k = a.lof_k;
  opts.lof_threshold = a.no_outliers ? std::numeric_limits<double>::infinity() : a.lof_threshold;
  opts.variant = a.variant.c_str();
  testlab_prepare_summary s{};
  check(testlab_prepare(a.features.c_str(), a.labels.c_str(), m.get(), &opts, a.out.c_str(), &s),
        "preparing the dataset");
  std::cout << "train " << s.train_rows << " rows, test " << s.test_rows << " rows, "
            << s.features << " features (" << a.variant << "); dropped " << s.trivial
            << " trivial, " << s.outliers << " outliers; unmatched " << s.unmatched_features
            << " feature rows, " << s.unmatched_labels << " labels -> " << a.out << "\n";
}

struct TrainArgs {
  std::string data, grid, out;
};

void run_train(const Globals& g, const TrainArgs& a) {
  ensure_parent(a.out);
  check(testlab_train(a.data.c_str(), a.grid.empty() ? nullptr : a.grid.c_str(), g.seed,
                      a.out.c_str()),
        "training");
  std::cout << "model -> " << a.out << "\n";
}

struct EvalArgs {
  std::string model, dataset, baseline, out;
};

void run_eval(const Globals&, const EvalArgs& a) {
  Model m;
  open_model(a.model, m);
  testlab_scores s{};
  check(testlab_evaluate(m.get(), a.dataset.c_str(), &s), "evaluating on '" + a.dataset + "'");
  std::ostringstream text;
  text << "n " << s.n << "\nmae " << fmt(s.mae) << "\nmse " << fmt(s.mse) << "\nrmse "
       << fmt(s.rmse) << "\nmdae " << fmt(s.mdae) << "\nr2 "
       << (s.r2_defined ? fmt(s.r2) : std::string("undefined")) << "\n";
  if (!a.baseline.empty()) {
    Model b;
    open_model(a.baseline, b);
    double* ea = nullptr;
    double* eb = nullptr;
    std::size_t na = 0, nb = 0;
    check(testlab_squared_errors(m.get(), a.dataset.c_str(), &ea, &na), "scoring the model");
    std::unique_ptr<double, void (*)(double*)> ga(ea, testlab_doubles_free);
    check(testlab_squared_errors(b.get(), a.dataset.c_str(), &eb, &nb), "scoring the baseline");
    std::unique_ptr<double, void (*)(double*)> gb(eb, testlab_doubles_free);
    testlab_welch w{};
    check(testlab_welch_test(ea, na, eb, nb, &w), "comparing squared errors");
    text << "welch_t " << fmt(w.t) << "\nwelch_df " << fmt(w.df) << "\nwelch_p " << fmt(w.p)
         << "\n";
  }
  std::cout << text.str();
  if (!a.out.empty()) {
    ensure_parent(a.out);
    std::ofstream f(a.out, std::ios::binary);
    f << text.str();
    if (!f) throw Failure{kExitData, "cannot write '" + a.out + "'"};
  }
}

struct PredictArgs {
  std::string model, project, cls, out;
  bool all = false;
};

void run_predict(const Globals& g, const PredictArgs& a) {
  if (a.all == !a.cls.empty()) {
    throw Failure{kExitUsage, "predict needs exactly one of --class or --all"};
  }
  Manifest mf;
  open_manifest(g, mf);
  Model m;
  open_model(a.model, m);
  Project p;
  open_project(a.project, p);
  if (a.all) {
    const std::string out = a.out.empty() ? "predictions.csv" : a.out;
    ensure_parent(out);
    check(testlab_estimate_all(p.get(), mf.get(), m.get(), out.c_str()), "estimating testability");
    std::cout << "estimated " << testlab_project_class_count(p.get()) << " classes -> " << out
              << "\n";
    return;
  }
  testlab_estimate e{};
  check(testlab_estimate_class(p.get(), mf.get(), m.get(), a.cls.c_str(), &e),
        "estimating testability of '" + a.cls + "'");
  std::cout << a.cls << "," << fmt(e.testability) << "\n";
}

struct ImportanceArgs {
  std::string model, dataset, out;
  std::size_t repeats = 100;
  std::size_t top = 15;
};

void run_importance(const Globals& g, const ImportanceArgs& a) {
  Model m;
  open_model(a.model, m);
  std::size_t rows = 0;
  check(testlab_importance(m.get(), a.dataset.c_str(), a.repeats, a.top, g.seed, a.out.c_str(),
                           &rows),
        "computing permutation importance");
  if (rows == 0) {
    std::cerr << "testlab importance: warning: no features to rank; wrote an empty report to "
              << a.out << "\n";
  } else {
    std::cout << "ranked " << rows << " features -> " << a.out << "\n";
  }
}

struct QualityArgs {
  std::string project, out, name;
};

void run_quality(const Globals&, const QualityArgs& a) {
  Project p;
  open_project(a.project, p);
  const std::string name = a.name.empty() ? fs::path(a.project).filename().string() : a.name;
  ensure_parent(a.out);
  check(testlab_quality(p.get(), name.c_str(), a.out.c_str()), "computing quality attributes");
  std::cout << "quality attributes -> " << a.out << "\n";
}

struct DemoArgs {
  std::string corpus = TESTLAB_DEMO_CORPUS;
  std::string grid = std::string(TESTLAB_CONFIG_DIR) + "/demo.json";
  std::string out = "demo_out";
  std::size_t repeats = 10;
};

void run_demo(const Globals& g, const DemoArgs& a) {
  const auto start = std::chrono::steady_clock::now();
  const fs::path out(a.out);
  fs::create_directories(out);
  const auto path = [&](const char* name) { return (out / name).string(); };
  const auto step = [](const char* what) { std::cout << "[demo] " << what << "\n"; };

  Manifest mf;
  open_manifest(g, mf);
  Project p;
  step("extract");
  open_project(a.corpus, p);
  check(testlab_extract(p.get(), mf.get(), path("features.csv").c_str()), "extracting metrics");

  step("label (synthetic coverage, 5 runs per class)");
  check(testlab_synthetic_coverage(path("features.csv").c_str(), mf.get(), g.seed, 5,
                                   path("coverage.csv").c_str()),
        "generating coverage");
  std::size_t labelled = 0;
  check(testlab_label(path("coverage.csv").c_str(), nullptr, 0, path("labels.csv").c_str(),
                      &labelled),
        "labelling");

  step("prepare");
  auto opts = testlab_prepare_defaults();
  opts.seed = g.seed;
  opts.lof_k = 5;
  testlab_prepare_summary s{};
  check(testlab_prepare(path("features.csv").c_str(), path("labels.csv").c_str(), mf.get(), &opts,
                        path("data").c_str(), &s),
        "preparing the dataset");

  step("train");
  check(testlab_train(path("data").c_str(), a.grid.c_str(), g.seed, path("model.json").c_str()),
        "training");

  step("evaluate");
  Model m;
  open_model(path("model.json"), m);
  testlab_scores sc{};
  const std::string test_csv = (out / "data" / "test.csv").string();
  check(testlab_evaluate(m.get(), test_csv.c_str(), &sc), "evaluating");

  step("predict");
  check(testlab_estimate_all(p.get(), mf.get(), m.get(), path("predictions.csv").c_str()),
        "estimating testability");

  step("importance");
  std::size_t ranked = 0;
  check(testlab_importance(m.get(), test_csv.c_str(), a.repeats, 15, g.seed,
                           path("importance").c_str(), &ranked),
        "computing permutation importance");

  step("quality");
  check(testlab_quality(p.get(), "demo", path("quality.csv").c_str()), "computing quality");

  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << "classes " << testlab_project_class_count(p.get()) << ", labelled " << labelled
            << ", train " << s.train_rows << ", test " << s.test_rows << ", trivial " << s.trivial
            << ", outliers " << s.outliers << "\n"
            << "test mse " << fmt(sc.mse) << ", r2 "
            << (sc.r2_defined ? fmt(sc.r2) : std::string("undefined")) << "\n"
            << "outputs in " << out.string() << " (" << fmt(secs) << " s)\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"testlab: source metrics, testability labels and testability prediction"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Key-value file supplying any option (key = value)");
  Globals g;
  app.add_option("--seed", g.seed, "Seed for every random choice")->capture_default_str();
  app.add_option("--manifest", g.manifest, "Metric manifest file (default: built-in)");

  ExtractArgs ex;
  auto* c_extract = app.add_subcommand("extract", "Extract the metric vector of every class");
  c_extract->add_option("--project", ex.project, "Project source tree")->required();
  c_extract->add_option("--out", ex.out, "Output feature CSV")->required();

  LabelArgs la;
  auto* c_label = app.add_subcommand("label", "Compute testability labels from coverage runs");
  c_label->add_option("--coverage", la.coverage, "Coverage CSV")->required();
  c_label->add_option("--out", la.out, "Output labels CSV")->required();
  c_label->add_option("--map", la.map, "Rename a coverage column, from=to (repeatable)");

  PrepareArgs pr;
  auto* c_prepare = app.add_subcommand("prepare", "Join, filter, split, clean and scale");
  c_prepare->add_option("--features", pr.features, "Feature CSV from extract")->required();
  c_prepare->add_option("--labels", pr.labels, "Labels CSV from label")->required();
  c_prepare->add_option("--out", pr.out, "Output directory")->required();
  c_prepare->add_option("--variant", pr.variant, "DS1..DS5")->capture_default_str();
  c_prepare->add_option("--train-fraction", pr.train_fraction)
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  c_prepare->add_option("--lof-k", pr.lof_k, "LOF neighbours")->capture_default_str();
  c_prepare->add_option("--lof-threshold", pr.lof_threshold)->capture_default_str();
  c_prepare->add_flag("--no-outliers", pr.no_outliers, "Skip outlier removal");

  TrainArgs tr;
  auto* c_train = app.add_subcommand("train", "Grid search, weight selection and refit");
  c_train->add_option("--data", tr.data, "Directory written by prepare")->required();
  c_train->add_option("--grid", tr.grid, "Grid configuration JSON (default: best values)");
  c_train->add_option("--out", tr.out, "Output model JSON")->required();

  EvalArgs ev;
  auto* c_eval = app.add_subcommand("eval", "Score a model on a prepared dataset");
  c_eval->add_option("--model", ev.model)->required();
  c_eval->add_option("--dataset", ev.dataset, "Prepared dataset such as test.csv")->required();
  c_eval->add_option("--baseline", ev.baseline, "Second model; Welch t-test on squared errors");
  c_eval->add_option("--out", ev.out, "Also write the scores to this file");

  PredictArgs pd;
  auto* c_predict = app.add_subcommand("predict", "Estimate the testability of classes");
  c_predict->add_option("--model", pd.model)->required();
  c_predict->add_option("--project", pd.project)->required();
  c_predict->add_option("--class", pd.cls, "Fully qualified class name");
  c_predict->add_flag("--all", pd.all, "Estimate every class and write CSV");
  c_predict->add_option("--out", pd.out, "CSV for --all (default predictions.csv)");

  ImportanceArgs im;
  auto* c_importance = app.add_subcommand("importance", "Permutation feature importance");
  c_importance->add_option("--model", im.model)->required();
  c_importance->add_option("--dataset", im.dataset)->required();
  c_importance->add_option("--repeats", im.repeats)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_importance->add_option("--top", im.top)->capture_default_str();
  c_importance->add_option("--out", im.out, "Report directory")->required();

  QualityArgs qa;
  auto* c_quality = app.add_subcommand("quality", "QMOOD attributes and modularity");
  c_quality->add_option("--project", qa.project)->required();
  c_quality->add_option("--out", qa.out)->required();
  c_quality->add_option("--name", qa.name, "Project name in the report");

  DemoArgs de;
  auto* c_demo = app.add_subcommand("demo", "Run the whole pipeline on the bundled corpus");
  c_demo->add_option("--corpus", de.corpus)->capture_default_str();
  c_demo->add_option("--grid", de.grid)->capture_default_str();
  c_demo->add_option("--out", de.out)->capture_default_str();
  c_demo->add_option("--repeats", de.repeats, "Importance repeats")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "testlab: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    if (*c_extract) run_extract(g, ex);
    else if (*c_label) run_label(g, la);
    else if (*c_prepare) run_prepare(g, pr);
    else if (*c_train) run_train(g, tr);
    else if (*c_eval) run_eval(g, ev);
    else if (*c_predict) run_predict(g, pd);
    else if (*c_importance) run_importance(g, im);
    else if (*c_quality) run_quality(g, qa);
    else if (*c_demo) run_demo(g, de);
  } catch (const Failure& f) {
    std::cerr << "testlab " << name << ": error: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "testlab " << name << ": error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitOk;
}
