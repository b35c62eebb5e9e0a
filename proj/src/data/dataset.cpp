#include "testlab/data/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"
#include "testlab/common/error.hpp"
#include "testlab/common/parallel.hpp"
#include "testlab/common/stats.hpp"
#include "testlab/common/text.hpp"

namespace testlab::data {

void Dataset::validate() const {
  if (class_ids.size() != rows.size() || targets.size() != rows.size()) {
    throw DataError("dataset has " + std::to_string(rows.size()) + " rows but " +
                    std::to_string(class_ids.size()) + " ids and " +
                    std::to_string(targets.size()) + " targets");
  }
  std::set<std::string_view> seen;
  for (const auto& n : feature_names) {
    if (!seen.insert(n).second) throw DataError("duplicate feature name '" + n + "'");
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != feature_names.size()) {
      throw DataError("row " + std::to_string(i + 1) + " ('" + class_ids[i] + "') has " +
                      std::to_string(rows[i].size()) + " values, expected " +
                      std::to_string(feature_names.size()));
    }
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      if (!std::isfinite(rows[i][j])) {
        throw DataError("row " + std::to_string(i + 1) + ", column '" + feature_names[j] +
                        "' is not finite");
      }
    }
    if (!(targets[i] >= 0.0 && targets[i] <= 1.0)) {
      throw DataError("row " + std::to_string(i + 1) + ": target " + format_double(targets[i]) +
                      " is outside [0, 1]");
    }
  }
}

Dataset Dataset::subset(std::span<const std::size_t> row_indices) const {
  Dataset out;
  out.feature_names = feature_names;
  out.class_ids.reserve(row_indices.size());
  out.rows.reserve(row_indices.size());
  out.targets.reserve(row_indices.size());
  for (std::size_t i : row_indices) {
    out.class_ids.push_back(class_ids.at(i));
    out.rows.push_back(rows.at(i));
    out.targets.push_back(targets.at(i));
  }
  return out;
}

Dataset Dataset::select(std::span<const std::string> names) const {
  std::vector<std::size_t> cols;
  cols.reserve(names.size());
  for (const auto& n : names) {
    auto it = std::find(feature_names.begin(), feature_names.end(), n);
    if (it == feature_names.end()) throw MissingMetric("dataset has no column '" + n + "'");
    cols.push_back(static_cast<std::size_t>(it - feature_names.begin()));
  }
  Dataset out;
  out.feature_names.assign(names.begin(), names.end());
  out.class_ids = class_ids;
  out.targets = targets;
  out.rows.reserve(rows.size());
  for (const auto& r : rows) {
    std::vector<double> nr;
    nr.reserve(cols.size());
    for (std::size_t c : cols) nr.push_back(r[c]);
    out.rows.push_back(std::move(nr));
  }
  return out;
}

std::vector<double> Dataset::column(std::size_t j) const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.at(j));
  return out;
}

CsvTable Dataset::to_csv() const {
  CsvTable t;
  t.header.push_back("class_id");
  t.header.insert(t.header.end(), feature_names.begin(), feature_names.end());
  t.header.emplace_back(kTargetColumn);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<std::string> row;
    row.reserve(feature_names.size() + 2);
    row.push_back(class_ids[i]);
    for (double v : rows[i]) row.push_back(format_double(v));
    row.push_back(format_double(targets[i]));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Dataset Dataset::from_csv(const CsvTable& csv) {
  if (csv.header.size() < 2 || csv.header.front() != "class_id" ||
      csv.header.back() != kTargetColumn) {
    throw SchemaMismatch("dataset header must be 'class_id, <features...>, testability'");
  }
  Dataset ds;
  ds.feature_names.assign(csv.header.begin() + 1, csv.header.end() - 1);
  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    const auto& row = csv.rows[r];
    if (row.size() != csv.header.size()) {
      throw DataError("dataset row " + std::to_string(r + 1) + " has " +
                      std::to_string(row.size()) + " fields, expected " +
                      std::to_string(csv.header.size()));
    }
    std::vector<double> values;
    values.reserve(ds.feature_names.size());
    for (std::size_t c = 1; c + 1 < row.size(); ++c) {
      try {
        values.push_back(parse_double(row[c]));
      } catch (const DataError&) {
        throw DataError("dataset row " + std::to_string(r + 1) + ", column '" + csv.header[c] +
                        "': '" + row[c] + "' is not a number");
      }
    }
    ds.class_ids.push_back(row.front());
    ds.rows.push_back(std::move(values));
    try {
      ds.targets.push_back(parse_double(row.back()));
    } catch (const DataError&) {
      throw DataError("dataset row " + std::to_string(r + 1) + ": target '" + row.back() +
                      "' is not a number");
    }
  }
  ds.validate();
  return ds;
}

Dataset Dataset::load(const std::filesystem::path& path) { return from_csv(read_csv(path)); }

void Dataset::save(const std::filesystem::path& path) const {
  write_csv(path, to_csv(), kDatasetBanner);
}

JoinResult join(const metrics::FeatureTable& features,
                const std::map<std::string, double>& labels) {
  JoinResult out;
  out.dataset.feature_names = features.names;
  std::set<std::string_view> matched;
  for (std::size_t i = 0; i < features.rows.size(); ++i) {
    const auto& id = features.class_ids[i];
    auto it = labels.find(id);
    if (it == labels.end()) {
      out.features_without_label.push_back(id);
      continue;
    }
    matched.insert(it->first);
    out.dataset.class_ids.push_back(id);
    out.dataset.rows.push_back(features.rows[i]);
    out.dataset.targets.push_back(it->second);
  }
  for (const auto& [id, _] : labels) {
    if (!matched.contains(id)) out.labels_without_features.push_back(id);
  }
  out.dataset.validate();
  return out;
}

bool is_trivial_class(double loc, double nomnamm, double noia, double nosa) {
  return loc < 5.0 || (nomnamm == 0.0 && noia + nosa > 0.0);
}

namespace {

std::size_t require_column(const Dataset& ds, std::string_view name) {
  auto it = std::find(ds.feature_names.begin(), ds.feature_names.end(), name);
  if (it == ds.feature_names.end()) {
    throw MissingMetric("trivial-class filter needs metric '" + std::string(name) + "'");
  }
  return static_cast<std::size_t>(it - ds.feature_names.begin());
}

}  // namespace

Dataset filter_trivial_classes(const Dataset& ds, std::vector<std::string>* removed) {
  const std::size_t loc = require_column(ds, "CSLOC");
  const std::size_t nomnamm = require_column(ds, "CSNOMNAMM");
  const std::size_t noia = require_column(ds, "CSNOIA");
  const std::size_t nosa = require_column(ds, "CSNOSA");
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const auto& r = ds.rows[i];
    if (is_trivial_class(r[loc], r[nomnamm], r[noia], r[nosa])) {
      if (removed) removed->push_back(ds.class_ids[i]);
    } else {
      keep.push_back(i);
    }
  }
  return ds.subset(keep);
}

Split split(const Dataset& ds, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw InvalidArgument("train fraction must lie strictly between 0 and 1");
  }
  std::vector<std::size_t> order(ds.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  const auto n_train =
      static_cast<std::size_t>(std::floor(static_cast<double>(ds.size()) * train_fraction));
  Split out;
  out.train = ds.subset(std::span(order).first(n_train));
  out.test = ds.subset(std::span(order).subspan(n_train));
  return out;
}

namespace {

double distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double d = a[j] - b[j];
    s += d * d;
  }
  return std::sqrt(s);
}

struct Neighbourhood {
  double k_distance = 0.0;
  std::vector<std::size_t> ids;  // ascending index order
  std::vector<double> dists;
};

}  // namespace

std::vector<double> lof_scores(const Matrix& points, std::size_t k) {
  const std::size_t n = points.size();
  if (k < 1 || k >= n) {
    throw InvalidArgument("LOF needs 1 <= k < n (k = " + std::to_string(k) +
                          ", n = " + std::to_string(n) + ")");
  }
  for (const auto& p : points) {
    if (p.size() != points.front().size()) throw DimensionMismatch("LOF points are ragged");
  }
  std::vector<Neighbourhood> hoods(n);
  parallel_for(n, [&](std::size_t i) {
    std::vector<double> row(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = j == i ? 0.0 : distance(points[i], points[j]);
    std::vector<double> others;
    others.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) others.push_back(row[j]);
    }
    std::nth_element(others.begin(), others.begin() + static_cast<std::ptrdiff_t>(k - 1),
                     others.end());
    auto& h = hoods[i];
    h.k_distance = others[k - 1];
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i && row[j] <= h.k_distance) {
        h.ids.push_back(j);
        h.dists.push_back(row[j]);
      }
    }
  });
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> lrd(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& h = hoods[i];
    double reach = 0.0;
    for (std::size_t t = 0; t < h.ids.size(); ++t) {
      reach += std::max(hoods[h.ids[t]].k_distance, h.dists[t]);
    }
    lrd[i] = reach == 0.0 ? kInf : static_cast<double>(h.ids.size()) / reach;
  }
  std::vector<double> lof(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::isinf(lrd[i])) {
      lof[i] = 1.0;
      continue;
    }
    double s = 0.0;
    for (std::size_t j : hoods[i].ids) s += lrd[j];
    lof[i] = (s / static_cast<double>(hoods[i].ids.size())) / lrd[i];
  }
  return lof;
}

Dataset remove_outliers(const Dataset& ds, std::size_t k, double threshold,
                        std::vector<std::string>* removed) {
  if (std::isinf(threshold) && threshold > 0) return ds;
  const auto scores = lof_scores(ds.rows, k);
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (scores[i] > threshold) {
      if (removed) removed->push_back(ds.class_ids[i]);
    } else {
      keep.push_back(i);
    }
  }
  return ds.subset(keep);
}

ScalerParams fit_scaler(const Dataset& train) {
  ScalerParams p;
  p.names = train.feature_names;
  for (std::size_t j = 0; j < train.dims(); ++j) {
    const auto col = train.column(j);
    const double m = stats::mean(col);
    const double sd = stats::population_sd(col);
    const bool constant = std::adjacent_find(col.begin(), col.end(), std::not_equal_to<>()) ==
                          col.end();
    p.means.push_back(m);
    p.sds.push_back(sd);
    p.degenerate.push_back(constant || sd <= 1e-12 * std::max(1.0, std::fabs(m)));
  }
  return p;
}

void apply_scaler(const ScalerParams& params, std::span<double> row) {
  if (row.size() != params.names.size()) {
    throw DimensionMismatch("scaler expects " + std::to_string(params.names.size()) +
                            " values, got " + std::to_string(row.size()));
  }
  for (std::size_t j = 0; j < row.size(); ++j) {
    row[j] = params.degenerate[j] ? 0.0 : (row[j] - params.means[j]) / params.sds[j];
  }
}

Dataset apply_scaler(const ScalerParams& params, const Dataset& ds) {
  if (ds.feature_names != params.names) {
    throw SchemaMismatch("scaler columns do not match the dataset columns");
  }
  Dataset out = ds;
  for (auto& r : out.rows) apply_scaler(params, r);
  return out;
}

ScalerParams select(const ScalerParams& params, std::span<const std::string> names) {
  ScalerParams out;
  for (const auto& n : names) {
    auto it = std::find(params.names.begin(), params.names.end(), n);
    if (it == params.names.end()) throw MissingMetric("scaler has no column '" + n + "'");
    const auto j = static_cast<std::size_t>(it - params.names.begin());
    out.names.push_back(n);
    out.means.push_back(params.means[j]);
    out.sds.push_back(params.sds[j]);
    out.degenerate.push_back(params.degenerate[j]);
  }
  return out;
}

Variant parse_variant(std::string_view text) {
  static constexpr std::string_view kNames[] = {"DS1", "DS2", "DS3", "DS4", "DS5"};
  for (std::size_t i = 0; i < std::size(kNames); ++i) {
    if (text == kNames[i]) return static_cast<Variant>(i);
  }
  throw UnknownVariant("unknown dataset variant '" + std::string(text) +
                       "' (expected DS1, DS2, DS3, DS4 or DS5)");
}

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::DS1: return "DS1";
    case Variant::DS2: return "DS2";
    case Variant::DS3: return "DS3";
    case Variant::DS4: return "DS4";
    case Variant::DS5: return "DS5";
  }
  return "DS1";
}

std::vector<std::string> variant_columns(const Dataset& train, Variant variant,
                                         const metrics::Manifest& manifest) {
  using metrics::MetricBlock;
  const auto spec_of = [&](const std::string& name) -> const metrics::MetricSpec& {
    auto idx = manifest.index_of(name);
    if (!idx) throw SchemaMismatch("column '" + name + "' is not in the manifest");
    return manifest.metrics()[*idx];
  };
  std::vector<std::string> out;
  switch (variant) {
    case Variant::DS1:
      return train.feature_names;
    case Variant::DS2: {
      std::vector<std::pair<double, std::size_t>> ranked;
      for (std::size_t j = 0; j < train.dims(); ++j) {
        const double r = stats::correlation(train.column(j), train.targets);
        ranked.emplace_back(std::isnan(r) ? 0.0 : std::fabs(r), j);
      }
      std::stable_sort(ranked.begin(), ranked.end(),
                       [](const auto& a, const auto& b) { return a.first > b.first; });
      ranked.resize(std::min(ranked.size(), kSelectedFeatures));
      std::vector<std::size_t> cols;
      for (const auto& [_, j] : ranked) cols.push_back(j);
      std::sort(cols.begin(), cols.end());
      for (std::size_t j : cols) out.push_back(train.feature_names[j]);
      return out;
    }
    case Variant::DS3:
    case Variant::DS4:
    case Variant::DS5:
      for (const auto& name : train.feature_names) {
        const auto& spec = spec_of(name);
        const bool drop = (variant == Variant::DS3 && spec.block == MetricBlock::Context) ||
                          (variant == Variant::DS4 && spec.block != MetricBlock::Class) ||
                          (variant == Variant::DS5 && spec.derived);
        if (!drop) out.push_back(name);
      }
      return out;
  }
  return out;
}

Dataset make_variant(const Dataset& ds, Variant variant, const metrics::Manifest& manifest) {
  const auto cols = variant_columns(ds, variant, manifest);
  return ds.select(cols);
}

Prepared preprocess(const Dataset& train, const Dataset& test, const metrics::Manifest& manifest,
                    const PrepareOptions& options) {
  Prepared out;
  out.manifest_hash = manifest.hash();
  out.variant = options.variant;
  const Dataset inliers =
      remove_outliers(train, options.lof_k, options.lof_threshold, &out.outliers);
  const ScalerParams full = fit_scaler(inliers);
  const Dataset scaled_train = apply_scaler(full, inliers);
  const auto cols = variant_columns(scaled_train, options.variant, manifest);
  out.scaler = select(full, cols);
  out.train = scaled_train.select(cols);
  out.test = apply_scaler(out.scaler, test.select(cols));
  return out;
}

Prepared prepare(const metrics::FeatureTable& features,
                 const std::map<std::string, double>& labels, const metrics::Manifest& manifest,
                 const PrepareOptions& options) {
  auto joined = join(features, labels);
  std::vector<std::string> trivial;
  const Dataset kept = filter_trivial_classes(joined.dataset, &trivial);
  const auto parts = split(kept, options.train_fraction, options.seed);
  Prepared out = preprocess(parts.train, parts.test, manifest, options);
  out.unmatched_features = std::move(joined.features_without_label);
  out.unmatched_labels = std::move(joined.labels_without_features);
  out.trivial = std::move(trivial);
  return out;
}

std::string scaler_to_json(const ScalerParams& params, std::string_view manifest_hash,
                           Variant variant) {
  nlohmann::ordered_json j;
  j["format"] = "testlab-scaler";
  j["version"] = 1;
  j["manifest_hash"] = manifest_hash;
  j["variant"] = to_string(variant);
  j["features"] = params.names;
  j["means"] = params.means;
  j["sds"] = params.sds;
  j["degenerate"] = params.degenerate;
  return j.dump(1) + "\n";
}

ScalerFile scaler_from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.at("format") != "testlab-scaler" || j.at("version") != 1) {
      throw SchemaMismatch("not a testlab scaler file (version 1)");
    }
    ScalerFile f;
    f.manifest_hash = j.at("manifest_hash").get<std::string>();
    f.variant = parse_variant(j.at("variant").get<std::string>());
    f.params.names = j.at("features").get<std::vector<std::string>>();
    f.params.means = j.at("means").get<std::vector<double>>();
    f.params.sds = j.at("sds").get<std::vector<double>>();
    f.params.degenerate = j.at("degenerate").get<std::vector<bool>>();
    const std::size_t d = f.params.names.size();
    if (f.params.means.size() != d || f.params.sds.size() != d || f.params.degenerate.size() != d) {
      throw SchemaMismatch("scaler arrays have different lengths");
    }
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaMismatch(std::string("malformed scaler JSON: ") + e.what());
  }
}

namespace {

void report_list(std::ostringstream& out, std::string_view title,
                 const std::vector<std::string>& ids) {
  out << title << " (" << ids.size() << ")\n";
  for (const auto& id : ids) out << "  " << id << "\n";
}

}  // namespace

void write_prepared(const std::filesystem::path& dir, const Prepared& prepared) {
  std::filesystem::create_directories(dir);
  prepared.train.save(dir / "dataset.csv");
  prepared.test.save(dir / "test.csv");
  write_file(dir / "scaler.json",
             scaler_to_json(prepared.scaler, prepared.manifest_hash, prepared.variant));
  std::ostringstream report;
  report << "# testlab drop report v1\n";
  report << "variant " << to_string(prepared.variant) << "\n";
  report << "train rows " << prepared.train.size() << ", test rows " << prepared.test.size()
         << ", features " << prepared.train.dims() << "\n";
  report_list(report, "features without label", prepared.unmatched_features);
  report_list(report, "labels without features", prepared.unmatched_labels);
  report_list(report, "trivial classes", prepared.trivial);
  report_list(report, "training outliers", prepared.outliers);
  write_file(dir / "drop_report.txt", report.str());
}

}  // namespace testlab::data
