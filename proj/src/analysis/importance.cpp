#include "testlab/analysis/importance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "testlab/common/csv.hpp"
#include "testlab/common/error.hpp"
#include "testlab/common/parallel.hpp"
#include "testlab/common/stats.hpp"
#include "testlab/common/text.hpp"
#include "testlab/learn/evaluation.hpp"

namespace testlab::analysis {

std::vector<double> PermutationImportance::means() const {
  std::vector<double> out;
  out.reserve(drops.size());
  for (const auto& d : drops) out.push_back(d.empty() ? 0.0 : stats::mean(d));
  return out;
}

PermutationImportance permutation_importance(const learn::Regressor& model,
                                             const learn::Samples& test, std::size_t repeats,
                                             std::uint64_t seed) {
  if (test.d != model.dims()) {
    throw DimensionMismatch("model expects " + std::to_string(model.dims()) +
                            " features but the test set has " + std::to_string(test.d));
  }
  const auto base = learn::evaluate(model.predict_all(test), test.y);
  if (!base.r2_defined) throw DataError("test targets are constant; R^2 is undefined");

  PermutationImportance result;
  result.baseline_r2 = base.r2;
  result.drops.assign(test.d, std::vector<double>(repeats, 0.0));
  parallel_for(test.d * repeats, [&](std::size_t task) {
    const std::size_t j = task / repeats;
    const std::size_t r = task % repeats;
    std::vector<double> column(test.n);
    for (std::size_t i = 0; i < test.n; ++i) column[i] = test.at(i, j);
    std::mt19937_64 rng(stats::mix_seed(seed, task));
    std::shuffle(column.begin(), column.end(), rng);
    learn::Samples shuffled = test;
    for (std::size_t i = 0; i < test.n; ++i) shuffled.x[i * test.d + j] = column[i];
    result.drops[j][r] = base.r2 - learn::evaluate(model.predict_all(shuffled), test.y).r2;
  });
  return result;
}

std::vector<std::size_t> rank_features(std::span<const double> mean_importance,
                                       std::span<const std::string> names, std::size_t k) {
  if (mean_importance.size() != names.size()) {
    throw DimensionMismatch("importances and names differ in length");
  }
  std::vector<std::size_t> order(names.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (mean_importance[a] != mean_importance[b]) return mean_importance[a] > mean_importance[b];
    return names[a] < names[b];
  });
  if (order.size() > k) order.resize(k);
  return order;
}

Correlation pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DimensionMismatch("pearson inputs differ in length");
  if (x.size() < 3) throw InvalidArgument("pearson needs at least 3 pairs");
  const auto constant = [](std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double e) { return e == v.front(); });
  };
  if (constant(x) || constant(y)) throw ConstantInput("pearson input is constant");
  Correlation c;
  c.r = stats::correlation(x, y);
  const double n = static_cast<double>(x.size());
  if (std::fabs(c.r) >= 1.0) {
    c.p = 0.0;
  } else {
    const double t = c.r * std::sqrt((n - 2.0) / (1.0 - c.r * c.r));
    c.p = stats::student_t_two_sided_p(t, n - 2.0);
  }
  return c;
}

namespace {

struct Summary {
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0, mean = 0, sd = 0;
};

double quantile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

Summary summarize(std::vector<double> v) {
  Summary s;
  if (v.empty()) return s;
  std::sort(v.begin(), v.end());
  s.min = v.front();
  s.max = v.back();
  s.q1 = quantile(v, 0.25);
  s.median = quantile(v, 0.5);
  s.q3 = quantile(v, 0.75);
  s.mean = stats::mean(v);
  s.sd = stats::population_sd(v);
  return s;
}

std::string num(double v) { return std::isfinite(v) ? format_double(v) : std::string(); }

std::string svg_num(double v) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(2);
  os << v;
  return os.str();
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::vector<double> min_max(const std::vector<double>& v) {
  std::vector<double> out(v.size(), 0.0);
  if (v.empty()) return out;
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  const double range = *hi - *lo;
  if (range <= 0.0) return out;
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = (v[i] - *lo) / range;
  return out;
}

std::string box_plot_svg(const std::vector<std::string>& labels,
                         const std::vector<Summary>& boxes) {
  const double row = 24, left = 220, width = 420, top = 30;
  const double height = top + row * static_cast<double>(boxes.size()) + 30;
  double lo = 0.0, hi = 0.0;
  for (const auto& b : boxes) {
    lo = std::min(lo, b.min);
    hi = std::max(hi, b.max);
  }
  if (hi <= lo) hi = lo + 1.0;
  const auto xpos = [&](double v) { return left + (v - lo) / (hi - lo) * width; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << svg_num(left + width + 40)
     << "\" height=\"" << svg_num(height) << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  os << "<text x=\"" << svg_num(left) << "\" y=\"16\">R^2 drop per shuffle</text>\n";
  os << "<line x1=\"" << svg_num(xpos(0)) << "\" y1=\"" << svg_num(top - 6) << "\" x2=\""
     << svg_num(xpos(0)) << "\" y2=\"" << svg_num(height - 24)
     << "\" stroke=\"#999\" stroke-dasharray=\"3,3\"/>\n";
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    const auto& b = boxes[i];
    const double y = top + row * static_cast<double>(i) + row / 2;
    os << "<text x=\"" << svg_num(left - 8) << "\" y=\"" << svg_num(y + 4)
       << "\" text-anchor=\"end\">" << xml_escape(labels[i]) << "</text>\n";
    os << "<line x1=\"" << svg_num(xpos(b.min)) << "\" y1=\"" << svg_num(y) << "\" x2=\""
       << svg_num(xpos(b.max)) << "\" y2=\"" << svg_num(y) << "\" stroke=\"#333\"/>\n";
    os << "<rect x=\"" << svg_num(xpos(b.q1)) << "\" y=\"" << svg_num(y - 7) << "\" width=\""
       << svg_num(std::max(1.0, xpos(b.q3) - xpos(b.q1)))
       << "\" height=\"14\" fill=\"#8ab\" stroke=\"#333\"/>\n";
    os << "<line x1=\"" << svg_num(xpos(b.median)) << "\" y1=\"" << svg_num(y - 7) << "\" x2=\""
       << svg_num(xpos(b.median)) << "\" y2=\"" << svg_num(y + 7)
       << "\" stroke=\"#000\" stroke-width=\"2\"/>\n";
  }
  os << "<text x=\"" << svg_num(left) << "\" y=\"" << svg_num(height - 8) << "\">"
     << svg_num(lo) << "</text>\n";
  os << "<text x=\"" << svg_num(left + width) << "\" y=\"" << svg_num(height - 8)
     << "\" text-anchor=\"end\">" << svg_num(hi) << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

std::string scatter_svg(const std::vector<std::string>& labels,
                        const std::vector<std::vector<double>>& xs,
                        const std::vector<double>& ys) {
  const double cell = 160, pad = 28;
  const std::size_t cols = 5;
  const std::size_t rows = (labels.size() + cols - 1) / cols;
  const auto width = static_cast<double>(cols) * (cell + pad) + pad;
  const auto height = static_cast<double>(rows) * (cell + pad + 14) + pad;
  const auto yn = min_max(ys);

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << svg_num(width) << "\" height=\""
     << svg_num(height) << "\" font-family=\"sans-serif\" font-size=\"10\">\n";
  for (std::size_t k = 0; k < labels.size(); ++k) {
    const double ox = pad + static_cast<double>(k % cols) * (cell + pad);
    const double oy = pad + static_cast<double>(k / cols) * (cell + pad + 14);
    os << "<text x=\"" << svg_num(ox) << "\" y=\"" << svg_num(oy - 4) << "\">"
       << xml_escape(labels[k]) << "</text>\n";
    os << "<rect x=\"" << svg_num(ox) << "\" y=\"" << svg_num(oy) << "\" width=\""
       << svg_num(cell) << "\" height=\"" << svg_num(cell)
       << "\" fill=\"none\" stroke=\"#999\"/>\n";
    for (std::size_t i = 0; i < xs[k].size(); ++i) {
      os << "<circle cx=\"" << svg_num(ox + xs[k][i] * cell) << "\" cy=\""
         << svg_num(oy + (1.0 - yn[i]) * cell) << "\" r=\"1.5\" fill=\"#36c\"/>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace

std::size_t write_importance_report(const std::filesystem::path& dir, const ReportInput& in) {
  const std::size_t d = in.names.size();
  if (in.importance.drops.size() != d || in.columns.size() != d) {
    throw DimensionMismatch("importance report inputs are not aligned on feature names");
  }
  for (const auto& c : in.columns) {
    if (c.size() != in.targets.size()) {
      throw DimensionMismatch("feature column and target lengths differ");
    }
  }
  std::filesystem::create_directories(dir);

  const auto means = in.importance.means();
  const auto ranked = rank_features(means, in.names, in.top);

  CsvTable summary;
  summary.header = {"rank", "feature", "mean", "sd", "min", "q1", "median", "q3", "max",
                    "pearson_r", "pearson_p"};
  CsvTable samples;
  samples.header = {"feature", "repeat", "r2_drop"};
  CsvTable scatter;
  scatter.header = {"feature", "row", "value_normalized", "testability"};

  std::vector<std::string> labels;
  std::vector<Summary> boxes;
  std::vector<std::vector<double>> normalized;
  for (std::size_t rank = 0; rank < ranked.size(); ++rank) {
    const std::size_t j = ranked[rank];
    const auto s = summarize(in.importance.drops[j]);
    double r = std::numeric_limits<double>::quiet_NaN();
    double p = std::numeric_limits<double>::quiet_NaN();
    try {
      const auto c = pearson(in.columns[j], in.targets);
      r = c.r;
      p = c.p;
    } catch (const Error&) {
      // Constant or too short: left blank in the table.
    }
    summary.rows.push_back({std::to_string(rank + 1), in.names[j], num(s.mean), num(s.sd),
                            num(s.min), num(s.q1), num(s.median), num(s.q3), num(s.max), num(r),
                            num(p)});
    for (std::size_t k = 0; k < in.importance.drops[j].size(); ++k) {
      samples.rows.push_back({in.names[j], std::to_string(k), num(in.importance.drops[j][k])});
    }
    normalized.push_back(min_max(in.columns[j]));
    for (std::size_t i = 0; i < in.targets.size(); ++i) {
      scatter.rows.push_back(
          {in.names[j], std::to_string(i), num(normalized.back()[i]), num(in.targets[i])});
    }
    labels.push_back(in.names[j]);
    boxes.push_back(s);
  }
  write_csv(dir / "importance.csv", summary);
  write_csv(dir / "importance_samples.csv", samples);
  write_csv(dir / "scatter.csv", scatter);
  write_file(dir / "importance.svg", box_plot_svg(labels, boxes));
  write_file(dir / "scatter.svg", scatter_svg(labels, normalized, in.targets));
  return ranked.size();
}

}  // namespace testlab::analysis
