#include "testlab/metrics/sub_metrics.hpp"

#include <algorithm>

#include "testlab/common/error.hpp"
#include "testlab/common/stats.hpp"

namespace testlab::metrics {

FiveStats five_stats(std::span<const double> xs) {
  FiveStats s;
  if (xs.empty()) return s;
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  s.min = *lo;
  s.max = *hi;
  s.sum = stats::sum(xs);
  s.mean = stats::mean(xs);
  s.sd = stats::population_sd(xs);
  // Rounding in the mean must not break min <= mean <= max.
  s.mean = std::clamp(s.mean, s.min, s.max);
  return s;
}

double method_value(const MethodRecord& r, std::string_view variant) {
  if (variant == "LOC") return static_cast<double>(r.loc);
  if (variant == "NOST") return static_cast<double>(r.nost);
  if (variant == "NOP") return static_cast<double>(r.params);
  if (variant == "CC") return static_cast<double>(r.cyclomatic);
  if (variant == "CCModified") return static_cast<double>(r.cyclomatic_modified);
  if (variant == "CCStrict") return static_cast<double>(r.cyclomatic_strict);
  if (variant == "CCEssential") return static_cast<double>(r.essential);
  if (variant == "NESTING") return static_cast<double>(r.nesting);
  if (variant == "PATH") return static_cast<double>(r.paths);
  if (variant == "KNOTS") return static_cast<double>(r.knots);
  throw InvalidArgument("unknown method metric '" + std::string(variant) + "'");
}

std::vector<std::string_view> expand_base(std::string_view base) {
  if (base == "CC") return {kComplexityVariants.begin(), kComplexityVariants.end()};
  if (std::find(kMethodBases.begin(), kMethodBases.end(), base) == kMethodBases.end()) {
    throw InvalidArgument("unknown base metric '" + std::string(base) + "'");
  }
  return {base};
}

std::vector<std::string> sub_metric_names(std::string_view base) {
  std::vector<std::string> names;
  for (auto variant : expand_base(base)) {
    for (auto filter : kMethodFilters) {
      for (auto op : kStatOps) {
        names.push_back(std::string(variant) + "_" + std::string(op) + "_" + std::string(filter));
      }
    }
  }
  return names;
}

std::vector<std::pair<std::string, double>> derive_sub_metrics(
    const std::vector<MethodRecord>& records, std::string_view base) {
  std::vector<std::pair<std::string, double>> out;
  for (auto variant : expand_base(base)) {
    for (auto filter : kMethodFilters) {
      std::vector<double> xs;
      for (const auto& r : records) {
        if (filter == "NAMM" && r.is_accessor_or_mutator) continue;
        xs.push_back(method_value(r, variant));
      }
      const auto values = five_stats(xs).values();
      for (std::size_t i = 0; i < kStatOps.size(); ++i) {
        out.emplace_back(
            std::string(variant) + "_" + std::string(kStatOps[i]) + "_" + std::string(filter),
            values[i]);
      }
    }
  }
  return out;
}

}  // namespace testlab::metrics
