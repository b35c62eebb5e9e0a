#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "testlab/metrics/method_metrics.hpp"

namespace testlab::metrics {

inline constexpr std::array<std::string_view, 5> kStatOps = {"Min", "Max", "Mean", "Sum", "SD"};
inline constexpr std::array<std::string_view, 2> kMethodFilters = {"All", "NAMM"};

/// Method-level base metrics in manifest order. "CC" stands for the four
/// complexity variants CC, CCModified, CCStrict and CCEssential.
inline constexpr std::array<std::string_view, 7> kMethodBases = {"LOC",     "NOST",  "NOP", "CC",
                                                                 "NESTING", "PATH", "KNOTS"};
inline constexpr std::array<std::string_view, 4> kComplexityVariants = {
    "CC", "CCModified", "CCStrict", "CCEssential"};

struct FiveStats {
  double min = 0;
  double max = 0;
  double mean = 0;
  double sum = 0;
  double sd = 0;  // population

  std::array<double, 5> values() const { return {min, max, mean, sum, sd}; }
};

/// Statistics over `xs`; an empty set yields all zeros.
FiveStats five_stats(std::span<const double> xs);

/// Value of a single-variant metric for one method, e.g. "LOC" or "CCStrict".
/// Throws InvalidArgument for unknown names.
double method_value(const MethodRecord& r, std::string_view variant);

/// The 1 or 4 single-variant metrics a base expands to.
std::vector<std::string_view> expand_base(std::string_view base);

/// Names `<Variant>_<Op>_<Filter>` of a base, in derivation order.
std::vector<std::string> sub_metric_names(std::string_view base);

/// Applies the five operators to every variant of `base`, over all methods
/// and over the non-accessor/mutator methods (NAMM).
std::vector<std::pair<std::string, double>> derive_sub_metrics(
    const std::vector<MethodRecord>& records, std::string_view base);

}  // namespace testlab::metrics
