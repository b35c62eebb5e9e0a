#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "testlab/common/csv.hpp"

namespace testlab::label {

/// Dynamic measurements of one class, possibly averaged over several runs.
struct CoverageRecord {
  std::string class_id;
  /// Criterion name to coverage level in [0, 1], in file column order.
  std::vector<std::pair<std::string, double>> criteria;
  /// Influential tests in the minimized suite; real-valued after averaging.
  double suite_size = 0;
  double nom = 1;
  /// Generation time in minutes.
  double gen_time = 0;
};

struct TestabilityScore {
  std::string class_id;
  double t_q = 0;  // effectiveness
  double t_e = 1;  // effort
  double t_p = 1;  // efficiency, 1 / t_e
  double testability = 0;
};

/// Throws DataError when a coverage level leaves [0, 1], nom < 1, or
/// suite size or time is negative; EmptyCriteria without criteria.
void validate(const CoverageRecord& r);

/// Mean coverage level over the criteria.
double test_effectiveness(const CoverageRecord& r);

/// max(0, (t - 1) / |tau|). Throws ZeroSuite when the suite is empty.
double omega(const CoverageRecord& r);

/// (1 + omega)^(ceil(|tau| / NOM) - 1), or 1 for an empty suite.
double test_effort(const CoverageRecord& r);

/// T = clamp(T_Q / T_E, 0, 1).
TestabilityScore testability(const CoverageRecord& r);

/// Mean testability of a component's classes; throws EmptyComponent.
double component_testability(std::span<const TestabilityScore> scores);

/// Field-wise mean of several runs of one class. Throws KeyMismatch when
/// class ids or criterion sets differ, DataError for an empty input.
CoverageRecord average_runs(std::span<const CoverageRecord> runs);

/// Column names of a coverage file that are not criteria.
inline constexpr const char* kCoverageFixedColumns[] = {"class_id", "run_id", "suite_size", "nom",
                                                        "gen_time_minutes"};

/// Parses `class_id, run_id, <criteria...>, suite_size, nom,
/// gen_time_minutes`, validates each row (errors name the row and column)
/// and averages runs per class. `rename` maps file column names onto the
/// expected ones. Classes keep their first-appearance order.
std::vector<CoverageRecord> read_coverage(const CsvTable& table,
                                          const std::map<std::string, std::string>& rename = {});

/// `class_id, t_q, t_e, testability`.
CsvTable labels_table(std::span<const TestabilityScore> scores);

/// class_id -> testability from a labels table.
std::map<std::string, double> read_labels(const CsvTable& table);

}  // namespace testlab::label
