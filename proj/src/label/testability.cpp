#include "testlab/label/testability.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "testlab/common/error.hpp"
#include "testlab/common/text.hpp"

namespace testlab::label {

namespace {

bool is_fixed_column(const std::string& name) {
  for (const char* c : kCoverageFixedColumns) {
    if (name == c) return true;
  }
  return false;
}

std::string at_row(std::size_t row, const std::string& column) {
  return "coverage row " + std::to_string(row) + ", column '" + column + "'";
}

}  // namespace

void validate(const CoverageRecord& r) {
  if (r.criteria.empty()) throw EmptyCriteria("class '" + r.class_id + "' has no coverage criteria");
  for (const auto& [name, level] : r.criteria) {
    if (!(level >= 0.0 && level <= 1.0)) {
      throw DataError("class '" + r.class_id + "': coverage '" + name + "' = " +
                      format_double(level) + " is outside [0, 1]");
    }
  }
  if (!(r.nom >= 1.0)) throw DataError("class '" + r.class_id + "': nom must be at least 1");
  if (!(r.suite_size >= 0.0)) throw DataError("class '" + r.class_id + "': negative suite size");
  if (!(r.gen_time >= 0.0)) throw DataError("class '" + r.class_id + "': negative generation time");
}

double test_effectiveness(const CoverageRecord& r) {
  if (r.criteria.empty()) throw EmptyCriteria("class '" + r.class_id + "' has no coverage criteria");
  double total = 0;
  for (const auto& [name, level] : r.criteria) total += level;
  return total / static_cast<double>(r.criteria.size());
}

double omega(const CoverageRecord& r) {
  if (r.suite_size == 0) throw ZeroSuite("class '" + r.class_id + "' has an empty test suite");
  return std::max(0.0, (r.gen_time - 1.0) / r.suite_size);
}

double test_effort(const CoverageRecord& r) {
  if (r.nom < 1) throw DataError("class '" + r.class_id + "': nom must be at least 1");
  if (r.suite_size == 0) return 1.0;
  const double exponent = std::ceil(r.suite_size / r.nom) - 1.0;
  return std::pow(1.0 + omega(r), exponent);
}

TestabilityScore testability(const CoverageRecord& r) {
  TestabilityScore s;
  s.class_id = r.class_id;
  s.t_q = test_effectiveness(r);
  s.t_e = test_effort(r);
  s.t_p = 1.0 / s.t_e;
  s.testability = std::clamp(s.t_q / s.t_e, 0.0, 1.0);
  return s;
}

double component_testability(std::span<const TestabilityScore> scores) {
  if (scores.empty()) throw EmptyComponent("component has no classes");
  double total = 0;
  for (const auto& s : scores) total += s.testability;
  return total / static_cast<double>(scores.size());
}

CoverageRecord average_runs(std::span<const CoverageRecord> runs) {
  if (runs.empty()) throw DataError("no runs to average");
  CoverageRecord out = runs[0];
  const double k = static_cast<double>(runs.size());
  for (std::size_t i = 1; i < runs.size(); ++i) {
    const auto& r = runs[i];
    if (r.class_id != out.class_id) {
      throw KeyMismatch("cannot average runs of '" + out.class_id + "' and '" + r.class_id + "'");
    }
    if (r.criteria.size() != out.criteria.size()) {
      throw KeyMismatch("runs of '" + out.class_id + "' report different criteria");
    }
    for (std::size_t c = 0; c < r.criteria.size(); ++c) {
      if (r.criteria[c].first != out.criteria[c].first) {
        throw KeyMismatch("runs of '" + out.class_id + "' report different criteria");
      }
      out.criteria[c].second += r.criteria[c].second;
    }
    out.suite_size += r.suite_size;
    out.nom += r.nom;
    out.gen_time += r.gen_time;
  }
  for (auto& [name, level] : out.criteria) level /= k;
  out.suite_size /= k;
  out.nom /= k;
  out.gen_time /= k;
  return out;
}

std::vector<CoverageRecord> read_coverage(const CsvTable& table,
                                          const std::map<std::string, std::string>& rename) {
  std::vector<std::string> header = table.header;
  for (auto& h : header) {
    if (auto it = rename.find(h); it != rename.end()) h = it->second;
  }
  CsvTable t{header, {}};
  for (const char* required : {"class_id", "suite_size", "nom", "gen_time_minutes"}) {
    if (!t.has_column(required)) {
      throw SchemaError(std::string("coverage file lacks the '") + required + "' column");
    }
  }
  std::vector<std::size_t> criteria_cols;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (!is_fixed_column(header[c])) criteria_cols.push_back(c);
  }
  if (criteria_cols.empty()) throw EmptyCriteria("coverage file has no criterion columns");
  const std::size_t id_col = t.column("class_id");
  const std::size_t suite_col = t.column("suite_size");
  const std::size_t nom_col = t.column("nom");
  const std::size_t time_col = t.column("gen_time_minutes");

  std::vector<std::string> order;
  std::map<std::string, std::vector<CoverageRecord>> runs;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::size_t row_no = r + 1;
    auto number = [&](std::size_t col) {
      try {
        return parse_double(row[col]);
      } catch (const DataError&) {
        throw DataError(at_row(row_no, header[col]) + ": '" + row[col] + "' is not a number");
      }
    };
    CoverageRecord rec;
    rec.class_id = std::string(trim(row[id_col]));
    if (rec.class_id.empty()) throw DataError(at_row(row_no, "class_id") + ": empty class id");
    for (auto c : criteria_cols) {
      const double level = number(c);
      if (!(level >= 0.0 && level <= 1.0)) {
        throw DataError(at_row(row_no, header[c]) + ": coverage level " + row[c] +
                        " is outside [0, 1]");
      }
      rec.criteria.emplace_back(header[c], level);
    }
    rec.suite_size = number(suite_col);
    if (!(rec.suite_size >= 0)) throw DataError(at_row(row_no, "suite_size") + ": must be >= 0");
    rec.nom = number(nom_col);
    if (!(rec.nom >= 1)) throw DataError(at_row(row_no, "nom") + ": must be >= 1");
    rec.gen_time = number(time_col);
    if (!(rec.gen_time >= 0)) {
      throw DataError(at_row(row_no, "gen_time_minutes") + ": must be >= 0");
    }
    auto& bucket = runs[rec.class_id];
    if (bucket.empty()) order.push_back(rec.class_id);
    bucket.push_back(std::move(rec));
  }
  std::vector<CoverageRecord> out;
  out.reserve(order.size());
  for (const auto& id : order) out.push_back(average_runs(runs[id]));
  return out;
}

CsvTable labels_table(std::span<const TestabilityScore> scores) {
  CsvTable t;
  t.header = {"class_id", "t_q", "t_e", "testability"};
  for (const auto& s : scores) {
    t.rows.push_back(
        {s.class_id, format_double(s.t_q), format_double(s.t_e), format_double(s.testability)});
  }
  return t;
}

std::map<std::string, double> read_labels(const CsvTable& table) {
  const std::size_t id_col = table.column("class_id");
  const std::size_t t_col = table.column("testability");
  std::map<std::string, double> out;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    double v = 0;
    try {
      v = parse_double(row[t_col]);
    } catch (const DataError&) {
      throw DataError("labels row " + std::to_string(r + 1) + ", column 'testability': '" +
                      row[t_col] + "' is not a number");
    }
    if (!(v >= 0.0 && v <= 1.0)) {
      throw DataError("labels row " + std::to_string(r + 1) +
                      ", column 'testability': value outside [0, 1]");
    }
    if (!out.emplace(row[id_col], v).second) {
      throw DataError("labels row " + std::to_string(r + 1) + ": duplicate class '" + row[id_col] + "'");
    }
  }
  return out;
}

}  // namespace testlab::label
