#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace testlab {

/// RFC-4180 table: one header row plus data rows of equal width.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index by name; throws MissingMetric when absent.
  std::size_t column(std::string_view name) const;
  bool has_column(std::string_view name) const;
};

/// Parses quoted fields, doubled quotes and CRLF. Lines starting with '#'
/// before the header are skipped so versioned files can carry a banner.
CsvTable parse_csv(std::string_view text);
CsvTable read_csv(const std::filesystem::path& path);

std::string csv_escape(std::string_view field);
std::string to_csv(const CsvTable& table);
void write_csv(const std::filesystem::path& path, const CsvTable& table,
               std::string_view banner = {});

}  // namespace testlab
