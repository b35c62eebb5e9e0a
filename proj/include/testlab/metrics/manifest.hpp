#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace testlab::metrics {

enum class MetricBlock { Class, Context, Lexical };

std::string_view to_string(MetricBlock block);

struct MetricSpec {
  std::string name;
  MetricBlock block = MetricBlock::Class;
  /// Produced by applying a statistical operator across methods or classes.
  bool derived = false;

  bool operator==(const MetricSpec&) const = default;
};

/// Ordered metric schema shared by the extractor and every downstream stage.
///
/// Text form:
///   # testlab-manifest v1
///   <name>\t<class|context|lexical>\t<derived|direct>
class Manifest {
 public:
  static constexpr int kVersion = 1;

  Manifest() = default;
  explicit Manifest(std::vector<MetricSpec> metrics);

  const std::vector<MetricSpec>& metrics() const { return metrics_; }
  std::size_t size() const { return metrics_.size(); }
  std::vector<std::string> names() const;
  std::optional<std::size_t> index_of(std::string_view name) const;

  std::string serialize() const;
  /// Throws SchemaError on a bad banner, version, block or duplicate name.
  static Manifest parse(std::string_view text);
  static Manifest load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

  /// FNV-1a of the serialized form.
  std::string hash() const;

  bool operator==(const Manifest& o) const { return metrics_ == o.metrics_; }

 private:
  std::vector<MetricSpec> metrics_;
};

/// The built-in schema: class block (direct CS metrics, then method-derived
/// sub-metrics), package context block, file lexical block.
const Manifest& default_manifest();

}  // namespace testlab::metrics
