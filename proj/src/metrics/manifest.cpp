#include "testlab/metrics/manifest.hpp"

#include <set>

#include "testlab/common/error.hpp"
#include "testlab/common/text.hpp"
#include "testlab/metrics/class_metrics.hpp"
#include "testlab/metrics/lexical.hpp"
#include "testlab/metrics/sub_metrics.hpp"

namespace testlab::metrics {

namespace {

constexpr std::string_view kBanner = "# testlab-manifest v";

MetricBlock parse_block(std::string_view s, std::size_t line) {
  if (s == "class") return MetricBlock::Class;
  if (s == "context") return MetricBlock::Context;
  if (s == "lexical") return MetricBlock::Lexical;
  throw SchemaError("manifest line " + std::to_string(line) + ": unknown block '" +
                    std::string(s) + "'");
}

}  // namespace

std::string_view to_string(MetricBlock block) {
  switch (block) {
    case MetricBlock::Class:
      return "class";
    case MetricBlock::Context:
      return "context";
    case MetricBlock::Lexical:
      return "lexical";
  }
  return "class";
}

Manifest::Manifest(std::vector<MetricSpec> metrics) : metrics_(std::move(metrics)) {
  std::set<std::string_view> seen;
  for (const auto& m : metrics_) {
    if (m.name.empty()) throw SchemaError("manifest contains an empty metric name");
    if (!seen.insert(m.name).second) {
      throw SchemaError("manifest lists '" + m.name + "' twice");
    }
  }
}

std::vector<std::string> Manifest::names() const {
  std::vector<std::string> out;
  out.reserve(metrics_.size());
  for (const auto& m : metrics_) out.push_back(m.name);
  return out;
}

std::optional<std::size_t> Manifest::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < metrics_.size(); ++i) {
    if (metrics_[i].name == name) return i;
  }
  return std::nullopt;
}

std::string Manifest::serialize() const {
  std::string out = std::string(kBanner) + std::to_string(kVersion) + "\n";
  for (const auto& m : metrics_) {
    out += m.name;
    out += '\t';
    out += to_string(m.block);
    out += '\t';
    out += m.derived ? "derived" : "direct";
    out += '\n';
  }
  return out;
}

Manifest Manifest::parse(std::string_view text) {
  const auto lines = split(text, '\n');
  if (lines.empty() || !starts_with(trim(lines[0]), kBanner)) {
    throw SchemaError("manifest is missing its '# testlab-manifest v1' banner");
  }
  const auto version = trim(lines[0]).substr(kBanner.size());
  if (version != std::to_string(kVersion)) {
    throw SchemaError("unsupported manifest version '" + std::string(version) + "'");
  }
  std::vector<MetricSpec> metrics;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto line = trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;
    const auto cols = split(line, '\t');
    if (cols.size() != 3) {
      throw SchemaError("manifest line " + std::to_string(i + 1) + ": expected 3 tab-separated fields");
    }
    MetricSpec spec;
    spec.name = std::string(trim(cols[0]));
    spec.block = parse_block(trim(cols[1]), i + 1);
    const auto kind = trim(cols[2]);
    if (kind != "derived" && kind != "direct") {
      throw SchemaError("manifest line " + std::to_string(i + 1) + ": expected derived|direct");
    }
    spec.derived = kind == "derived";
    metrics.push_back(std::move(spec));
  }
  return Manifest(std::move(metrics));
}

Manifest Manifest::load(const std::filesystem::path& path) { return parse(read_file(path)); }

void Manifest::save(const std::filesystem::path& path) const { write_file(path, serialize()); }

std::string Manifest::hash() const { return hash_hex(fnv1a64(serialize())); }

const Manifest& default_manifest() {
  static const Manifest manifest = [] {
    std::vector<MetricSpec> m;
    for (auto name : kClassDirectMetrics) m.push_back({std::string(name), MetricBlock::Class, false});
    for (auto base : kMethodBases) {
      for (auto& name : sub_metric_names(base)) m.push_back({name, MetricBlock::Class, true});
    }
    for (auto base : kPackageStatBases) {
      for (auto op : kStatOps) {
        m.push_back({std::string(base) + "_" + std::string(op), MetricBlock::Context, true});
      }
    }
    for (auto name : kPackageSumMetrics) m.push_back({std::string(name), MetricBlock::Context, false});
    for (auto name : kPackageCounters) m.push_back({std::string(name), MetricBlock::Context, false});
    for (auto name : LexicalMetrics::kNames) {
      m.push_back({"CS" + std::string(name), MetricBlock::Lexical, false});
    }
    return Manifest(std::move(m));
  }();
  return manifest;
}

}  // namespace testlab::metrics
