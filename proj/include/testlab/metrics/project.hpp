#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "testlab/metrics/parser.hpp"

namespace testlab::metrics {

/// One named class, interface, enum, record or annotation type. Nested types
/// get their own entry; anonymous and local classes do not.
struct ClassInfo {
  std::string id;  // dotted, e.g. "pkg.Outer.Inner"
  std::string package;
  std::string name;
  const TypeDecl* decl = nullptr;
  std::size_t file = 0;
  std::optional<std::size_t> enclosing;
  std::vector<std::size_t> nested;
};

/// Read-only index over every parsed file of a project.
///
/// Type names resolve in this order: the class itself and types nested in
/// it or its enclosing classes, top-level types of the same file,
/// single-type imports, the same package, on-demand imports. Anything else
/// is external to the project.
class ProjectIndex {
 public:
  explicit ProjectIndex(std::vector<SourceFile> files);
  ProjectIndex(const ProjectIndex&) = delete;
  ProjectIndex& operator=(const ProjectIndex&) = delete;
  ProjectIndex(ProjectIndex&&) = default;
  ProjectIndex& operator=(ProjectIndex&&) = default;

  const std::vector<SourceFile>& files() const { return files_; }
  const std::vector<ClassInfo>& classes() const { return classes_; }
  const ClassInfo& cls(std::size_t i) const { return classes_.at(i); }

  std::optional<std::size_t> find(std::string_view id) const;
  /// Packages in lexicographic order.
  std::vector<std::string> packages() const;
  const std::vector<std::size_t>& classes_in_package(std::string_view package) const;

  /// Resolves a possibly dotted type name as seen from inside class `from`.
  std::optional<std::size_t> resolve(std::string_view name, std::size_t from) const;

 private:
  void add_type(const TypeDecl& t, std::size_t file, const std::string& package,
                const std::string& prefix, std::optional<std::size_t> enclosing);
  std::optional<std::size_t> resolve_simple(std::string_view name, std::size_t from) const;

  std::vector<SourceFile> files_;
  std::vector<ClassInfo> classes_;
  std::map<std::string, std::size_t, std::less<>> by_id_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> by_package_;
};

/// Every `.java` file under `root`, sorted by relative path.
std::vector<std::filesystem::path> list_java_files(const std::filesystem::path& root);

/// Reads, tokenizes and parses a project tree. Files are processed in
/// parallel; the result is ordered by relative path.
ProjectIndex load_project(const std::filesystem::path& root);

}  // namespace testlab::metrics
