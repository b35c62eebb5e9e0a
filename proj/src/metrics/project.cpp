#include "testlab/metrics/project.hpp"

#include <algorithm>

#include "testlab/common/error.hpp"
#include "testlab/common/parallel.hpp"
#include "testlab/common/text.hpp"

namespace testlab::metrics {

namespace fs = std::filesystem;

ProjectIndex::ProjectIndex(std::vector<SourceFile> files) : files_(std::move(files)) {
  for (std::size_t f = 0; f < files_.size(); ++f) {
    const auto& unit = files_[f].unit;
    for (const auto& t : unit.types) {
      add_type(*t, f, unit.package_name, unit.package_name, std::nullopt);
    }
  }
}

void ProjectIndex::add_type(const TypeDecl& t, std::size_t file, const std::string& package,
                            const std::string& prefix, std::optional<std::size_t> enclosing) {
  ClassInfo info;
  info.id = prefix.empty() ? t.name : prefix + "." + t.name;
  info.package = package;
  info.name = t.name;
  info.decl = &t;
  info.file = file;
  info.enclosing = enclosing;
  if (by_id_.count(info.id)) {
    throw SchemaError("duplicate class '" + info.id + "' in " + files_[file].path);
  }
  const std::size_t self = classes_.size();
  by_id_.emplace(info.id, self);
  by_package_[package].push_back(self);
  const std::string id = info.id;
  classes_.push_back(std::move(info));
  if (enclosing) classes_[*enclosing].nested.push_back(self);
  for (const auto& n : t.nested) add_type(*n, file, package, id, self);
}

std::optional<std::size_t> ProjectIndex::find(std::string_view id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> ProjectIndex::packages() const {
  std::vector<std::string> out;
  for (const auto& [name, members] : by_package_) out.push_back(name);
  return out;
}

const std::vector<std::size_t>& ProjectIndex::classes_in_package(std::string_view package) const {
  static const std::vector<std::size_t> none;
  auto it = by_package_.find(package);
  return it == by_package_.end() ? none : it->second;
}

std::optional<std::size_t> ProjectIndex::resolve_simple(std::string_view name,
                                                        std::size_t from) const {
  for (std::optional<std::size_t> c = from; c; c = classes_[*c].enclosing) {
    const auto& info = classes_[*c];
    if (info.name == name) return *c;
    for (auto n : info.nested) {
      if (classes_[n].name == name) return n;
    }
  }
  const auto& here = classes_[from];
  const auto& unit = files_[here.file].unit;
  for (const auto& t : unit.types) {
    if (t->name == name) return find(here.package.empty() ? t->name : here.package + "." + t->name);
  }
  for (const auto& imp : unit.imports) {
    if (imp.is_static || imp.on_demand) continue;
    const auto dot = imp.name.rfind('.');
    const std::string_view last =
        dot == std::string::npos ? std::string_view(imp.name) : std::string_view(imp.name).substr(dot + 1);
    if (last == name) return find(imp.name);
  }
  const std::string same_package =
      here.package.empty() ? std::string(name) : here.package + "." + std::string(name);
  if (auto hit = find(same_package)) return hit;
  for (const auto& imp : unit.imports) {
    if (imp.is_static || !imp.on_demand) continue;
    if (auto hit = find(imp.name + "." + std::string(name))) return hit;
  }
  return std::nullopt;
}

std::optional<std::size_t> ProjectIndex::resolve(std::string_view name, std::size_t from) const {
  if (name.empty()) return std::nullopt;
  const auto dot = name.find('.');
  if (dot == std::string_view::npos) return resolve_simple(name, from);
  if (auto head = resolve_simple(name.substr(0, dot), from)) {
    if (auto hit = find(classes_[*head].id + std::string(name.substr(dot)))) return hit;
  }
  return find(name);
}

std::vector<fs::path> list_java_files(const fs::path& root) {
  if (!fs::is_directory(root)) throw IoError("project directory not found: " + root.string());
  std::vector<fs::path> out;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_regular_file() && entry.path().extension() == ".java") {
      out.push_back(fs::relative(entry.path(), root));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const fs::path& a, const fs::path& b) { return a.generic_string() < b.generic_string(); });
  return out;
}

ProjectIndex load_project(const fs::path& root) {
  const auto paths = list_java_files(root);
  std::vector<SourceFile> files(paths.size());
  parallel_for(paths.size(), [&](std::size_t i) {
    files[i] = parse_source(paths[i].generic_string(), read_file(root / paths[i]));
  });
  return ProjectIndex(std::move(files));
}

}  // namespace testlab::metrics
