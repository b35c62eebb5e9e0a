#include "testlab/quality/quality.hpp"

#include <cmath>
#include <map>

#include "testlab/common/error.hpp"
#include "testlab/common/text.hpp"
#include "testlab/metrics/project.hpp"

namespace testlab::quality {

double reusability(const DesignMetrics& d) {
  return -0.25 * d.class_coupling + 0.25 * d.cohesion_among_methods + 0.5 * d.n_public_methods +
         0.5 * d.design_size_in_classes;
}

double functionality(const DesignMetrics& d) {
  return 0.12 * d.cohesion_among_methods + 0.22 * d.n_polymorphic_methods +
         0.22 * d.n_public_methods + 0.22 * d.design_size_in_classes + 0.22 * d.n_hierarchies;
}

double extendibility(const DesignMetrics& d) {
  return 0.5 * d.avg_ancestors - 0.5 * d.class_coupling + 0.5 * d.n_inherited_methods +
         0.5 * d.n_polymorphic_methods;
}

ModuleDependencyGraph::ModuleDependencyGraph(std::vector<std::size_t> modules_of,
                                             std::size_t module_count)
    : nodes(modules_of.size()),
      modules(module_count),
      module_of(std::move(modules_of)),
      adjacency(nodes * nodes, 0.0) {}

void ModuleDependencyGraph::validate() const {
  if (module_of.size() != nodes) throw InvalidArgument("module assignment does not cover every node");
  if (adjacency.size() != nodes * nodes) throw InvalidArgument("adjacency matrix has the wrong size");
  for (auto c : module_of) {
    if (c >= modules) throw InvalidArgument("module id " + std::to_string(c) + " out of range");
  }
  for (double a : adjacency) {
    if (!std::isfinite(a) || a < 0.0) throw InvalidArgument("edge weights must be finite and >= 0");
  }
}

namespace {

struct ModuleSums {
  std::vector<double> intra, k_in, k_out;
};

ModuleSums module_sums(const ModuleDependencyGraph& g) {
  if (g.nodes == 0 || g.modules == 0) throw EmptyGraph("module dependency graph is empty");
  g.validate();
  ModuleSums s{std::vector<double>(g.modules, 0.0), std::vector<double>(g.modules, 0.0),
               std::vector<double>(g.modules, 0.0)};
  for (std::size_t i = 0; i < g.nodes; ++i) {
    for (std::size_t j = 0; j < g.nodes; ++j) {
      const double a = g.at(i, j);
      if (a == 0.0) continue;
      s.k_out[g.module_of[i]] += a;
      s.k_in[g.module_of[j]] += a;
      if (g.module_of[i] == g.module_of[j]) s.intra[g.module_of[i]] += a;
    }
  }
  return s;
}

double contribution(const ModuleSums& s, std::size_t c, double m) {
  return m * s.intra[c] - s.k_in[c] * s.k_out[c];
}

}  // namespace

double modularity(const ModuleDependencyGraph& g) {
  const auto s = module_sums(g);
  const auto m = static_cast<double>(g.modules);
  double numerator = 0.0;
  for (std::size_t c = 0; c < g.modules; ++c) numerator += contribution(s, c, m);
  return numerator / (m * m);
}

double module_contribution(const ModuleDependencyGraph& g, std::size_t module) {
  if (module >= g.modules) throw InvalidArgument("module id out of range");
  const auto s = module_sums(g);
  const auto m = static_cast<double>(g.modules);
  return contribution(s, module, m) / (m * m);
}

DesignMetrics design_metrics(const metrics::ProjectAnalysis& analysis,
                             const std::vector<std::size_t>& classes) {
  DesignMetrics d;
  if (classes.empty()) return d;
  const auto metric = [](const metrics::ClassAnalysis& c, std::string_view name) {
    auto it = c.metrics.find(name);
    if (it == c.metrics.end()) throw MissingMetric("class metric " + std::string(name) + " missing");
    return it->second;
  };
  for (auto i : classes) {
    const auto& c = analysis.cls(i);
    d.class_coupling += metric(c, "CSCBO");
    d.cohesion_among_methods +=
        c.method_pairs == 0 ? 1.0
                            : 1.0 - metric(c, "CSLOCM") / static_cast<double>(c.method_pairs);
    d.n_public_methods += metric(c, "CSNOPLM");
    d.n_polymorphic_methods += metric(c, "CSNMO");
    d.avg_ancestors += metric(c, "CSDIT");
    d.n_inherited_methods += metric(c, "CSNIM");
    if (c.parents.empty() && metric(c, "CSNOC") > 0.0) d.n_hierarchies += 1.0;
  }
  const auto n = static_cast<double>(classes.size());
  d.class_coupling /= n;
  d.cohesion_among_methods /= n;
  d.n_public_methods /= n;
  d.n_polymorphic_methods /= n;
  d.avg_ancestors /= n;
  d.n_inherited_methods /= n;
  d.design_size_in_classes = n;
  return d;
}

ModuleDependencyGraph dependency_graph(const metrics::ProjectAnalysis& analysis) {
  const auto& index = analysis.index();
  const auto packages = index.packages();
  std::map<std::string, std::size_t, std::less<>> module_id;
  for (std::size_t p = 0; p < packages.size(); ++p) module_id[packages[p]] = p;
  std::vector<std::size_t> module_of;
  module_of.reserve(index.classes().size());
  for (const auto& c : index.classes()) module_of.push_back(module_id.at(c.package));
  ModuleDependencyGraph g(std::move(module_of), packages.size());
  for (std::size_t i = 0; i < g.nodes; ++i) {
    for (auto j : analysis.cls(i).dependencies) g.at(i, j) = 1.0;
    const auto* decl = index.cls(i).decl;
    for (const auto* supers : {&decl->extends, &decl->implements}) {
      for (const auto& t : *supers) {
        if (auto j = index.resolve(t.name, i); j && *j != i) g.at(i, *j) = 1.0;
      }
    }
  }
  return g;
}

std::vector<QualityRow> assess(const metrics::ProjectAnalysis& analysis,
                               const std::string& project_name) {
  const auto& index = analysis.index();
  const auto fill = [](QualityRow& row) {
    row.reusability = reusability(row.design);
    row.functionality = functionality(row.design);
    row.extendibility = extendibility(row.design);
  };
  std::vector<QualityRow> rows;
  std::vector<std::size_t> all(index.classes().size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;

  QualityRow project{"project", project_name, design_metrics(analysis, all)};
  fill(project);
  const bool has_graph = !all.empty();
  ModuleDependencyGraph g;
  if (has_graph) {
    g = dependency_graph(analysis);
    project.modularity = modularity(g);
  }
  rows.push_back(project);

  const auto packages = index.packages();
  for (std::size_t p = 0; p < packages.size(); ++p) {
    QualityRow row{"package", packages[p],
                   design_metrics(analysis, index.classes_in_package(packages[p]))};
    fill(row);
    if (has_graph) row.modularity = module_contribution(g, p);
    rows.push_back(row);
  }
  return rows;
}

CsvTable quality_table(const std::vector<QualityRow>& rows) {
  CsvTable t;
  t.header = {"scope",
              "name",
              "reusability",
              "functionality",
              "extendibility",
              "modularity",
              "class_coupling",
              "cohesion_among_methods",
              "n_public_methods",
              "design_size_in_classes",
              "n_polymorphic_methods",
              "n_hierarchies",
              "avg_ancestors",
              "n_inherited_methods"};
  for (const auto& r : rows) {
    const auto& d = r.design;
    t.rows.push_back({r.scope, r.name, format_double(r.reusability),
                      format_double(r.functionality), format_double(r.extendibility),
                      format_double(r.modularity), format_double(d.class_coupling),
                      format_double(d.cohesion_among_methods), format_double(d.n_public_methods),
                      format_double(d.design_size_in_classes),
                      format_double(d.n_polymorphic_methods), format_double(d.n_hierarchies),
                      format_double(d.avg_ancestors), format_double(d.n_inherited_methods)});
  }
  return t;
}

}  // namespace testlab::quality
