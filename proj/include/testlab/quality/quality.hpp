#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "testlab/common/csv.hpp"
#include "testlab/metrics/class_metrics.hpp"

namespace testlab::quality {

struct DesignMetrics {
  double class_coupling = 0.0;
  double cohesion_among_methods = 0.0;
  double n_public_methods = 0.0;
  double design_size_in_classes = 0.0;
  double n_polymorphic_methods = 0.0;
  double n_hierarchies = 0.0;
  double avg_ancestors = 0.0;
  double n_inherited_methods = 0.0;
};

double reusability(const DesignMetrics& d);
double functionality(const DesignMetrics& d);
double extendibility(const DesignMetrics& d);

/// Directed, weighted graph whose nodes carry a module id in [0, modules).
struct ModuleDependencyGraph {
  std::size_t nodes = 0;
  std::size_t modules = 0;
  std::vector<std::size_t> module_of;
  /// Row-major nodes x nodes adjacency; entries must be finite and >= 0.
  std::vector<double> adjacency;

  ModuleDependencyGraph() = default;
  ModuleDependencyGraph(std::vector<std::size_t> module_of, std::size_t modules);

  double& at(std::size_t i, std::size_t j) { return adjacency[i * nodes + j]; }
  double at(std::size_t i, std::size_t j) const { return adjacency[i * nodes + j]; }
  /// Throws InvalidArgument for bad module ids, sizes or weights.
  void validate() const;
};

/// Q = (1/m) sum_ij (A_ij - k_i^in k_j^out / m) delta(c_i, c_j) with m the
/// number of modules, evaluated as (m E_intra - sum_c Kin_c Kout_c) / m^2.
/// Throws EmptyGraph when there are no nodes or no modules.
double modularity(const ModuleDependencyGraph& g);

/// The part of Q contributed by the pairs inside one module; the
/// contributions of all modules sum to Q.
double module_contribution(const ModuleDependencyGraph& g, std::size_t module);

/// Design metrics over a set of classes of an analysed project. Averages
/// are per class: coupling is CSCBO, cohesion is 1 - LOCM / method pairs
/// (1 when there are no pairs), public methods CSNOPLM, polymorphic
/// methods CSNMO, ancestors CSDIT and inherited methods CSNIM. Design
/// size counts the classes; hierarchies count the classes without a
/// project parent that have at least one project child.
DesignMetrics design_metrics(const metrics::ProjectAnalysis& analysis,
                             const std::vector<std::size_t>& classes);

/// Classes are nodes, packages are modules, an edge i -> j of weight 1
/// means class i references class j or names it as a supertype.
ModuleDependencyGraph dependency_graph(const metrics::ProjectAnalysis& analysis);

struct QualityRow {
  std::string scope;  // "project" or "package"
  std::string name;
  DesignMetrics design;
  double reusability = 0.0;
  double functionality = 0.0;
  double extendibility = 0.0;
  double modularity = 0.0;
};

/// One project row then one row per package in lexicographic order.
/// A package row carries its module contribution to the project Q.
std::vector<QualityRow> assess(const metrics::ProjectAnalysis& analysis,
                               const std::string& project_name);

CsvTable quality_table(const std::vector<QualityRow>& rows);

}  // namespace testlab::quality
