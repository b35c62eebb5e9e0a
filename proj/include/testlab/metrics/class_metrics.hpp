#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "testlab/metrics/lexical.hpp"
#include "testlab/metrics/method_metrics.hpp"
#include "testlab/metrics/project.hpp"

namespace testlab::metrics {

using MetricMap = std::map<std::string, double, std::less<>>;

/// Class-level metrics computed directly (not derived from methods).
///
/// Size: CSLOC counts code lines of the class minus those of its named
/// nested types; CSNOM includes constructors; CSNOIM excludes them;
/// enum constants count as static attributes; interface fields are static.
///
/// Coupling is measured over the class's own members plus any anonymous or
/// local class bodies they contain:
///  - CSCBO: distinct project types referenced (fields, parameters, returns,
///    locals, instantiations, casts, static calls), excluding itself.
///  - CSFANOUT: distinct project classes whose methods or constructors are
///    invoked; CSFANIN is its inverse over the project.
///  - CSDEPENDS: distinct referenced types, resolved or not;
///    CSDEPENDSBY counts project classes that reference this one.
///  - CSRFC: CSNOM plus distinct invoked methods.
///  - CSDAC: attributes whose declared type is a project class.
///  - CSATFD: distinct foreign attributes read directly or via accessors.
///  - CSCFNAMM: distinct foreign non-accessor methods called.
///  - CSLOCM: LCOM1, pairs of non-constructor methods with bodies that use
///    no common attribute of this class.
///
/// Visibility counts methods and constructors: CSNODM package-private,
/// CSNOPM protected, CSNOPRM private, CSNOPLM public, CSNOAMM accessors
/// and mutators.
///
/// Inheritance: CSDIT is 0 without an extends clause, 1 above an external
/// parent and 1 + DIT(P) above a project parent P. CSNOP counts the types in
/// the extends clause, CSNOII those in the implements clause. CSNOC counts
/// project types that extend or implement this one. CSNIM counts non-private
/// methods inherited along the extends chain and not overridden; CSNMO
/// counts own methods overriding a method of any project supertype.
inline constexpr std::array<std::string_view, 31> kClassDirectMetrics = {
    "CSLOC",     "CSNOST",   "CSNOSM",  "CSNOSA",      "CSNOIM",   "CSNOIA",  "CSNOM",
    "CSNOMNAMM", "CSNOCON",  "CSNOMCALL", "CSDAC",     "CSATFD",   "CSLOCM",  "CSCBO",
    "CSRFC",     "CSFANIN",  "CSFANOUT", "CSDEPENDS",  "CSDEPENDSBY", "CSCFNAMM", "CSNODM",
    "CSNOPM",    "CSNOPRM",  "CSNOPLM", "CSNOAMM",     "CSDIT",    "CSNOC",   "CSNOP",
    "CSNIM",     "CSNMO",    "CSNOII"};

/// Package bases aggregated with the five operators (`<base>_<Op>`), and the
/// class metric each one aggregates.
inline constexpr std::array<std::string_view, 7> kPackageStatBases = {
    "PKLOC", "PKNOST", "PKCC", "PKCCModified", "PKCCStrict", "PKCCEssential", "PKNESTING"};
inline constexpr std::array<std::string_view, 7> kPackageStatSources = {
    "CSLOC",          "CSNOST",          "CC_Sum_All",     "CCModified_Sum_All",
    "CCStrict_Sum_All", "CCEssential_Sum_All", "NESTING_Max_All"};

/// Package sums of the class counters with the same suffix.
inline constexpr std::array<std::string_view, 12> kPackageSumMetrics = {
    "PKNOSM", "PKNOSA", "PKNOIM", "PKNOIA", "PKNOM",  "PKNOMNAMM",
    "PKNOCON", "PKNODM", "PKNOPM", "PKNOPRM", "PKNOPLM", "PKNOAMM"};

/// Classes, files, interfaces and abstract classes of the package.
inline constexpr std::array<std::string_view, 4> kPackageCounters = {"PKNOCS", "PKNOFL", "PKNOI",
                                                                     "PKNOAC"};

struct ClassAnalysis {
  std::vector<MethodRecord> methods;
  /// Direct CS metrics plus the method-derived sub-metrics.
  MetricMap metrics;
  /// Project classes this class references, excluding itself.
  std::set<std::size_t> dependencies;
  /// Pairs of methods considered by CSLOCM.
  std::uint64_t method_pairs = 0;
  bool is_interface = false;
  bool is_abstract = false;
  /// Project types named in the extends clause.
  std::vector<std::size_t> parents;
};

struct PackageMember {
  const MetricMap* metrics = nullptr;
  std::size_t file = 0;
  bool is_interface = false;
  bool is_abstract = false;
};

/// Throws InvalidArgument on an empty package and MissingMetric when a
/// member lacks a source metric.
MetricMap compute_package_context(std::span<const PackageMember> members);

/// All class, package and lexical measurements of one project.
class ProjectAnalysis {
 public:
  explicit ProjectAnalysis(const ProjectIndex& index);

  const ProjectIndex& index() const { return *index_; }
  const ClassAnalysis& cls(std::size_t i) const { return classes_.at(i); }
  const std::vector<ClassAnalysis>& classes() const { return classes_; }
  const MetricMap& package_context(std::string_view package) const;
  const LexicalMetrics& lexical(std::size_t file) const { return lexical_.at(file); }

 private:
  const ProjectIndex* index_;
  std::vector<ClassAnalysis> classes_;
  std::vector<LexicalMetrics> lexical_;
  std::map<std::string, MetricMap, std::less<>> packages_;
};

/// Class metrics of one class; analyses the whole project.
MetricMap compute_class_metrics(const ProjectIndex& index, std::size_t cls);

}  // namespace testlab::metrics
