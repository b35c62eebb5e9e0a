#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "testlab/metrics/ast.hpp"
#include "testlab/metrics/token.hpp"

namespace testlab::metrics {

enum class Visibility { Public, Protected, Package, Private };

/// Per-method structural measurements.
///
/// Complexity variants:
///  - cyclomatic: 1 + if/for/while/do/case/catch + `?:` + `&&`/`||` that sit
///    inside a branch condition (if/loop conditions and `?:` conditions).
///  - cyclomatic_modified: as cyclomatic, but a switch adds 1 in total.
///  - cyclomatic_strict: as cyclomatic, with every `&&`/`||` counted
///    wherever it appears.
///  - essential: 1 + the decisions of control constructs that cannot be
///    collapsed to a single node because a return, throw, or a break or
///    continue escapes them. A switch's own breaks do not count as escapes.
///
/// Decisions inside lambda bodies belong to the enclosing method; anonymous
/// and local class bodies do not. `nesting`, `paths` and `knots` ignore
/// lambda bodies.
struct MethodRecord {
  std::string name;
  std::uint64_t loc = 0;
  std::uint64_t nost = 0;
  std::uint64_t params = 0;
  std::uint64_t cyclomatic = 0;
  std::uint64_t cyclomatic_modified = 0;
  std::uint64_t cyclomatic_strict = 0;
  std::uint64_t essential = 0;
  std::uint64_t nesting = 0;
  std::uint64_t paths = 0;
  std::uint64_t knots = 0;
  Visibility visibility = Visibility::Package;
  bool is_static = false;
  bool is_constructor = false;
  bool is_accessor_or_mutator = false;
  bool has_body = false;
};

/// Saturation cap for the acyclic path count.
inline constexpr std::uint64_t kPathCap = 1'000'000;

/// Counts distinct source lines carrying at least one code token in
/// [first_token, last_token].
std::uint64_t count_code_lines(const std::vector<Token>& code, std::size_t first_token,
                               std::size_t last_token);

/// Statements under `s`, excluding blocks, empty and labeled statements and
/// anything inside lambdas, anonymous or local classes.
std::uint64_t count_statements(const Stmt& s);

Visibility visibility_of(unsigned modifiers, bool interface_member);

/// Getter `return f;` / `return this.f;` with no parameters, or setter
/// `this.f = p;` / `f = p;` with one parameter `p`; non-static, `f` a field of
/// `owner`.
bool is_accessor_or_mutator(const MethodDecl& m, const TypeDecl& owner);

MethodRecord analyze_method(const MethodDecl& m, const TypeDecl& owner,
                            const std::vector<Token>& code);

/// One record per declared method and constructor of `type` (nested,
/// local and anonymous classes excluded).
std::vector<MethodRecord> compute_method_records(const TypeDecl& type,
                                                 const std::vector<Token>& code);

}  // namespace testlab::metrics
