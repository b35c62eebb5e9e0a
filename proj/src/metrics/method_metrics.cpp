#include "testlab/metrics/method_metrics.hpp"

#include <algorithm>
#include <set>

#include "testlab/metrics/ast_walk.hpp"

namespace testlab::metrics {

namespace {

bool is_short_circuit(const Expr& e) {
  return e.kind == ExprKind::Binary && (e.name == "&&" || e.name == "||");
}

bool is_loop(const Stmt& s) {
  return s.kind == StmtKind::While || s.kind == StmtKind::DoWhile || s.kind == StmtKind::For ||
         s.kind == StmtKind::ForEach;
}

std::uint64_t labeled_cases(const std::vector<SwitchCase>& cases) {
  return static_cast<std::uint64_t>(
      std::count_if(cases.begin(), cases.end(), [](const auto& c) { return !c.labels.empty(); }));
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return std::min(kPathCap, a + b); }
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kPathCap / b) return kPathCap;
  return std::min(kPathCap, a * b);
}

// Collects the short-circuit operators of one expression, lambdas excluded.
class ShortCircuitCollector : public AstVisitor {
 public:
  explicit ShortCircuitCollector(std::set<const Expr*>& out) : out_(out) {
    descend_lambdas = false;
  }

 protected:
  bool on_expr(const Expr& e) override {
    if (is_short_circuit(e)) out_.insert(&e);
    return true;
  }

 private:
  std::set<const Expr*>& out_;
};

std::uint64_t short_circuit_count(const Expr* e) {
  if (!e) return 0;
  std::set<const Expr*> ops;
  ShortCircuitCollector c(ops);
  c.walk(*e);
  return ops.size();
}

class DecisionCounter : public AstVisitor {
 public:
  std::uint64_t branches = 0;
  std::uint64_t cases = 0;
  std::uint64_t switches = 0;
  std::uint64_t ternaries = 0;
  std::uint64_t all_ops = 0;
  std::set<const Expr*> condition_ops;

 protected:
  void condition(const Expr* e) {
    if (!e) return;
    ShortCircuitCollector c(condition_ops);
    c.walk(*e);
  }

  void switch_arms(const std::vector<SwitchCase>& arms) {
    const auto n = labeled_cases(arms);
    cases += n;
    if (n > 0) ++switches;
  }

  bool on_stmt(const Stmt& s) override {
    switch (s.kind) {
      case StmtKind::If:
      case StmtKind::While:
      case StmtKind::DoWhile:
      case StmtKind::For:
      case StmtKind::ForEach:
        ++branches;
        condition(s.expr.get());
        break;
      case StmtKind::Switch:
        switch_arms(s.cases);
        break;
      case StmtKind::Try:
        branches += s.catches.size();
        break;
      default:
        break;
    }
    return true;
  }

  bool on_expr(const Expr& e) override {
    if (e.kind == ExprKind::Conditional) {
      ++ternaries;
      condition(e.args[0].get());
    } else if (is_short_circuit(e)) {
      ++all_ops;
    } else if (e.kind == ExprKind::Switch) {
      switch_arms(e.cases);
    }
    return true;
  }
};

class StatementCounter : public AstVisitor {
 public:
  std::uint64_t count = 0;
  StatementCounter() { descend_lambdas = false; }

 protected:
  bool on_stmt(const Stmt& s) override {
    if (s.kind != StmtKind::Block && s.kind != StmtKind::Empty && s.kind != StmtKind::Labeled) {
      ++count;
    }
    return true;
  }
};

struct Jump {
  const Stmt* stmt;
  std::size_t source_line;
  std::size_t target_line;
};

// Resolves jump targets and marks control constructs that a jump escapes.
class JumpAnalyzer : public AstVisitor {
 public:
  explicit JumpAnalyzer(std::size_t method_end_line) : method_end_(method_end_line) {
    descend_lambdas = false;
  }

  std::vector<Jump> jumps;
  std::set<const Stmt*> unstructured;
  std::vector<const Stmt*> constructs_seen;

 protected:
  static bool is_construct(const Stmt& s) {
    return s.kind == StmtKind::If || is_loop(s) || s.kind == StmtKind::Switch ||
           s.kind == StmtKind::Try || s.kind == StmtKind::Labeled;
  }

  bool on_stmt(const Stmt& s) override {
    if (is_construct(s)) {
      stack_.push_back(&s);
      constructs_seen.push_back(&s);
    }
    switch (s.kind) {
      case StmtKind::Return:
      case StmtKind::Throw:
        for (const Stmt* c : stack_) unstructured.insert(c);
        jumps.push_back({&s, s.range.first_line, method_end_});
        break;
      case StmtKind::Break:
      case StmtKind::Continue:
        jump(s);
        break;
      default:
        break;
    }
    return true;
  }

  void leave_stmt(const Stmt& s) override {
    if (!stack_.empty() && stack_.back() == &s) stack_.pop_back();
  }

  bool on_expr(const Expr& e) override {
    // Jumps inside switch expressions stay local to them.
    return e.kind != ExprKind::Switch;
  }

 private:
  void jump(const Stmt& s) {
    const bool is_break = s.kind == StmtKind::Break;
    std::ptrdiff_t target = -1;
    for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(stack_.size()) - 1; i >= 0; --i) {
      const Stmt& c = *stack_[static_cast<std::size_t>(i)];
      if (!s.label.empty()) {
        if (c.kind == StmtKind::Labeled && c.label == s.label) {
          target = i;
          // `continue label` targets the loop the label names.
          if (!is_break && i + 1 < static_cast<std::ptrdiff_t>(stack_.size())) target = i + 1;
          break;
        }
      } else if (is_loop(c) || (is_break && c.kind == StmtKind::Switch)) {
        target = i;
        break;
      }
    }
    if (target < 0) return;  // malformed jump; no edge
    const Stmt& t = *stack_[static_cast<std::size_t>(target)];
    for (std::size_t i = static_cast<std::size_t>(target) + 1; i < stack_.size(); ++i) {
      unstructured.insert(stack_[i]);
    }
    if (is_loop(t)) unstructured.insert(&t);
    const std::size_t target_line = is_break ? t.range.last_line : t.range.first_line;
    jumps.push_back({&s, s.range.first_line, target_line});
  }

  std::size_t method_end_;
  std::vector<const Stmt*> stack_;
};

std::uint64_t construct_decisions(const Stmt& s) {
  switch (s.kind) {
    case StmtKind::If:
    case StmtKind::While:
    case StmtKind::DoWhile:
    case StmtKind::For:
    case StmtKind::ForEach:
      return 1;
    case StmtKind::Switch:
      return labeled_cases(s.cases);
    case StmtKind::Try:
      return s.catches.size();
    default:
      return 0;
  }
}

void max_depth(const Stmt& s, std::uint64_t depth, std::uint64_t& best) {
  if (s.kind != StmtKind::Block) best = std::max(best, depth);
  switch (s.kind) {
    case StmtKind::Block:
      for (const auto& c : s.stmts) max_depth(*c, depth, best);
      break;
    case StmtKind::If:
      max_depth(*s.body, depth + 1, best);
      if (s.else_body) {
        max_depth(*s.else_body, s.else_body->kind == StmtKind::If ? depth : depth + 1, best);
      }
      break;
    case StmtKind::While:
    case StmtKind::DoWhile:
    case StmtKind::For:
    case StmtKind::ForEach:
    case StmtKind::Synchronized:
      max_depth(*s.body, depth + 1, best);
      break;
    case StmtKind::Labeled:
      max_depth(*s.body, depth, best);
      break;
    case StmtKind::Switch:
      for (const auto& c : s.cases) {
        for (const auto& st : c.body) max_depth(*st, depth + 1, best);
      }
      break;
    case StmtKind::Try:
      max_depth(*s.try_block, depth + 1, best);
      for (const auto& c : s.catches) max_depth(*c.body, depth + 1, best);
      if (s.finally_block) max_depth(*s.finally_block, depth + 1, best);
      break;
    default:
      break;
  }
}

std::uint64_t expr_paths(const Expr& e);

std::uint64_t children_paths(const Expr& e) {
  std::uint64_t p = 1;
  if (e.target) p = sat_mul(p, expr_paths(*e.target));
  if (e.kind == ExprKind::Lambda) return p;
  for (const auto& a : e.args) p = sat_mul(p, expr_paths(*a));
  return p;
}

std::uint64_t expr_paths(const Expr& e) {
  if (e.kind == ExprKind::Conditional) {
    return sat_add(sat_add(short_circuit_count(e.args[0].get()), expr_paths(*e.args[1])),
                   expr_paths(*e.args[2]));
  }
  return children_paths(e);
}

std::uint64_t stmt_paths(const Stmt& s);

std::uint64_t sequence_paths(const std::vector<StmtPtr>& stmts) {
  std::uint64_t p = 1;
  for (const auto& st : stmts) p = sat_mul(p, stmt_paths(*st));
  return p;
}

std::uint64_t stmt_paths(const Stmt& s) {
  switch (s.kind) {
    case StmtKind::Block:
      return sequence_paths(s.stmts);
    case StmtKind::If:
      return sat_add(sat_add(short_circuit_count(s.expr.get()), stmt_paths(*s.body)),
                     s.else_body ? stmt_paths(*s.else_body) : 1);
    case StmtKind::While:
    case StmtKind::DoWhile:
    case StmtKind::For:
    case StmtKind::ForEach:
      return sat_add(sat_add(short_circuit_count(s.expr.get()), stmt_paths(*s.body)), 1);
    case StmtKind::Switch: {
      std::uint64_t p = short_circuit_count(s.expr.get());
      bool has_default = false;
      for (const auto& c : s.cases) {
        has_default = has_default || c.is_default;
        // Grouped labels share the body of the next arm.
        if (!c.body.empty()) p = sat_add(p, sequence_paths(c.body));
      }
      return has_default ? std::max<std::uint64_t>(p, 1) : sat_add(p, 1);
    }
    case StmtKind::Try: {
      std::uint64_t p = stmt_paths(*s.try_block);
      for (const auto& c : s.catches) p = sat_add(p, stmt_paths(*c.body));
      return s.finally_block ? sat_mul(p, stmt_paths(*s.finally_block)) : p;
    }
    case StmtKind::Labeled:
    case StmtKind::Synchronized:
      return stmt_paths(*s.body);
    case StmtKind::LocalVar: {
      std::uint64_t p = 1;
      for (const auto& v : s.vars) {
        if (v.init) p = sat_mul(p, expr_paths(*v.init));
      }
      return p;
    }
    default:
      return s.expr ? expr_paths(*s.expr) : 1;
  }
}

std::uint64_t count_knots(const std::vector<Jump>& jumps) {
  std::uint64_t knots = 0;
  for (std::size_t a = 0; a < jumps.size(); ++a) {
    const auto lo_a = std::min(jumps[a].source_line, jumps[a].target_line);
    const auto hi_a = std::max(jumps[a].source_line, jumps[a].target_line);
    for (std::size_t b = a + 1; b < jumps.size(); ++b) {
      const auto lo_b = std::min(jumps[b].source_line, jumps[b].target_line);
      const auto hi_b = std::max(jumps[b].source_line, jumps[b].target_line);
      if ((lo_a < lo_b && lo_b < hi_a && hi_a < hi_b) ||
          (lo_b < lo_a && lo_a < hi_b && hi_b < hi_a)) {
        ++knots;
      }
    }
  }
  return knots;
}

bool names_field(const Expr& e, const std::set<std::string>& fields, std::string* out) {
  if (e.kind == ExprKind::Name && fields.count(e.name)) {
    *out = e.name;
    return true;
  }
  if (e.kind == ExprKind::FieldAccess && e.target && e.target->kind == ExprKind::This &&
      e.target->type.empty() && fields.count(e.name)) {
    *out = e.name;
    return true;
  }
  return false;
}

}  // namespace

std::uint64_t count_code_lines(const std::vector<Token>& code, std::size_t first_token,
                               std::size_t last_token) {
  std::uint64_t lines = 0;
  std::size_t prev = 0;
  for (std::size_t i = first_token; i <= last_token && i < code.size(); ++i) {
    if (code[i].line != prev) {
      ++lines;
      prev = code[i].line;
    }
  }
  return lines;
}

std::uint64_t count_statements(const Stmt& s) {
  StatementCounter counter;
  counter.walk(s);
  return counter.count;
}

Visibility visibility_of(unsigned modifiers, bool interface_member) {
  if (modifiers & kPublic) return Visibility::Public;
  if (modifiers & kProtected) return Visibility::Protected;
  if (modifiers & kPrivate) return Visibility::Private;
  return interface_member ? Visibility::Public : Visibility::Package;
}

bool is_accessor_or_mutator(const MethodDecl& m, const TypeDecl& owner) {
  if (m.is_constructor || (m.modifiers & kStatic) || !m.body) return false;
  if (m.body->stmts.size() != 1) return false;
  std::set<std::string> fields;
  for (const auto& f : owner.fields) {
    for (const auto& v : f.vars) fields.insert(v.name);
  }
  const Stmt& only = *m.body->stmts.front();
  std::string field;
  if (m.params.empty() && only.kind == StmtKind::Return && only.expr) {
    return names_field(*only.expr, fields, &field);
  }
  if (m.params.size() == 1 && only.kind == StmtKind::Expression && only.expr &&
      only.expr->kind == ExprKind::Assign && only.expr->name == "=") {
    const Expr& lhs = *only.expr->args[0];
    const Expr& rhs = *only.expr->args[1];
    const std::string& param = m.params.front().name;
    if (!names_field(lhs, fields, &field)) return false;
    if (lhs.kind == ExprKind::Name && lhs.name == param) return false;
    return rhs.kind == ExprKind::Name && rhs.name == param;
  }
  return false;
}

MethodRecord analyze_method(const MethodDecl& m, const TypeDecl& owner,
                            const std::vector<Token>& code) {
  MethodRecord r;
  r.name = m.name;
  r.loc = count_code_lines(code, m.range.first_token, m.range.last_token);
  r.params = m.params.size();
  r.visibility = visibility_of(m.modifiers, owner.is_interface());
  r.is_static = (m.modifiers & kStatic) != 0;
  r.is_constructor = m.is_constructor;
  r.has_body = m.body != nullptr;
  r.is_accessor_or_mutator = is_accessor_or_mutator(m, owner);

  if (!m.body) {
    r.cyclomatic = r.cyclomatic_modified = r.cyclomatic_strict = r.essential = 1;
    r.paths = 1;
    return r;
  }

  r.nost = count_statements(*m.body);

  DecisionCounter decisions;
  decisions.walk(*m.body);
  const std::uint64_t shared = 1 + decisions.branches + decisions.ternaries;
  r.cyclomatic = shared + decisions.cases + decisions.condition_ops.size();
  r.cyclomatic_modified = shared + decisions.switches + decisions.condition_ops.size();
  r.cyclomatic_strict = shared + decisions.cases + decisions.all_ops;

  JumpAnalyzer jumps(m.range.last_line);
  jumps.walk(*m.body);
  r.essential = 1;
  for (const Stmt* c : jumps.constructs_seen) {
    if (jumps.unstructured.count(c)) r.essential += construct_decisions(*c);
  }
  r.knots = count_knots(jumps.jumps);

  std::uint64_t depth = 1;
  max_depth(*m.body, 1, depth);
  r.nesting = depth;
  r.paths = stmt_paths(*m.body);
  return r;
}

std::vector<MethodRecord> compute_method_records(const TypeDecl& type,
                                                 const std::vector<Token>& code) {
  std::vector<MethodRecord> out;
  out.reserve(type.methods.size());
  for (const auto& m : type.methods) out.push_back(analyze_method(m, type, code));
  return out;
}

}  // namespace testlab::metrics
