#include "testlab/metrics/ast_walk.hpp"

namespace testlab::metrics {

void AstVisitor::walk(const Stmt& s) {
  if (!on_stmt(s)) return;
  for (const auto& v : s.vars) {
    if (!v.type.empty()) on_type_ref(v.type);
    on_var(v);
    if (v.init) walk(*v.init);
  }
  for (const auto& i : s.init) walk(*i);
  if (s.expr) walk(*s.expr);
  if (s.expr2) walk(*s.expr2);
  for (const auto& u : s.update) walk(*u);
  for (const auto& st : s.stmts) walk(*st);
  for (const auto& c : s.cases) {
    for (const auto& l : c.labels) walk(*l);
    for (const auto& st : c.body) walk(*st);
  }
  if (s.try_block) walk(*s.try_block);
  for (const auto& c : s.catches) {
    for (const auto& t : c.types) on_type_ref(t);
    on_catch(c);
    walk(*c.body);
  }
  if (s.finally_block) walk(*s.finally_block);
  if (s.body) walk(*s.body);
  if (s.else_body) walk(*s.else_body);
  if (s.local_type && descend_class_bodies) walk_type_body(*s.local_type);
  leave_stmt(s);
}

void AstVisitor::walk(const Expr& e) {
  if (!on_expr(e)) return;
  if (!e.type.empty()) on_type_ref(e.type);
  if (e.target) walk(*e.target);
  if (e.kind == ExprKind::Lambda && !descend_lambdas) return;
  for (const auto& a : e.args) walk(*a);
  if (e.body) walk(*e.body);
  for (const auto& c : e.cases) {
    for (const auto& l : c.labels) walk(*l);
    for (const auto& st : c.body) walk(*st);
  }
  if (e.anon_body && descend_class_bodies) walk_type_body(*e.anon_body);
}

void AstVisitor::walk_type_body(const TypeDecl& t) {
  for (const auto& f : t.fields) {
    for (const auto& v : f.vars) {
      on_type_ref(v.type);
      if (v.init) walk(*v.init);
    }
  }
  for (const auto& c : t.enum_constants) {
    for (const auto& a : c.args) walk(*a);
    if (c.body) walk_type_body(*c.body);
  }
  for (const auto& i : t.initializers) walk(*i);
  for (const auto& m : t.methods) {
    if (!m.return_type.empty()) on_type_ref(m.return_type);
    for (const auto& p : m.params) on_type_ref(p.type);
    if (m.body) walk(*m.body);
  }
  for (const auto& n : t.nested) walk_type_body(*n);
}

}  // namespace testlab::metrics
