#pragma once

#include "testlab/metrics/ast.hpp"

namespace testlab::metrics {

/// Pre-order traversal over statements and expressions. Override the hooks;
/// return false from a hook to skip that node's children.
class AstVisitor {
 public:
  virtual ~AstVisitor() = default;

  bool descend_lambdas = true;
  /// Anonymous and local class bodies (their methods, fields, initializers).
  bool descend_class_bodies = false;

  void walk(const Stmt& s);
  void walk(const Expr& e);
  void walk_type_body(const TypeDecl& t);

 protected:
  virtual bool on_stmt(const Stmt&) { return true; }
  virtual bool on_expr(const Expr&) { return true; }
  virtual void leave_stmt(const Stmt&) {}
  virtual void on_var(const VarDecl&) {}
  virtual void on_catch(const CatchClause&) {}
  virtual void on_type_ref(const TypeRef&) {}
};

}  // namespace testlab::metrics
