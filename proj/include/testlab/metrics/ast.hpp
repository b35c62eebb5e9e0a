#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace testlab::metrics {

/// Half-open range of code-token indices plus the source lines they cover.
struct SourceRange {
  std::size_t first_token = 0;
  std::size_t last_token = 0;  // inclusive
  std::size_t first_line = 0;
  std::size_t last_line = 0;
};

struct TypeRef {
  std::string name;  // dotted name without type arguments, e.g. "Map.Entry"
  bool primitive = false;
  int dims = 0;
  std::vector<TypeRef> args;  // parsed, ignored by the metrics
  std::size_t line = 0;

  bool empty() const { return name.empty(); }
  /// Last segment of the dotted name.
  std::string simple_name() const;
};

enum Modifier : unsigned {
  kPublic = 1u << 0,
  kProtected = 1u << 1,
  kPrivate = 1u << 2,
  kStatic = 1u << 3,
  kAbstract = 1u << 4,
  kFinal = 1u << 5,
  kDefault = 1u << 6,
  kNative = 1u << 7,
  kSynchronized = 1u << 8,
  kTransient = 1u << 9,
  kVolatile = 1u << 10,
  kStrictfp = 1u << 11,
};

struct Expr;
struct Stmt;
struct TypeDecl;
using ExprPtr = std::unique_ptr<Expr>;
using StmtPtr = std::unique_ptr<Stmt>;
using TypeDeclPtr = std::unique_ptr<TypeDecl>;

struct VarDecl {
  TypeRef type;
  std::string name;
  ExprPtr init;
  unsigned modifiers = 0;
  std::size_t line = 0;
};

struct SwitchCase {
  std::vector<ExprPtr> labels;  // empty for `default`
  bool is_default = false;
  bool arrow = false;
  std::vector<StmtPtr> body;
  std::size_t line = 0;
};

struct CatchClause {
  std::vector<TypeRef> types;
  std::string name;
  StmtPtr body;
  std::size_t line = 0;
};

enum class ExprKind {
  Literal,
  Name,         // name
  FieldAccess,  // target.name
  Call,         // [target.]name(args); name is "this"/"super" for constructor calls
  New,          // new type(args) [anon_body]
  NewArray,     // new type[dims] [init]
  ArrayInit,    // {args}
  Unary,        // op on args[0]; postfix flag
  Binary,       // args[0] op args[1]
  Assign,       // args[0] op args[1]
  Conditional,  // args[0] ? args[1] : args[2]
  Cast,         // (type) args[0]
  InstanceOf,   // args[0] instanceof type [name]
  Lambda,       // params -> args[0] | body
  MethodRef,    // target::name
  ArrayAccess,  // args[0][args[1]]
  This,         // [type.]this
  Super,        // [type.]super
  ClassLit,     // type.class
  Switch,       // switch (args[0]) { cases }
};

struct Expr {
  ExprKind kind;
  std::size_t line = 0;
  std::string name;  // identifier, operator text, or literal text
  bool postfix = false;
  ExprPtr target;
  std::vector<ExprPtr> args;
  TypeRef type;
  std::vector<std::string> params;  // lambda parameter names
  StmtPtr body;                     // lambda block body
  TypeDeclPtr anon_body;            // anonymous class body
  std::vector<SwitchCase> cases;    // switch expression arms
  std::size_t end_line = 0;

  Expr(ExprKind k, std::size_t ln) : kind(k), line(ln) {}
  ~Expr();
};

enum class StmtKind {
  Block,
  LocalVar,
  LocalType,
  Expression,
  If,
  While,
  DoWhile,
  For,
  ForEach,
  Switch,
  Try,
  Return,
  Break,
  Continue,
  Throw,
  Synchronized,
  Labeled,
  Empty,
  Assert,
  Yield,
};

struct Stmt {
  StmtKind kind;
  SourceRange range;
  ExprPtr expr;               // condition / expression / value / selector / lock
  ExprPtr expr2;              // assert message
  std::vector<StmtPtr> init;  // for-init
  std::vector<ExprPtr> update;
  StmtPtr body;                // then-branch or loop/labeled/synchronized body
  StmtPtr else_body;
  std::vector<StmtPtr> stmts;  // block contents
  std::vector<VarDecl> vars;   // local declarators, for-each variable, try resources
  std::vector<SwitchCase> cases;
  StmtPtr try_block;
  std::vector<CatchClause> catches;
  StmtPtr finally_block;
  std::string label;
  TypeDeclPtr local_type;

  explicit Stmt(StmtKind k) : kind(k) {}
  ~Stmt();
};

struct Param {
  TypeRef type;
  std::string name;
  bool varargs = false;
};

struct MethodDecl {
  std::string name;
  unsigned modifiers = 0;
  std::vector<std::string> type_params;
  bool is_constructor = false;
  TypeRef return_type;
  std::vector<Param> params;
  std::vector<TypeRef> throws;
  StmtPtr body;  // null when abstract/native/interface
  SourceRange range;
};

struct FieldDecl {
  unsigned modifiers = 0;
  TypeRef type;
  std::vector<VarDecl> vars;
  SourceRange range;
};

struct EnumConstant {
  std::string name;
  std::vector<ExprPtr> args;
  TypeDeclPtr body;
  std::size_t line = 0;
};

enum class TypeKind { Class, Interface, Enum, Record, Annotation };

struct TypeDecl {
  TypeKind kind = TypeKind::Class;
  std::string name;  // empty for anonymous classes
  unsigned modifiers = 0;
  std::vector<std::string> type_params;
  std::vector<TypeRef> extends;
  std::vector<TypeRef> implements;
  std::vector<FieldDecl> fields;
  std::vector<MethodDecl> methods;
  std::vector<StmtPtr> initializers;
  std::vector<TypeDeclPtr> nested;
  std::vector<EnumConstant> enum_constants;
  SourceRange range;

  bool is_interface() const { return kind == TypeKind::Interface || kind == TypeKind::Annotation; }
};

struct ImportDecl {
  std::string name;  // without the trailing ".*"
  bool is_static = false;
  bool on_demand = false;
};

struct CompilationUnit {
  std::string package_name;
  std::vector<ImportDecl> imports;
  std::vector<TypeDeclPtr> types;
};

}  // namespace testlab::metrics
