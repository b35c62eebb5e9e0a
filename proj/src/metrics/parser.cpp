#include "testlab/metrics/parser.hpp"

#include <utility>

#include "testlab/common/error.hpp"
#include "testlab/metrics/lexical.hpp"

namespace testlab::metrics {

Expr::~Expr() = default;
Stmt::~Stmt() = default;

std::string TypeRef::simple_name() const {
  const auto dot = name.rfind('.');
  return dot == std::string::npos ? name : name.substr(dot + 1);
}

namespace {

int binary_precedence(std::string_view op) {
  if (op == "||") return 1;
  if (op == "&&") return 2;
  if (op == "|") return 3;
  if (op == "^") return 4;
  if (op == "&") return 5;
  if (op == "==" || op == "!=") return 6;
  if (op == "<" || op == ">" || op == "<=" || op == ">=" || op == "instanceof") return 7;
  if (op == "<<" || op == ">>" || op == ">>>") return 8;
  if (op == "+" || op == "-") return 9;
  if (op == "*" || op == "/" || op == "%") return 10;
  return 0;
}

class Parser {
 public:
  explicit Parser(const std::vector<Token>& toks) : toks_(toks) {
    eof_.kind = TokenKind::Separator;
    eof_.line = toks.empty() ? 1 : toks.back().line;
    eof_.column = toks.empty() ? 1 : toks.back().column + toks.back().text.size();
  }

  CompilationUnit compilation_unit() {
    CompilationUnit unit;
    const State start = save();
    skip_annotations();
    if (accept("package")) {
      unit.package_name = qualified_name();
      expect(";");
    } else {
      restore(start);
    }
    while (is("import")) {
      advance();
      ImportDecl imp;
      imp.is_static = accept("static");
      imp.name = expect_ident();
      while (accept(".")) {
        if (accept("*")) {
          imp.on_demand = true;
          break;
        }
        imp.name += "." + expect_ident();
      }
      expect(";");
      unit.imports.push_back(std::move(imp));
    }
    while (!at_end()) {
      if (accept(";")) continue;
      const std::size_t first = pos_;
      const unsigned mods = modifiers();
      unit.types.push_back(type_declaration(mods, first));
    }
    return unit;
  }

 private:
  struct State {
    std::size_t pos;
    std::size_t gt;
  };

  State save() const { return {pos_, gt_consumed_}; }
  void restore(State s) {
    pos_ = s.pos;
    gt_consumed_ = s.gt;
  }

  bool at_end() const { return pos_ >= toks_.size(); }
  const Token& cur() const { return at_end() ? eof_ : toks_[pos_]; }
  const Token& peek(std::size_t n) const {
    return pos_ + n < toks_.size() ? toks_[pos_ + n] : eof_;
  }
  std::string_view cur_text() const {
    return std::string_view(cur().text).substr(at_end() ? 0 : gt_consumed_);
  }
  bool is(std::string_view text) const {
    return !at_end() && cur().kind != TokenKind::Literal && cur_text() == text;
  }
  bool peek_is(std::size_t n, std::string_view text) const {
    const Token& t = peek(n);
    return t.kind != TokenKind::Literal && t.text == text && pos_ + n < toks_.size();
  }
  bool is_ident() const { return !at_end() && cur().kind == TokenKind::Identifier; }
  bool is_ident(std::string_view word) const { return is_ident() && cur().text == word; }
  std::size_t line() const { return cur().line; }

  void advance() {
    if (!at_end()) ++pos_;
    gt_consumed_ = 0;
  }
  bool accept(std::string_view text) {
    if (!is(text)) return false;
    advance();
    return true;
  }

  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = cur();
    const std::string found = at_end() ? "end of file" : "'" + t.text + "'";
    throw ParseError(t.line, t.column + gt_consumed_, what + ", found " + found);
  }

  void expect(std::string_view text) {
    if (!accept(text)) fail("expected '" + std::string(text) + "'");
  }

  std::string expect_ident() {
    if (!is_ident()) fail("expected identifier");
    std::string name = cur().text;
    advance();
    return name;
  }

  bool accept_close_angle() {
    const auto text = cur_text();
    if (at_end() || cur().kind != TokenKind::Operator || text.empty() ||
        text.find_first_not_of('>') != std::string_view::npos) {
      return false;
    }
    if (text.size() == 1) {
      advance();
    } else {
      ++gt_consumed_;
    }
    return true;
  }

  std::string qualified_name() {
    std::string name = expect_ident();
    while (is(".") && peek(1).kind == TokenKind::Identifier) {
      advance();
      name += "." + expect_ident();
    }
    return name;
  }

  // -- declarations --------------------------------------------------------

  void skip_balanced(std::string_view open, std::string_view close) {
    expect(open);
    int depth = 1;
    while (depth > 0) {
      if (at_end()) fail("unbalanced '" + std::string(open) + "'");
      if (is(open)) ++depth;
      if (is(close)) --depth;
      advance();
    }
  }

  void skip_annotation() {
    expect("@");
    qualified_name();
    if (is("(")) skip_balanced("(", ")");
  }

  void skip_annotations() {
    while (is("@") && !peek_is(1, "interface")) skip_annotation();
  }

  bool type_declaration_ahead() const {
    if (is("class") || is("interface") || is("enum")) return true;
    if (is("@") && peek_is(1, "interface")) return true;
    return is_ident("record") && peek(1).kind == TokenKind::Identifier &&
           (peek_is(2, "(") || peek_is(2, "<"));
  }

  unsigned modifiers() {
    unsigned mods = 0;
    for (;;) {
      if (is("@") && !peek_is(1, "interface")) {
        skip_annotation();
      } else if (accept("public")) {
        mods |= kPublic;
      } else if (accept("protected")) {
        mods |= kProtected;
      } else if (accept("private")) {
        mods |= kPrivate;
      } else if (is("static") && !peek_is(1, "{")) {
        advance();
        mods |= kStatic;
      } else if (accept("abstract")) {
        mods |= kAbstract;
      } else if (accept("final")) {
        mods |= kFinal;
      } else if (is("default") && !peek_is(1, ":") && !peek_is(1, "->")) {
        advance();
        mods |= kDefault;
      } else if (accept("native")) {
        mods |= kNative;
      } else if (is("synchronized") && !peek_is(1, "(")) {
        advance();
        mods |= kSynchronized;
      } else if (accept("transient")) {
        mods |= kTransient;
      } else if (accept("volatile")) {
        mods |= kVolatile;
      } else if (accept("strictfp")) {
        mods |= kStrictfp;
      } else if (is_ident("sealed") && (peek(1).kind == TokenKind::Keyword || peek(1).kind == TokenKind::Identifier)) {
        advance();
      } else if (is_ident("non") && peek_is(1, "-") && peek(2).text == "sealed") {
        advance();
        advance();
        advance();
      } else {
        return mods;
      }
    }
  }

  std::vector<std::string> type_parameters() {
    std::vector<std::string> names;
    expect("<");
    do {
      skip_annotations();
      names.push_back(expect_ident());
      if (accept("extends")) {
        parse_type();
        while (accept("&")) parse_type();
      }
    } while (accept(","));
    if (!accept_close_angle()) fail("expected '>' closing type parameters");
    return names;
  }

  std::vector<TypeRef> type_list() {
    std::vector<TypeRef> out;
    do {
      out.push_back(parse_type());
    } while (accept(","));
    return out;
  }

  TypeDeclPtr type_declaration(unsigned mods, std::size_t first) {
    auto decl = std::make_unique<TypeDecl>();
    decl->modifiers = mods;
    if (accept("class")) {
      decl->kind = TypeKind::Class;
    } else if (accept("interface")) {
      decl->kind = TypeKind::Interface;
    } else if (accept("enum")) {
      decl->kind = TypeKind::Enum;
    } else if (is("@") && peek_is(1, "interface")) {
      advance();
      advance();
      decl->kind = TypeKind::Annotation;
    } else if (is_ident("record")) {
      advance();
      decl->kind = TypeKind::Record;
    } else {
      fail("expected type declaration");
    }
    decl->name = expect_ident();
    if (is("<")) decl->type_params = type_parameters();
    if (decl->kind == TypeKind::Record) {
      for (auto& p : formal_parameters()) {
        FieldDecl f;
        f.modifiers = kPrivate | kFinal;
        f.type = p.type;
        VarDecl v;
        v.type = p.type;
        v.name = p.name;
        v.line = p.type.line;
        f.vars.push_back(std::move(v));
        decl->fields.push_back(std::move(f));
      }
    }
    if (accept("extends")) decl->extends = type_list();
    if (accept("implements")) decl->implements = type_list();
    if (is_ident("permits")) {
      advance();
      type_list();
    }
    class_body(*decl);
    set_range(decl->range, first);
    return decl;
  }

  void class_body(TypeDecl& decl) {
    expect("{");
    if (decl.kind == TypeKind::Enum) enum_constants(decl);
    while (!accept("}")) {
      if (at_end()) fail("expected '}' closing class body");
      member(decl);
    }
  }

  void enum_constants(TypeDecl& decl) {
    while (!is(";") && !is("}")) {
      skip_annotations();
      EnumConstant c;
      c.line = line();
      c.name = expect_ident();
      if (is("(")) c.args = arguments();
      if (is("{")) {
        c.body = std::make_unique<TypeDecl>();
        const std::size_t first = pos_;
        class_body(*c.body);
        set_range(c.body->range, first);
      }
      decl.enum_constants.push_back(std::move(c));
      if (!accept(",")) break;
    }
    accept(";");
  }

  void member(TypeDecl& decl) {
    if (accept(";")) return;
    const std::size_t first = pos_;
    if (is("{") || (is("static") && peek_is(1, "{"))) {
      accept("static");
      decl.initializers.push_back(block());
      return;
    }
    const unsigned mods = modifiers();
    if (type_declaration_ahead()) {
      decl.nested.push_back(type_declaration(mods, first));
      return;
    }
    std::vector<std::string> method_type_params;
    if (is("<")) method_type_params = type_parameters();

    MethodDecl m;
    m.modifiers = mods;
    m.type_params = std::move(method_type_params);
    if (is_ident() && peek_is(1, "(")) {
      m.is_constructor = true;
      m.name = expect_ident();
      m.params = formal_parameters();
    } else if (decl.kind == TypeKind::Record && is_ident(decl.name) && peek_is(1, "{")) {
      m.is_constructor = true;
      m.name = expect_ident();
    } else {
      TypeRef type = parse_type();
      std::string name = expect_ident();
      if (!is("(")) {
        field_declarators(decl, mods, std::move(type), std::move(name), first);
        return;
      }
      m.return_type = std::move(type);
      m.name = std::move(name);
      m.params = formal_parameters();
      while (is("[") && peek_is(1, "]")) {
        advance();
        advance();
        ++m.return_type.dims;
      }
    }
    if (accept("throws")) m.throws = type_list();
    if (is("default")) {
      // annotation element default value
      advance();
      while (!is(";")) {
        if (at_end()) fail("expected ';'");
        if (is("{")) {
          skip_balanced("{", "}");
        } else if (is("(")) {
          skip_balanced("(", ")");
        } else {
          advance();
        }
      }
    }
    if (is("{")) {
      m.body = block();
    } else {
      expect(";");
    }
    set_range(m.range, first);
    decl.methods.push_back(std::move(m));
  }

  void field_declarators(TypeDecl& decl, unsigned mods, TypeRef type, std::string first_name,
                         std::size_t first) {
    FieldDecl f;
    f.modifiers = mods;
    f.type = type;
    std::string name = std::move(first_name);
    for (;;) {
      VarDecl v;
      v.type = type;
      v.modifiers = mods;
      v.line = line();
      v.name = std::move(name);
      while (is("[") && peek_is(1, "]")) {
        advance();
        advance();
        ++v.type.dims;
      }
      if (accept("=")) v.init = variable_initializer();
      f.vars.push_back(std::move(v));
      if (!accept(",")) break;
      name = expect_ident();
    }
    expect(";");
    set_range(f.range, first);
    decl.fields.push_back(std::move(f));
  }

  std::vector<Param> formal_parameters() {
    expect("(");
    std::vector<Param> params;
    if (accept(")")) return params;
    do {
      modifiers();
      Param p;
      p.type = parse_type();
      skip_annotations();
      if (accept("...")) p.varargs = true;
      if (is("this")) {
        advance();  // receiver parameter
        continue;
      }
      if (is_ident() && peek_is(1, ".") && peek_is(2, "this")) {
        advance();
        advance();
        advance();
        continue;
      }
      p.name = expect_ident();
      while (is("[") && peek_is(1, "]")) {
        advance();
        advance();
        ++p.type.dims;
      }
      params.push_back(std::move(p));
    } while (accept(","));
    expect(")");
    return params;
  }

  // -- types ---------------------------------------------------------------

  bool primitive_ahead() const {
    return !at_end() && cur().kind == TokenKind::Keyword &&
           (is_primitive_type(cur().text) || cur().text == "void");
  }

  TypeRef parse_type() {
    skip_annotations();
    TypeRef t;
    t.line = line();
    if (primitive_ahead()) {
      t.name = cur().text;
      t.primitive = true;
      advance();
    } else {
      t.name = expect_ident();
      if (is("<")) t.args = type_arguments();
      while (is(".") && (peek(1).kind == TokenKind::Identifier || peek_is(1, "@"))) {
        advance();
        skip_annotations();
        t.name += "." + expect_ident();
        if (is("<")) {
          auto more = type_arguments();
          for (auto& a : more) t.args.push_back(std::move(a));
        }
      }
    }
    for (;;) {
      const State s = save();
      skip_annotations();
      if (is("[") && peek_is(1, "]")) {
        advance();
        advance();
        ++t.dims;
      } else {
        restore(s);
        break;
      }
    }
    return t;
  }

  std::vector<TypeRef> type_arguments() {
    expect("<");
    std::vector<TypeRef> args;
    if (accept_close_angle()) return args;  // diamond
    do {
      skip_annotations();
      if (accept("?")) {
        if (accept("extends") || accept("super")) args.push_back(parse_type());
      } else {
        args.push_back(parse_type());
      }
    } while (accept(","));
    if (!accept_close_angle()) fail("expected '>' closing type arguments");
    return args;
  }

  // -- statements ----------------------------------------------------------

  void set_range(SourceRange& r, std::size_t first) const {
    const std::size_t last = pos_ > first ? pos_ - 1 : first;
    r.first_token = first;
    r.last_token = last;
    r.first_line = first < toks_.size() ? toks_[first].line : eof_.line;
    r.last_line = last < toks_.size() ? toks_[last].line : eof_.line;
  }

  StmtPtr finish(StmtPtr s, std::size_t first) const {
    set_range(s->range, first);
    return s;
  }

  StmtPtr block() {
    const std::size_t first = pos_;
    auto s = std::make_unique<Stmt>(StmtKind::Block);
    expect("{");
    while (!accept("}")) {
      if (at_end()) fail("expected '}' closing block");
      s->stmts.push_back(block_statement());
    }
    return finish(std::move(s), first);
  }

  bool local_var_decl_ahead() {
    if (primitive_ahead()) return !peek_is(1, ".") && !peek_is(1, "::");
    if (!is_ident()) return false;
    const State s = save();
    bool ok = false;
    try {
      parse_type();
      ok = is_ident() && (peek_is(1, "=") || peek_is(1, ";") || peek_is(1, ",") ||
                          peek_is(1, "[") || peek_is(1, ":"));
    } catch (const ParseError&) {
      ok = false;
    }
    restore(s);
    return ok;
  }

  StmtPtr block_statement() {
    const std::size_t first = pos_;
    if (is("final") || is("abstract") || (is("@") && !peek_is(1, "interface")) ||
        type_declaration_ahead() || (is("static") && !peek_is(1, "{"))) {
      const unsigned mods = modifiers();
      if (type_declaration_ahead()) {
        auto s = std::make_unique<Stmt>(StmtKind::LocalType);
        s->local_type = type_declaration(mods, first);
        return finish(std::move(s), first);
      }
      auto s = local_variable(mods);
      expect(";");
      return finish(std::move(s), first);
    }
    if (local_var_decl_ahead()) {
      auto s = local_variable(0);
      expect(";");
      return finish(std::move(s), first);
    }
    return statement();
  }

  StmtPtr local_variable(unsigned mods) {
    auto s = std::make_unique<Stmt>(StmtKind::LocalVar);
    TypeRef type = parse_type();
    do {
      VarDecl v;
      v.type = type;
      v.modifiers = mods;
      v.line = line();
      v.name = expect_ident();
      while (is("[") && peek_is(1, "]")) {
        advance();
        advance();
        ++v.type.dims;
      }
      if (accept("=")) v.init = variable_initializer();
      s->vars.push_back(std::move(v));
    } while (accept(","));
    return s;
  }

  bool yield_ahead() const {
    if (!is_ident("yield")) return false;
    const Token& n = peek(1);
    if (n.kind == TokenKind::Identifier || n.kind == TokenKind::Literal) return true;
    return n.text == "new" || n.text == "this" || n.text == "super" || n.text == "switch" ||
           n.text == "-" || n.text == "!" || n.text == "~" || n.text == "+" || n.text == "(";
  }

  ExprPtr paren_expression() {
    expect("(");
    auto e = expression();
    expect(")");
    return e;
  }

  StmtPtr statement() {
    const std::size_t first = pos_;
    if (is("{")) return block();
    if (accept(";")) return finish(std::make_unique<Stmt>(StmtKind::Empty), first);
    if (accept("if")) {
      auto s = std::make_unique<Stmt>(StmtKind::If);
      s->expr = paren_expression();
      s->body = statement();
      if (accept("else")) s->else_body = statement();
      return finish(std::move(s), first);
    }
    if (accept("while")) {
      auto s = std::make_unique<Stmt>(StmtKind::While);
      s->expr = paren_expression();
      s->body = statement();
      return finish(std::move(s), first);
    }
    if (accept("do")) {
      auto s = std::make_unique<Stmt>(StmtKind::DoWhile);
      s->body = statement();
      expect("while");
      s->expr = paren_expression();
      expect(";");
      return finish(std::move(s), first);
    }
    if (accept("for")) return for_statement(first);
    if (is("switch")) {
      advance();
      auto s = std::make_unique<Stmt>(StmtKind::Switch);
      s->expr = paren_expression();
      s->cases = switch_body();
      return finish(std::move(s), first);
    }
    if (accept("try")) return try_statement(first);
    if (accept("return")) {
      auto s = std::make_unique<Stmt>(StmtKind::Return);
      if (!is(";")) s->expr = expression();
      expect(";");
      return finish(std::move(s), first);
    }
    if (is("break") || is("continue")) {
      auto s = std::make_unique<Stmt>(is("break") ? StmtKind::Break : StmtKind::Continue);
      advance();
      if (is_ident()) s->label = expect_ident();
      expect(";");
      return finish(std::move(s), first);
    }
    if (accept("throw")) {
      auto s = std::make_unique<Stmt>(StmtKind::Throw);
      s->expr = expression();
      expect(";");
      return finish(std::move(s), first);
    }
    if (is("synchronized")) {
      advance();
      auto s = std::make_unique<Stmt>(StmtKind::Synchronized);
      s->expr = paren_expression();
      s->body = block();
      return finish(std::move(s), first);
    }
    if (accept("assert")) {
      auto s = std::make_unique<Stmt>(StmtKind::Assert);
      s->expr = expression();
      if (accept(":")) s->expr2 = expression();
      expect(";");
      return finish(std::move(s), first);
    }
    if (yield_ahead()) {
      advance();
      auto s = std::make_unique<Stmt>(StmtKind::Yield);
      s->expr = expression();
      expect(";");
      return finish(std::move(s), first);
    }
    if (is_ident() && peek_is(1, ":")) {
      auto s = std::make_unique<Stmt>(StmtKind::Labeled);
      s->label = expect_ident();
      expect(":");
      s->body = statement();
      return finish(std::move(s), first);
    }
    auto s = std::make_unique<Stmt>(StmtKind::Expression);
    s->expr = expression();
    expect(";");
    return finish(std::move(s), first);
  }

  StmtPtr for_statement(std::size_t first) {
    expect("(");
    const std::size_t init_first = pos_;
    bool declares = false;
    unsigned mods = 0;
    if (is("final") || is("@")) {
      mods = modifiers();
      declares = true;
    } else {
      declares = local_var_decl_ahead();
    }
    if (declares) {
      const State s = save();
      TypeRef type = parse_type();
      std::string name = expect_ident();
      if (accept(":")) {
        auto fe = std::make_unique<Stmt>(StmtKind::ForEach);
        VarDecl v;
        v.type = std::move(type);
        v.name = std::move(name);
        v.modifiers = mods;
        v.line = toks_[init_first].line;
        fe->vars.push_back(std::move(v));
        fe->expr = expression();
        expect(")");
        fe->body = statement();
        return finish(std::move(fe), first);
      }
      restore(s);
    }
    auto f = std::make_unique<Stmt>(StmtKind::For);
    if (declares) {
      f->init.push_back(finish(local_variable(mods), init_first));
    } else if (!is(";")) {
      do {
        const std::size_t e_first = pos_;
        auto es = std::make_unique<Stmt>(StmtKind::Expression);
        es->expr = expression();
        f->init.push_back(finish(std::move(es), e_first));
      } while (accept(","));
    }
    expect(";");
    if (!is(";")) f->expr = expression();
    expect(";");
    if (!is(")")) {
      do {
        f->update.push_back(expression());
      } while (accept(","));
    }
    expect(")");
    f->body = statement();
    return finish(std::move(f), first);
  }

  std::vector<SwitchCase> switch_body() {
    expect("{");
    std::vector<SwitchCase> cases;
    while (!accept("}")) {
      if (at_end()) fail("expected '}' closing switch");
      SwitchCase c;
      c.line = line();
      if (accept("default")) {
        c.is_default = true;
      } else {
        expect("case");
        do {
          if (accept("default")) {
            c.is_default = true;
          } else {
            c.labels.push_back(conditional());
          }
        } while (accept(","));
      }
      if (accept("->")) {
        c.arrow = true;
        const std::size_t first = pos_;
        if (is("{")) {
          c.body.push_back(block());
        } else if (is("throw")) {
          c.body.push_back(statement());
        } else {
          auto es = std::make_unique<Stmt>(StmtKind::Expression);
          es->expr = expression();
          expect(";");
          c.body.push_back(finish(std::move(es), first));
        }
      } else {
        if (!accept(":")) fail("expected ':' or '->' after case label");
        while (!is("case") && !is("default") && !is("}")) {
          if (at_end()) fail("expected '}' closing switch");
          c.body.push_back(block_statement());
        }
        // `default` followed by a statement-level token means a modifier, which
        // cannot start a switch-group statement; treat it as a label.
      }
      cases.push_back(std::move(c));
    }
    return cases;
  }

  StmtPtr try_statement(std::size_t first) {
    auto s = std::make_unique<Stmt>(StmtKind::Try);
    if (accept("(")) {
      while (!accept(")")) {
        VarDecl v;
        v.line = line();
        if (is("final") || is("@")) {
          v.modifiers = modifiers();
          v.type = parse_type();
          v.name = expect_ident();
          expect("=");
          v.init = expression();
        } else if (local_var_decl_ahead()) {
          v.type = parse_type();
          v.name = expect_ident();
          expect("=");
          v.init = expression();
        } else {
          v.init = expression();
        }
        s->vars.push_back(std::move(v));
        if (!accept(";")) {
          expect(")");
          break;
        }
      }
    }
    s->try_block = block();
    while (is("catch")) {
      CatchClause c;
      c.line = line();
      advance();
      expect("(");
      modifiers();
      c.types.push_back(parse_type());
      while (accept("|")) c.types.push_back(parse_type());
      c.name = expect_ident();
      expect(")");
      c.body = block();
      s->catches.push_back(std::move(c));
    }
    if (accept("finally")) s->finally_block = block();
    if (s->catches.empty() && !s->finally_block && s->vars.empty()) {
      fail("expected 'catch' or 'finally' after try block");
    }
    return finish(std::move(s), first);
  }

  // -- expressions ---------------------------------------------------------

  ExprPtr make(ExprKind k) const { return std::make_unique<Expr>(k, line()); }

  bool lambda_ahead() const {
    if (is_ident() && peek_is(1, "->")) return true;
    if (!is("(")) return false;
    int depth = 0;
    for (std::size_t i = pos_; i < toks_.size(); ++i) {
      const Token& t = toks_[i];
      if (t.kind == TokenKind::Literal) continue;
      if (t.text == "(") ++depth;
      if (t.text == ")" && --depth == 0) {
        return i + 1 < toks_.size() && toks_[i + 1].text == "->" &&
               toks_[i + 1].kind == TokenKind::Operator;
      }
    }
    return false;
  }

  ExprPtr lambda() {
    auto e = make(ExprKind::Lambda);
    if (is_ident()) {
      e->params.push_back(expect_ident());
    } else {
      expect("(");
      int depth = 1;
      int angle = 0;
      const Token* prev = nullptr;
      while (depth > 0) {
        if (at_end()) fail("unbalanced lambda parameters");
        const Token& t = cur();
        if (t.kind == TokenKind::Separator) {
          if (t.text == "(") ++depth;
          if (t.text == ")") --depth;
          if ((t.text == "," && depth == 1 && angle == 0) || depth == 0) {
            if (prev && prev->kind == TokenKind::Identifier) e->params.push_back(prev->text);
          }
        } else if (t.kind == TokenKind::Operator) {
          if (t.text == "<") ++angle;
          if (t.text.find_first_not_of('>') == std::string::npos) {
            angle -= static_cast<int>(t.text.size());
          }
        }
        prev = &t;
        advance();
      }
    }
    expect("->");
    if (is("{")) {
      e->body = block();
    } else {
      e->args.push_back(expression());
    }
    e->end_line = pos_ > 0 ? toks_[pos_ - 1].line : e->line;
    return e;
  }

  ExprPtr expression() {
    if (lambda_ahead()) return lambda();
    auto lhs = conditional();
    if (!at_end() && cur().kind == TokenKind::Operator && is_assignment_operator(cur_text())) {
      auto e = make(ExprKind::Assign);
      e->name = std::string(cur_text());
      advance();
      e->args.push_back(std::move(lhs));
      e->args.push_back(expression());
      return e;
    }
    return lhs;
  }

  ExprPtr conditional() {
    auto cond = binary(1);
    if (!is("?")) return cond;
    auto e = make(ExprKind::Conditional);
    advance();
    e->args.push_back(std::move(cond));
    e->args.push_back(expression());
    expect(":");
    e->args.push_back(lambda_ahead() ? lambda() : conditional());
    return e;
  }

  ExprPtr binary(int min_prec) {
    auto lhs = unary();
    for (;;) {
      if (at_end() || (cur().kind != TokenKind::Operator && cur().text != "instanceof")) break;
      const std::string op(cur_text());
      const int prec = binary_precedence(op);
      if (prec == 0 || prec < min_prec) break;
      if (op == "instanceof") {
        auto e = make(ExprKind::InstanceOf);
        advance();
        accept("final");
        e->type = parse_type();
        if (is_ident() && !peek_is(1, "(")) e->name = expect_ident();
        e->args.push_back(std::move(lhs));
        lhs = std::move(e);
        continue;
      }
      auto e = make(ExprKind::Binary);
      e->name = op;
      advance();
      e->args.push_back(std::move(lhs));
      e->args.push_back(binary(prec + 1));
      lhs = std::move(e);
    }
    return lhs;
  }

  bool cast_operand_ahead() const {
    if (at_end()) return false;
    const Token& t = cur();
    if (t.kind == TokenKind::Identifier || t.kind == TokenKind::Literal) return true;
    return t.text == "(" || t.text == "!" || t.text == "~" || t.text == "this" ||
           t.text == "super" || t.text == "new" || t.text == "switch" ||
           (t.kind == TokenKind::Keyword && is_primitive_type(t.text));
  }

  ExprPtr unary() {
    if (is("++") || is("--") || is("+") || is("-") || is("!") || is("~")) {
      auto e = make(ExprKind::Unary);
      e->name = std::string(cur_text());
      advance();
      e->args.push_back(unary());
      return e;
    }
    if (is("(") && !lambda_ahead()) {
      const State s = save();
      const std::size_t ln = line();
      advance();
      if (primitive_ahead()) {
        TypeRef t = parse_type();
        if (accept(")")) {
          auto e = std::make_unique<Expr>(ExprKind::Cast, ln);
          e->type = std::move(t);
          e->args.push_back(unary());
          return e;
        }
      } else if (is_ident()) {
        try {
          TypeRef t = parse_type();
          while (accept("&")) parse_type();
          if (accept(")") && cast_operand_ahead()) {
            auto e = std::make_unique<Expr>(ExprKind::Cast, ln);
            e->type = std::move(t);
            e->args.push_back(unary());
            return e;
          }
        } catch (const ParseError&) {
        }
      }
      restore(s);
    }
    return postfix(primary());
  }

  std::vector<ExprPtr> arguments() {
    expect("(");
    std::vector<ExprPtr> args;
    if (accept(")")) return args;
    do {
      args.push_back(expression());
    } while (accept(","));
    expect(")");
    return args;
  }

  ExprPtr array_initializer() {
    auto e = make(ExprKind::ArrayInit);
    expect("{");
    while (!accept("}")) {
      e->args.push_back(variable_initializer());
      if (!accept(",")) {
        expect("}");
        break;
      }
    }
    return e;
  }

  ExprPtr variable_initializer() { return is("{") ? array_initializer() : expression(); }

  ExprPtr creation(ExprPtr outer) {
    const std::size_t ln = line();
    expect("new");
    if (is("<")) type_arguments();
    TypeRef t;
    skip_annotations();
    t.line = line();
    if (primitive_ahead()) {
      t.name = cur().text;
      t.primitive = true;
      advance();
    } else {
      t.name = expect_ident();
      if (is("<")) t.args = type_arguments();
      while (is(".") && peek(1).kind == TokenKind::Identifier) {
        advance();
        t.name += "." + expect_ident();
        if (is("<")) type_arguments();
      }
    }
    if (is("[")) {
      auto e = std::make_unique<Expr>(ExprKind::NewArray, ln);
      while (is("[")) {
        advance();
        if (!is("]")) e->args.push_back(expression());
        expect("]");
        ++t.dims;
      }
      if (is("{")) e->args.push_back(array_initializer());
      e->type = std::move(t);
      return e;
    }
    auto e = std::make_unique<Expr>(ExprKind::New, ln);
    e->type = std::move(t);
    e->target = std::move(outer);
    e->args = arguments();
    if (is("{")) {
      e->anon_body = std::make_unique<TypeDecl>();
      const std::size_t first = pos_;
      class_body(*e->anon_body);
      set_range(e->anon_body->range, first);
    }
    return e;
  }

  static std::string dotted(const Expr& e) {
    if (e.kind == ExprKind::Name) return e.name;
    if (e.kind == ExprKind::FieldAccess && e.target) {
      const auto head = dotted(*e.target);
      return head.empty() ? std::string{} : head + "." + e.name;
    }
    return {};
  }

  ExprPtr switch_expression() {
    auto e = make(ExprKind::Switch);
    expect("switch");
    e->args.push_back(paren_expression());
    e->cases = switch_body();
    return e;
  }

  ExprPtr primary() {
    if (at_end()) fail("expected expression");
    const Token& t = cur();
    if (t.kind == TokenKind::Literal) {
      auto e = make(ExprKind::Literal);
      e->name = t.text;
      advance();
      return e;
    }
    if (is("(")) {
      if (lambda_ahead()) return lambda();
      return paren_expression();
    }
    if (is("this")) {
      auto e = make(ExprKind::This);
      advance();
      if (is("(")) {
        auto c = make(ExprKind::Call);
        c->name = "this";
        c->args = arguments();
        return c;
      }
      return e;
    }
    if (is("super")) {
      auto sup = make(ExprKind::Super);
      advance();
      if (is("(")) {
        auto c = make(ExprKind::Call);
        c->name = "super";
        c->args = arguments();
        return c;
      }
      if (is("::")) return sup;
      if (!is(".")) fail("expected '.' after 'super'");
      return sup;
    }
    if (is("new")) return creation(nullptr);
    if (is("switch")) return switch_expression();
    if (primitive_ahead()) {
      TypeRef type = parse_type();
      if (accept("::")) {
        auto e = make(ExprKind::MethodRef);
        expect("new");
        e->name = "new";
        e->type = std::move(type);
        return e;
      }
      expect(".");
      expect("class");
      auto e = make(ExprKind::ClassLit);
      e->type = std::move(type);
      return e;
    }
    if (t.kind == TokenKind::Identifier) {
      if (peek_is(1, "->")) return lambda();
      const std::size_t ln = line();
      std::string name = expect_ident();
      if (is("(")) {
        auto c = std::make_unique<Expr>(ExprKind::Call, ln);
        c->name = std::move(name);
        c->args = arguments();
        return c;
      }
      auto e = std::make_unique<Expr>(ExprKind::Name, ln);
      e->name = std::move(name);
      return e;
    }
    fail("expected expression");
  }

  ExprPtr postfix(ExprPtr e) {
    for (;;) {
      if (is(".")) {
        advance();
        if (is("<")) {
          type_arguments();
          auto c = make(ExprKind::Call);
          c->name = expect_ident();
          c->target = std::move(e);
          c->args = arguments();
          e = std::move(c);
        } else if (is("new")) {
          e = creation(std::move(e));
        } else if (is("this") || is("class") || is("super")) {
          const ExprKind k = is("this") ? ExprKind::This
                             : is("class") ? ExprKind::ClassLit
                                           : ExprKind::Super;
          auto q = make(k);
          q->type.name = dotted(*e);
          q->type.line = q->line;
          advance();
          e = std::move(q);
        } else {
          const std::size_t ln = line();
          std::string name = expect_ident();
          if (is("(")) {
            auto c = std::make_unique<Expr>(ExprKind::Call, ln);
            c->name = std::move(name);
            c->target = std::move(e);
            c->args = arguments();
            e = std::move(c);
          } else {
            auto f = std::make_unique<Expr>(ExprKind::FieldAccess, ln);
            f->name = std::move(name);
            f->target = std::move(e);
            e = std::move(f);
          }
        }
      } else if (is("[")) {
        if (peek_is(1, "]")) {
          TypeRef type;
          type.name = dotted(*e);
          type.line = e->line;
          while (is("[") && peek_is(1, "]")) {
            advance();
            advance();
            ++type.dims;
          }
          if (accept("::")) {
            auto r = make(ExprKind::MethodRef);
            expect("new");
            r->name = "new";
            r->type = std::move(type);
            e = std::move(r);
          } else {
            expect(".");
            expect("class");
            auto c = make(ExprKind::ClassLit);
            c->type = std::move(type);
            e = std::move(c);
          }
        } else {
          auto a = make(ExprKind::ArrayAccess);
          advance();
          a->args.push_back(std::move(e));
          a->args.push_back(expression());
          expect("]");
          e = std::move(a);
        }
      } else if (is("::")) {
        auto r = make(ExprKind::MethodRef);
        advance();
        if (is("<")) type_arguments();
        r->name = is("new") ? "new" : "";
        if (r->name.empty()) {
          r->name = expect_ident();
        } else {
          advance();
        }
        r->target = std::move(e);
        e = std::move(r);
      } else if (is("++") || is("--")) {
        auto u = make(ExprKind::Unary);
        u->name = std::string(cur_text());
        u->postfix = true;
        advance();
        u->args.push_back(std::move(e));
        e = std::move(u);
      } else {
        return e;
      }
    }
  }

  const std::vector<Token>& toks_;
  Token eof_{};
  std::size_t pos_ = 0;
  std::size_t gt_consumed_ = 0;
};

}  // namespace

CompilationUnit parse_java(const std::vector<Token>& code) { return Parser(code).compilation_unit(); }

SourceFile parse_source(std::string path, std::string_view text) {
  SourceFile f;
  f.path = std::move(path);
  try {
    f.stream = tokenize(text);
    f.code = f.stream.code_tokens();
    f.unit = parse_java(f.code);
  } catch (const LexError& e) {
    throw LexError(e.line(), e.column(), f.path + ": " + e.reason());
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.column(), f.path + ": " + e.reason());
  }
  return f;
}

}  // namespace testlab::metrics
