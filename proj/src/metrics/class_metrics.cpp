#include "testlab/metrics/class_metrics.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <optional>

#include "testlab/common/error.hpp"
#include "testlab/common/parallel.hpp"
#include "testlab/metrics/ast_walk.hpp"
#include "testlab/metrics/sub_metrics.hpp"

namespace testlab::metrics {

namespace {

constexpr int kMaxHierarchyDepth = 64;

struct ClassFacts {
  std::uint64_t nomcall = 0;
  std::set<std::size_t> coupled;
  std::set<std::string> depends;
  std::set<std::size_t> depends_project;
  std::set<std::size_t> invoked_classes;
  std::set<std::string> invoked_methods;
  std::set<std::pair<std::size_t, std::string>> foreign_data;
  std::set<std::pair<std::size_t, std::string>> foreign_calls;
  std::vector<std::set<std::string>> method_fields;
};

std::string dotted(const Expr& e) {
  if (e.kind == ExprKind::Name) return e.name;
  if (e.kind == ExprKind::FieldAccess && e.target) {
    const auto head = dotted(*e.target);
    return head.empty() ? std::string{} : head + "." + e.name;
  }
  return {};
}

bool skip_type_name(const TypeRef& t) {
  return t.empty() || t.primitive || t.name == "var" || t.name == "void";
}

std::string signature(std::string_view name, std::size_t argc) {
  return std::string(name) + "/" + std::to_string(argc);
}

/// Local variables, catch parameters, pattern bindings and lambda parameters
/// declared anywhere under a member body, outside nested class bodies.
class LocalCollector : public AstVisitor {
 public:
  explicit LocalCollector(std::map<std::string, TypeRef>& vars) : vars_(vars) {}

 protected:
  void on_var(const VarDecl& v) override { vars_[v.name] = v.type; }
  void on_catch(const CatchClause& c) override {
    vars_[c.name] = c.types.size() == 1 ? c.types[0] : TypeRef{};
  }
  bool on_expr(const Expr& e) override {
    if (e.kind == ExprKind::Lambda) {
      for (const auto& p : e.params) vars_[p] = TypeRef{};
    } else if (e.kind == ExprKind::InstanceOf && !e.name.empty()) {
      vars_[e.name] = e.type;
    }
    return true;
  }

 private:
  std::map<std::string, TypeRef>& vars_;
};

class Hierarchy {
 public:
  explicit Hierarchy(const ProjectIndex& index) : index_(index) {}

  const ProjectIndex& index() const { return index_; }

  bool is_type_param(std::size_t cls, std::string_view name) const {
    for (std::optional<std::size_t> c = cls; c; c = index_.cls(*c).enclosing) {
      const auto& tp = index_.cls(*c).decl->type_params;
      if (std::find(tp.begin(), tp.end(), name) != tp.end()) return true;
    }
    return false;
  }

  std::optional<std::size_t> resolve(std::string_view name, std::size_t ctx) const {
    if (is_type_param(ctx, name)) return std::nullopt;
    return index_.resolve(name, ctx);
  }

  std::optional<std::size_t> superclass(std::size_t cls) const {
    const auto* d = index_.cls(cls).decl;
    if (d->extends.empty()) return std::nullopt;
    return resolve(d->extends[0].name, cls);
  }

  struct FieldHit {
    std::size_t owner;
    const TypeRef* type;
  };

  std::optional<FieldHit> find_field(std::size_t cls, std::string_view name) const {
    std::optional<std::size_t> c = cls;
    for (int depth = 0; c && depth < kMaxHierarchyDepth; ++depth, c = superclass(*c)) {
      const auto* d = index_.cls(*c).decl;
      for (const auto& f : d->fields) {
        for (const auto& v : f.vars) {
          if (v.name == name) return FieldHit{*c, &v.type};
        }
      }
      for (const auto& e : d->enum_constants) {
        if (e.name == name) return FieldHit{*c, nullptr};
      }
    }
    return std::nullopt;
  }

  struct MethodHit {
    std::size_t owner;
    std::size_t index;
  };

  std::optional<MethodHit> find_method(std::size_t cls, std::string_view name,
                                       std::size_t argc) const {
    std::optional<MethodHit> by_name;
    std::optional<std::size_t> c = cls;
    for (int depth = 0; c && depth < kMaxHierarchyDepth; ++depth, c = superclass(*c)) {
      const auto& methods = index_.cls(*c).decl->methods;
      for (std::size_t i = 0; i < methods.size(); ++i) {
        if (methods[i].is_constructor || methods[i].name != name) continue;
        if (methods[i].params.size() == argc) return MethodHit{*c, i};
        if (!by_name) by_name = MethodHit{*c, i};
      }
    }
    return by_name;
  }

  /// Project supertypes reachable through extends and implements clauses.
  std::set<std::size_t> ancestors(std::size_t cls) const {
    std::set<std::size_t> out;
    std::vector<std::size_t> stack{cls};
    while (!stack.empty()) {
      const std::size_t c = stack.back();
      stack.pop_back();
      const auto* d = index_.cls(c).decl;
      for (const auto* list : {&d->extends, &d->implements}) {
        for (const auto& t : *list) {
          if (auto p = resolve(t.name, c); p && *p != cls && out.insert(*p).second) {
            stack.push_back(*p);
          }
        }
      }
    }
    return out;
  }

 private:
  const ProjectIndex& index_;
};

class FactCollector : public AstVisitor {
 public:
  FactCollector(const Hierarchy& h, std::size_t self,
                const std::vector<std::vector<MethodRecord>>& records, ClassFacts& out)
      : h_(h), index_(h.index()), self_(self), records_(records), out_(out) {
    descend_lambdas = true;
    descend_class_bodies = false;
  }

  void collect() { walk_members(*index_.cls(self_).decl, true); }

 protected:
  void on_type_ref(const TypeRef& t) override { note_type(t.name); }

  bool on_stmt(const Stmt& s) override {
    if (s.kind == StmtKind::LocalType && s.local_type) {
      walk_inner_type(*s.local_type);
      return false;
    }
    return true;
  }

  bool on_expr(const Expr& e) override {
    switch (e.kind) {
      case ExprKind::Call:
        on_call(e);
        return true;
      case ExprKind::New:
        return on_new(e);
      case ExprKind::FieldAccess:
        on_field_access(e);
        return true;
      case ExprKind::Name:
        if (!vars_.count(e.name)) use_own_field(e.name);
        return true;
      case ExprKind::MethodRef:
        if (e.target) receiver_class(*e.target);
        return false;
      default:
        return true;
    }
  }

 private:
  void note_type(const std::string& name) {
    TypeRef t;
    t.name = name;
    if (skip_type_name(t)) return;
    if (h_.is_type_param(self_, name)) return;
    if (auto c = index_.resolve(name, self_)) {
      note_project(*c);
    } else {
      out_.depends.insert(name);
    }
  }

  void note_project(std::size_t c) {
    if (c == self_) return;
    out_.coupled.insert(c);
    out_.depends_project.insert(c);
    out_.depends.insert(index_.cls(c).id);
  }

  void use_own_field(const std::string& name) {
    if (!current_fields_) return;
    for (const auto& f : index_.cls(self_).decl->fields) {
      for (const auto& v : f.vars) {
        if (v.name == name) {
          current_fields_->insert(name);
          return;
        }
      }
    }
  }

  std::optional<std::size_t> type_class(const TypeRef& t, std::size_t ctx) {
    if (skip_type_name(t) || t.dims > 0) return std::nullopt;
    return h_.resolve(t.name, ctx);
  }

  std::optional<std::size_t> field_class(std::size_t cls, const std::string& name) {
    auto hit = h_.find_field(cls, name);
    if (!hit) return std::nullopt;
    if (!hit->type) return hit->owner;  // enum constant
    return type_class(*hit->type, hit->owner);
  }

  /// Project class of an unqualified name: variable, attribute, or type.
  std::optional<std::size_t> name_class(const std::string& name, bool* is_type) {
    *is_type = false;
    if (auto it = vars_.find(name); it != vars_.end()) return type_class(it->second, self_);
    for (std::optional<std::size_t> c = self_; c; c = index_.cls(*c).enclosing) {
      if (h_.find_field(*c, name)) return field_class(*c, name);
    }
    if (h_.is_type_param(self_, name)) return std::nullopt;
    if (auto c = index_.resolve(name, self_)) {
      *is_type = true;
      note_project(*c);
      return c;
    }
    if (!name.empty() && std::isupper(static_cast<unsigned char>(name[0]))) {
      out_.depends.insert(name);
    }
    return std::nullopt;
  }

  /// Static type of an expression when it is a project class.
  std::optional<std::size_t> receiver_class(const Expr& e) {
    bool is_type = false;
    switch (e.kind) {
      case ExprKind::Name:
        return name_class(e.name, &is_type);
      case ExprKind::FieldAccess: {
        if (!e.target) return std::nullopt;
        if (e.target->kind == ExprKind::This && e.target->type.empty()) {
          return field_class(self_, e.name);
        }
        const auto path = dotted(e);
        if (!path.empty() && e.target->kind == ExprKind::Name && !vars_.count(e.target->name) &&
            !h_.find_field(self_, e.target->name)) {
          if (auto c = h_.resolve(path, self_)) {
            note_project(*c);
            return c;
          }
        }
        auto owner = receiver_class(*e.target);
        if (!owner) return std::nullopt;
        return field_class(*owner, e.name);
      }
      case ExprKind::Call: {
        std::optional<std::size_t> owner = self_;
        if (e.target) owner = receiver_class(*e.target);
        if (!owner) return std::nullopt;
        auto m = h_.find_method(*owner, e.name, e.args.size());
        if (!m) return std::nullopt;
        return type_class(index_.cls(m->owner).decl->methods[m->index].return_type, m->owner);
      }
      case ExprKind::New:
      case ExprKind::Cast:
        return type_class(e.type, self_);
      case ExprKind::This:
        return e.type.empty() ? std::optional<std::size_t>(self_) : h_.resolve(e.type.name, self_);
      case ExprKind::Super:
        return h_.superclass(self_);
      default:
        return std::nullopt;
    }
  }

  void invoke(std::optional<std::size_t> cls, const std::string& name, std::size_t argc,
              const std::string& fallback_receiver) {
    if (cls) {
      out_.invoked_methods.insert(index_.cls(*cls).id + "#" + signature(name, argc));
      if (*cls != self_) {
        out_.invoked_classes.insert(*cls);
        out_.coupled.insert(*cls);
      }
    } else {
      out_.invoked_methods.insert("?" + fallback_receiver + "#" + signature(name, argc));
    }
  }

  void on_call(const Expr& e) {
    ++out_.nomcall;
    const std::size_t argc = e.args.size();
    if (!e.target && (e.name == "this" || e.name == "super")) {
      auto cls = e.name == "this" ? std::optional<std::size_t>(self_) : h_.superclass(self_);
      invoke(cls, "<init>", argc, e.name);
      return;
    }
    std::optional<std::size_t> cls = self_;
    std::string receiver = "this";
    if (e.target) {
      cls = receiver_class(*e.target);
      receiver = dotted(*e.target);
      if (receiver.empty()) receiver = "<expr>";
    }
    invoke(cls, e.name, argc, receiver);
    if (!cls || *cls == self_) return;
    auto m = h_.find_method(*cls, e.name, argc);
    if (m && records_[m->owner].size() > m->index &&
        records_[m->owner][m->index].is_accessor_or_mutator) {
      out_.foreign_data.insert({m->owner, e.name});
    } else {
      out_.foreign_calls.insert({m ? m->owner : *cls, e.name});
    }
  }

  bool on_new(const Expr& e) {
    auto cls = type_class(e.type, self_);
    invoke(cls, "<init>", e.args.size(), e.type.name);
    if (!e.anon_body) return true;
    note_type(e.type.name);
    if (e.target) walk(*e.target);
    for (const auto& a : e.args) walk(*a);
    walk_inner_type(*e.anon_body);
    return false;
  }

  void on_field_access(const Expr& e) {
    if (!e.target) return;
    if (e.target->kind == ExprKind::This && e.target->type.empty()) {
      use_own_field(e.name);
      return;
    }
    auto owner = receiver_class(*e.target);
    if (!owner || *owner == self_) return;
    if (auto hit = h_.find_field(*owner, e.name)) {
      if (hit->owner != self_) out_.foreign_data.insert({hit->owner, e.name});
    }
  }

  void add_locals(const Stmt& body) {
    LocalCollector c(vars_);
    c.walk(body);
  }

  void add_expr_locals(const Expr& e) {
    LocalCollector c(vars_);
    c.walk(e);
  }

  void walk_members(const TypeDecl& t, bool top) {
    const auto outer_vars = vars_;
    if (!top) {
      for (const auto& f : t.fields) {
        for (const auto& v : f.vars) vars_[v.name] = v.type;
      }
    }
    const auto member_vars = vars_;
    for (const auto& f : t.fields) {
      for (const auto& v : f.vars) {
        on_type_ref(v.type);
        if (v.init) {
          add_expr_locals(*v.init);
          walk(*v.init);
          vars_ = member_vars;
        }
      }
    }
    for (const auto& c : t.enum_constants) {
      for (const auto& a : c.args) walk(*a);
      if (c.body) walk_inner_type(*c.body);
    }
    for (const auto& i : t.initializers) {
      add_locals(*i);
      walk(*i);
      vars_ = member_vars;
    }
    for (const auto& m : t.methods) {
      if (!m.return_type.empty()) on_type_ref(m.return_type);
      for (const auto& p : m.params) on_type_ref(p.type);
      for (const auto& x : m.throws) on_type_ref(x);
      if (!m.body) continue;
      for (const auto& p : m.params) vars_[p.name] = p.type;
      add_locals(*m.body);
      std::set<std::string>* saved = current_fields_;
      if (top && !m.is_constructor) current_fields_ = &out_.method_fields.emplace_back();
      walk(*m.body);
      current_fields_ = saved;
      vars_ = member_vars;
    }
    vars_ = outer_vars;
  }

  void walk_inner_type(const TypeDecl& t) {
    for (const auto& x : t.extends) on_type_ref(x);
    for (const auto& x : t.implements) on_type_ref(x);
    walk_members(t, false);
  }

  const Hierarchy& h_;
  const ProjectIndex& index_;
  std::size_t self_;
  const std::vector<std::vector<MethodRecord>>& records_;
  ClassFacts& out_;
  std::map<std::string, TypeRef> vars_;
  std::set<std::string>* current_fields_ = nullptr;
};

std::uint64_t class_loc(const ClassInfo& info, const ProjectIndex& index) {
  const auto& code = index.files()[info.file].code;
  const auto& r = info.decl->range;
  std::vector<std::pair<std::size_t, std::size_t>> holes;
  for (auto n : info.nested) {
    const auto& nr = index.cls(n).decl->range;
    holes.emplace_back(nr.first_token, nr.last_token);
  }
  std::uint64_t lines = 0;
  std::size_t prev = 0;
  for (std::size_t i = r.first_token; i <= r.last_token && i < code.size(); ++i) {
    const bool in_hole = std::any_of(holes.begin(), holes.end(),
                                     [i](const auto& h) { return i >= h.first && i <= h.second; });
    if (in_hole) continue;
    if (code[i].line != prev) {
      ++lines;
      prev = code[i].line;
    }
  }
  return lines;
}

std::uint64_t lcom1(const std::vector<std::set<std::string>>& methods, std::uint64_t* pairs) {
  std::uint64_t disjoint = 0;
  *pairs = 0;
  for (std::size_t a = 0; a < methods.size(); ++a) {
    for (std::size_t b = a + 1; b < methods.size(); ++b) {
      ++*pairs;
      const bool shares = std::any_of(methods[a].begin(), methods[a].end(),
                                      [&](const std::string& f) { return methods[b].count(f) > 0; });
      if (!shares) ++disjoint;
    }
  }
  return disjoint;
}

double as_double(std::uint64_t v) { return static_cast<double>(v); }

}  // namespace

MetricMap compute_package_context(std::span<const PackageMember> members) {
  if (members.empty()) throw InvalidArgument("package context needs at least one class");
  auto get = [](const PackageMember& m, std::string_view name) {
    auto it = m.metrics->find(name);
    if (it == m.metrics->end()) throw MissingMetric("class metrics lack '" + std::string(name) + "'");
    return it->second;
  };
  MetricMap out;
  for (std::size_t b = 0; b < kPackageStatBases.size(); ++b) {
    std::vector<double> xs;
    for (const auto& m : members) xs.push_back(get(m, kPackageStatSources[b]));
    const auto values = five_stats(xs).values();
    for (std::size_t op = 0; op < kStatOps.size(); ++op) {
      out[std::string(kPackageStatBases[b]) + "_" + std::string(kStatOps[op])] = values[op];
    }
  }
  for (auto name : kPackageSumMetrics) {
    const std::string source = "CS" + std::string(name.substr(2));
    double total = 0;
    for (const auto& m : members) total += get(m, source);
    out[std::string(name)] = total;
  }
  std::set<std::size_t> files;
  double interfaces = 0;
  double abstracts = 0;
  for (const auto& m : members) {
    files.insert(m.file);
    interfaces += m.is_interface ? 1 : 0;
    abstracts += m.is_abstract ? 1 : 0;
  }
  out["PKNOCS"] = static_cast<double>(members.size());
  out["PKNOFL"] = static_cast<double>(files.size());
  out["PKNOI"] = interfaces;
  out["PKNOAC"] = abstracts;
  return out;
}

ProjectAnalysis::ProjectAnalysis(const ProjectIndex& index) : index_(&index) {
  const auto& classes = index.classes();
  const std::size_t n = classes.size();
  const Hierarchy h(index);

  std::vector<std::vector<MethodRecord>> records(n);
  parallel_for(n, [&](std::size_t i) {
    records[i] = compute_method_records(*classes[i].decl, index.files()[classes[i].file].code);
  });

  std::vector<ClassFacts> facts(n);
  parallel_for(n, [&](std::size_t i) {
    FactCollector collector(h, i, records, facts[i]);
    collector.collect();
  });

  lexical_.resize(index.files().size());
  parallel_for(lexical_.size(),
               [&](std::size_t f) { lexical_[f] = compute_lexical_metrics(index.files()[f].stream); });

  std::vector<std::uint64_t> fanin(n, 0);
  std::vector<std::uint64_t> depends_by(n, 0);
  std::vector<std::uint64_t> children(n, 0);
  std::vector<std::vector<std::size_t>> parents(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto c : facts[i].invoked_classes) ++fanin[c];
    for (auto c : facts[i].depends_project) ++depends_by[c];
    std::set<std::size_t> supers;
    const auto* d = classes[i].decl;
    for (const auto* list : {&d->extends, &d->implements}) {
      for (const auto& t : *list) {
        if (auto p = h.resolve(t.name, i); p && *p != i) supers.insert(*p);
      }
    }
    for (auto p : supers) ++children[p];
    for (const auto& t : d->extends) {
      if (auto p = h.resolve(t.name, i); p && *p != i) parents[i].push_back(*p);
    }
  }

  std::vector<std::optional<std::uint64_t>> dit_memo(n);
  std::function<std::uint64_t(std::size_t, int)> dit = [&](std::size_t c, int depth) -> std::uint64_t {
    if (dit_memo[c]) return *dit_memo[c];
    const auto* d = classes[c].decl;
    std::uint64_t best = 0;
    for (const auto& t : d->extends) {
      auto p = h.resolve(t.name, c);
      std::uint64_t v = 1;
      if (p && *p != c && depth < kMaxHierarchyDepth) v = 1 + dit(*p, depth + 1);
      best = std::max(best, v);
    }
    dit_memo[c] = best;
    return best;
  };

  classes_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& info = classes[i];
    const auto& d = *info.decl;
    auto& out = classes_[i];
    out.methods = std::move(records[i]);
    out.is_interface = d.is_interface();
    out.is_abstract = !out.is_interface && (d.modifiers & kAbstract) != 0;
    out.parents = parents[i];
    out.dependencies = facts[i].depends_project;

    std::uint64_t nosm = 0, noim = 0, nocon = 0, noamm = 0;
    std::uint64_t nodm = 0, nopm = 0, noprm = 0, noplm = 0, nost = 0;
    for (const auto& r : out.methods) {
      if (r.is_constructor) {
        ++nocon;
      } else if (r.is_static) {
        ++nosm;
      } else {
        ++noim;
      }
      if (r.is_accessor_or_mutator) ++noamm;
      switch (r.visibility) {
        case Visibility::Public:
          ++noplm;
          break;
        case Visibility::Protected:
          ++nopm;
          break;
        case Visibility::Package:
          ++nodm;
          break;
        case Visibility::Private:
          ++noprm;
          break;
      }
      nost += r.nost;
    }
    for (const auto& init : d.initializers) nost += count_statements(*init);

    std::uint64_t nosa = d.enum_constants.size();
    std::uint64_t noia = 0;
    std::uint64_t dac = 0;
    for (const auto& f : d.fields) {
      const bool is_static = (f.modifiers & kStatic) || out.is_interface;
      for (const auto& v : f.vars) {
        (is_static ? nosa : noia) += 1;
        if (!skip_type_name(v.type) && !h.is_type_param(i, v.type.name) &&
            index.resolve(v.type.name, i)) {
          ++dac;
        }
      }
    }

    // Inheritance
    const auto ancestors = h.ancestors(i);
    std::set<std::string> own_sigs;
    for (const auto& m : d.methods) {
      if (!m.is_constructor) own_sigs.insert(signature(m.name, m.params.size()));
    }
    std::uint64_t nmo = 0;
    for (const auto& m : d.methods) {
      if (m.is_constructor || (m.modifiers & kStatic)) continue;
      const auto sig = signature(m.name, m.params.size());
      const bool overrides = std::any_of(ancestors.begin(), ancestors.end(), [&](std::size_t a) {
        const auto& am = classes[a].decl->methods;
        return std::any_of(am.begin(), am.end(), [&](const MethodDecl& x) {
          return !x.is_constructor && !(x.modifiers & kPrivate) &&
                 signature(x.name, x.params.size()) == sig;
        });
      });
      if (overrides) ++nmo;
    }
    std::set<std::string> inherited;
    std::optional<std::size_t> p = d.extends.empty() ? std::nullopt : h.resolve(d.extends[0].name, i);
    for (int depth = 0; p && *p != i && depth < kMaxHierarchyDepth; ++depth) {
      for (const auto& m : classes[*p].decl->methods) {
        if (m.is_constructor || (m.modifiers & kPrivate)) continue;
        const auto sig = signature(m.name, m.params.size());
        if (!own_sigs.count(sig)) inherited.insert(sig);
      }
      p = h.superclass(*p);
    }

    const std::uint64_t nom = out.methods.size();
    std::uint64_t pairs = 0;
    const std::uint64_t locm = lcom1(facts[i].method_fields, &pairs);
    out.method_pairs = pairs;
    const auto& f = facts[i];

    MetricMap& m = out.metrics;
    m["CSLOC"] = as_double(class_loc(info, index));
    m["CSNOST"] = as_double(nost);
    m["CSNOSM"] = as_double(nosm);
    m["CSNOSA"] = as_double(nosa);
    m["CSNOIM"] = as_double(noim);
    m["CSNOIA"] = as_double(noia);
    m["CSNOM"] = as_double(nom);
    m["CSNOMNAMM"] = as_double(nom - noamm);
    m["CSNOCON"] = as_double(nocon);
    m["CSNOMCALL"] = as_double(f.nomcall);
    m["CSDAC"] = as_double(dac);
    m["CSATFD"] = as_double(f.foreign_data.size());
    m["CSLOCM"] = as_double(locm);
    m["CSCBO"] = as_double(f.coupled.size());
    m["CSRFC"] = as_double(nom + f.invoked_methods.size());
    m["CSFANIN"] = as_double(fanin[i]);
    m["CSFANOUT"] = as_double(f.invoked_classes.size());
    m["CSDEPENDS"] = as_double(f.depends.size());
    m["CSDEPENDSBY"] = as_double(depends_by[i]);
    m["CSCFNAMM"] = as_double(f.foreign_calls.size());
    m["CSNODM"] = as_double(nodm);
    m["CSNOPM"] = as_double(nopm);
    m["CSNOPRM"] = as_double(noprm);
    m["CSNOPLM"] = as_double(noplm);
    m["CSNOAMM"] = as_double(noamm);
    m["CSDIT"] = as_double(dit(i, 0));
    m["CSNOC"] = as_double(children[i]);
    m["CSNOP"] = as_double(d.extends.size());
    m["CSNIM"] = as_double(inherited.size());
    m["CSNMO"] = as_double(nmo);
    m["CSNOII"] = as_double(out.is_interface ? 0 : d.implements.size());
    for (auto base : kMethodBases) {
      for (auto& [name, value] : derive_sub_metrics(out.methods, base)) m[name] = value;
    }
  }

  for (const auto& package : index.packages()) {
    std::vector<PackageMember> members;
    for (auto c : index.classes_in_package(package)) {
      members.push_back({&classes_[c].metrics, classes[c].file, classes_[c].is_interface,
                         classes_[c].is_abstract});
    }
    packages_.emplace(package, compute_package_context(members));
  }
}

const MetricMap& ProjectAnalysis::package_context(std::string_view package) const {
  auto it = packages_.find(package);
  if (it == packages_.end()) throw NotFound("unknown package '" + std::string(package) + "'");
  return it->second;
}

MetricMap compute_class_metrics(const ProjectIndex& index, std::size_t cls) {
  ProjectAnalysis analysis(index);
  return analysis.cls(cls).metrics;
}

}  // namespace testlab::metrics
