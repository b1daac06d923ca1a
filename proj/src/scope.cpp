#include "gamesmell/scope.hpp"

#include <algorithm>
#include <functional>
#include <tuple>

namespace gamesmell {

const Declaration* Scope::find(std::string_view name) const {
  for (const auto& d : declarations)
    if (d.name == name) return &d;
  return nullptr;
}

std::set<std::string> ScopeModel::defined_globals() const {
  std::set<std::string> out;
  for (const auto& [name, g] : globals)
    if (g.defined()) out.insert(name);
  return out;
}

int ScopeModel::scope_of(const Node* owner) const {
  auto it = scope_by_owner.find(owner);
  return it == scope_by_owner.end() ? -1 : it->second;
}

int ScopeModel::innermost_scope(const Node& node) const {
  for (const Node* n = &node; n; n = n->parent) {
    int s = scope_of(n);
    if (s >= 0) return s;
  }
  return 0;
}

int ScopeModel::resolve(std::string_view name, int scope) const {
  for (int s = scope; s >= 0; s = scopes[static_cast<std::size_t>(s)].parent)
    if (scopes[static_cast<std::size_t>(s)].find(name)) return s;
  return -1;
}

std::string dotted_name(const Node& node) {
  if (node.kind == NodeKind::Identifier) return node.name;
  if (node.kind == NodeKind::This) return "this";
  if (node.kind == NodeKind::Member && !node.computed) {
    std::string base = dotted_name(node.child(0));
    if (base.empty()) return {};
    return base + "." + node.name;
  }
  return {};
}

namespace {

bool is_function_body(const Node& block) {
  return block.kind == NodeKind::Block && block.parent && block.parent->is_function() &&
         &block.parent->function_body() == &block;
}

bool is_catch_body(const Node& block) {
  return block.kind == NodeKind::Block && block.parent &&
         block.parent->kind == NodeKind::CatchClause;
}

const Node* param_identifier(const Node& p) {
  if (p.kind == NodeKind::Identifier) return &p;
  if (p.kind == NodeKind::Assignment && p.child(0).kind == NodeKind::Identifier) return &p.child(0);
  return nullptr;
}

class ScopeBuilder {
 public:
  explicit ScopeBuilder(const SourceUnit& unit) : unit_(unit) {}

  ScopeModel build() {
    const Node& program = *unit_.ast;
    bool handler = unit_.fragment_origin && *unit_.fragment_origin != ScriptOrigin::ScriptTag;
    new_scope(handler ? ScopeKind::Function : ScopeKind::Global, &program, -1);
    for (const auto& s : program.children) declare_pass(*s, 0);
    for (const auto& s : program.children) reference_pass(*s, 0);
    collect_globals();
    collect_types(program);
    std::vector<const ScopeModel*> self{&model_};
    model_.inheritance = link_inheritance(self);
    return std::move(model_);
  }

 private:
  int new_scope(ScopeKind kind, const Node* owner, int parent) {
    int id = static_cast<int>(model_.scopes.size());
    Scope s;
    s.kind = kind;
    s.owner = owner;
    s.parent = parent;
    model_.scopes.push_back(std::move(s));
    if (parent >= 0) model_.scopes[static_cast<std::size_t>(parent)].children.push_back(id);
    model_.scope_by_owner[owner] = id;
    return id;
  }

  Scope& scope(int id) { return model_.scopes[static_cast<std::size_t>(id)]; }

  int hoist_target(int s) {
    while (scope(s).kind != ScopeKind::Function && scope(s).kind != ScopeKind::Global) s = scope(s).parent;
    return s;
  }

  void declare(int s, const std::string& name, DeclarationKind kind, const Node* node) {
    if (name.empty() || scope(s).find(name)) return;
    scope(s).declarations.push_back({name, kind, node});
  }

  // ---- pass 1: scopes and declarations ----

  void declare_function(const Node& fn, int s) {
    if (fn.kind == NodeKind::FunctionDecl) declare(hoist_target(s), fn.name, DeclarationKind::Function, &fn);
    int fs = new_scope(ScopeKind::Function, &fn, s);
    for (std::uint32_t i = 0; i < fn.param_count; ++i) {
      const Node& p = fn.child(i);
      if (const Node* id = param_identifier(p)) declare(fs, id->name, DeclarationKind::Param, id);
      if (p.kind == NodeKind::Assignment) declare_pass(p.child(1), fs);
    }
    if (fn.kind == NodeKind::FunctionExpr && !fn.name.empty() && !is_method_function(fn))
      declare(fs, fn.name, DeclarationKind::FunctionName, &fn);
    for (const auto& stmt : fn.function_body().children) declare_pass(*stmt, fs);
  }

  static bool is_method_function(const Node& fn) {
    return fn.parent && (fn.parent->kind == NodeKind::MethodDef ||
                         (fn.parent->kind == NodeKind::Property &&
                          fn.parent->property_kind != PropertyKind::Init));
  }

  void declare_pass(const Node& n, int s) {
    switch (n.kind) {
      case NodeKind::FunctionDecl:
      case NodeKind::FunctionExpr:
      case NodeKind::ArrowFunction:
        declare_function(n, s);
        return;
      case NodeKind::VarDecl: {
        int target = n.decl_keyword == DeclKeyword::Var ? hoist_target(s) : s;
        auto kind = n.decl_keyword == DeclKeyword::Var   ? DeclarationKind::Var
                    : n.decl_keyword == DeclKeyword::Let ? DeclarationKind::Let
                                                         : DeclarationKind::Const;
        for (const auto& d : n.children) {
          declare(target, d->name, kind, d.get());
          if (d->size() > 1) declare_pass(d->child(1), s);
        }
        return;
      }
      case NodeKind::ClassDecl: {
        if (!n.is_class_expression) declare(s, n.name, DeclarationKind::Class, &n);
        std::size_t first = 0;
        if (n.has_superclass) {
          declare_pass(n.child(0), s);
          first = 1;
        }
        int cs = new_scope(ScopeKind::Class, &n, s);
        if (n.is_class_expression) declare(cs, n.name, DeclarationKind::Class, &n);
        for (std::size_t i = first; i < n.size(); ++i) declare_pass(n.child(i), cs);
        return;
      }
      case NodeKind::Block:
        if (is_function_body(n) || is_catch_body(n)) break;
        {
          int bs = new_scope(ScopeKind::Block, &n, s);
          for (const auto& c : n.children) declare_pass(*c, bs);
        }
        return;
      case NodeKind::Loop:
      case NodeKind::SwitchStmt: {
        int bs = new_scope(ScopeKind::Block, &n, s);
        for (const auto& c : n.children) declare_pass(*c, bs);
        return;
      }
      case NodeKind::CatchClause: {
        int cs = new_scope(ScopeKind::Catch, &n, s);
        if (n.has_param) declare(cs, n.child(0).name, DeclarationKind::CatchParam, &n.child(0));
        for (const auto& c : n.function_body().children) declare_pass(*c, cs);
        return;
      }
      default:
        break;
    }
    for (const auto& c : n.children) declare_pass(*c, s);
  }

  // ---- pass 2: references ----

  void add_reference(const Node& id, int s, bool write) {
    Reference r;
    r.name = id.name;
    r.node = &id;
    r.write = write;
    r.scope = s;
    r.declaring_scope = model_.resolve(id.name, s);
    model_.references.push_back(std::move(r));
  }

  void reference_target(const Node& target, int s) {
    if (target.kind == NodeKind::Identifier) {
      add_reference(target, s, true);
    } else if (target.kind == NodeKind::VarDecl) {
      for (const auto& d : target.children)
        if (d->size() > 1) reference_pass(d->child(1), s);
    } else {
      reference_pass(target, s);
    }
  }

  void reference_pass(const Node& n, int s) {
    if (int own = model_.scope_of(&n); own >= 0 && &n != unit_.ast.get()) {
      if (n.is_function()) {
        for (std::uint32_t i = 0; i < n.param_count; ++i) {
          const Node& p = n.child(i);
          if (p.kind == NodeKind::Assignment) reference_pass(p.child(1), own);
        }
        for (const auto& stmt : n.function_body().children) reference_pass(*stmt, own);
        return;
      }
      if (n.kind == NodeKind::ClassDecl) {
        std::size_t first = 0;
        if (n.has_superclass) {
          reference_pass(n.child(0), s);
          first = 1;
        }
        for (std::size_t i = first; i < n.size(); ++i) reference_pass(n.child(i), own);
        return;
      }
      if (n.kind == NodeKind::CatchClause) {
        for (const auto& c : n.function_body().children) reference_pass(*c, own);
        return;
      }
      if (n.kind == NodeKind::Loop && (n.loop_kind == LoopKind::ForIn || n.loop_kind == LoopKind::ForOf)) {
        reference_target(n.child(0), own);
        reference_pass(n.child(1), own);
        reference_pass(n.child(2), own);
        return;
      }
      for (const auto& c : n.children) reference_pass(*c, own);
      return;
    }
    switch (n.kind) {
      case NodeKind::Identifier:
        add_reference(n, s, false);
        return;
      case NodeKind::Member:
        reference_pass(n.child(0), s);
        if (n.computed) reference_pass(n.child(1), s);
        return;
      case NodeKind::Property:
      case NodeKind::MethodDef:
        if (n.computed) reference_pass(n.child(0), s);
        reference_pass(n.child(1), s);
        return;
      case NodeKind::Declarator:
        if (n.size() > 1) reference_pass(n.child(1), s);
        return;
      case NodeKind::Assignment:
        reference_target(n.child(0), s);
        reference_pass(n.child(1), s);
        return;
      case NodeKind::Update:
        reference_target(n.child(0), s);
        return;
      default:
        for (const auto& c : n.children) reference_pass(*c, s);
    }
  }

  // ---- globals ----

  bool root_is_global() const { return model_.scopes[0].kind == ScopeKind::Global; }

  static bool global_declaration(DeclarationKind k) {
    return k == DeclarationKind::Var || k == DeclarationKind::Function;
  }

  GlobalVar& global(const std::string& name) {
    auto& g = model_.globals[name];
    g.name = name;
    return g;
  }

  void collect_globals() {
    for (const auto& r : model_.references) {
      if (r.declaring_scope < 0 && (r.name == "require" || r.name == "module" || r.name == "exports")) {
        model_.commonjs = true;
        break;
      }
    }
    bool top_level_globals = root_is_global() && !model_.commonjs;
    if (top_level_globals) {
      for (const auto& d : model_.scopes[0].declarations)
        if (global_declaration(d.kind)) global(d.name).definitions.push_back(d.node->span);
    }
    for (const auto& r : model_.references) {
      if (r.declaring_scope < 0) {
        auto& g = global(r.name);
        g.references.push_back(r.node->span);
        if (r.write) g.definitions.push_back(r.node->span);
      } else if (r.declaring_scope == 0 && top_level_globals) {
        const Declaration* d = model_.scopes[0].find(r.name);
        if (d && global_declaration(d->kind)) global(r.name).references.push_back(r.node->span);
      }
    }
    // window.x / globalThis.x property creation and use.
    walk(*unit_.ast, [&](const Node& n) {
      if (n.kind != NodeKind::Member || n.computed) return true;
      const Node& obj = n.child(0);
      if (obj.kind != NodeKind::Identifier || (obj.name != "window" && obj.name != "globalThis"))
        return true;
      if (model_.resolve(obj.name, model_.innermost_scope(obj)) >= 0) return true;
      const Node* p = n.parent;
      bool written = p && p->kind == NodeKind::Assignment && p->children.front().get() == &n;
      auto& g = global(n.name);
      if (written) g.definitions.push_back(n.span);
      else g.references.push_back(n.span);
      return true;
    });
    for (auto& [name, g] : model_.globals) {
      auto by_offset = [](const Span& a, const Span& b) { return a.start.offset < b.start.offset; };
      std::sort(g.definitions.begin(), g.definitions.end(), by_offset);
      std::sort(g.references.begin(), g.references.end(), by_offset);
    }
  }

  // ---- inheritance facts ----

  void add_site(const std::string& child, const std::string& parent, const Span& span) {
    model_.inheritance_sites.push_back({child, parent, unit_.path, unit_.to_file(span)});
  }

  TypeInfo& type(const std::string& name, const Span& span) {
    auto [it, inserted] = model_.types.try_emplace(name);
    if (inserted) {
      it->second.name = name;
      it->second.span = span;
    }
    return it->second;
  }

  // Collects `this.x` reads and writes inside a function, not crossing into
  // nested non-arrow functions (they rebind `this`).
  void this_facts(const Node& fn, std::set<std::string>* writes, std::set<std::string>& reads) {
    std::function<void(const Node&)> visit = [&](const Node& n) {
      if (&n != &fn && (n.kind == NodeKind::FunctionDecl || n.kind == NodeKind::FunctionExpr ||
                        n.kind == NodeKind::ClassDecl))
        return;
      if (n.kind == NodeKind::Member && !n.computed &&
          (n.child(0).kind == NodeKind::This || n.child(0).kind == NodeKind::Super)) {
        const Node* p = n.parent;
        bool written = p && p->kind == NodeKind::Assignment && p->children.front().get() == &n;
        if (written && n.child(0).kind == NodeKind::This) {
          if (writes) writes->insert(n.name);
        } else {
          reads.insert(n.name);
        }
      }
      for (const auto& c : n.children) visit(*c);
    };
    visit(fn);
  }

  // Name a class or function value is bound to.
  static std::string binding_name(const Node& value) {
    if (!value.name.empty() && value.kind != NodeKind::ArrowFunction) {
      if (value.kind == NodeKind::FunctionDecl || value.kind == NodeKind::ClassDecl) return value.name;
    }
    const Node* p = value.parent;
    if (!p) return {};
    if (p->kind == NodeKind::Declarator && p->size() > 1 && &p->child(1) == &value) return p->name;
    if (p->kind == NodeKind::Assignment && &p->child(1) == &value) return dotted_name(p->child(0));
    if (value.kind == NodeKind::ClassDecl || value.kind == NodeKind::FunctionExpr) return value.name;
    return {};
  }

  // `P.prototype` -> "P", `P` -> "P".
  static std::string prototype_owner(const Node& n) {
    std::string name = dotted_name(n);
    constexpr std::string_view kSuffix = ".prototype";
    if (name.size() > kSuffix.size() && name.ends_with(kSuffix)) name.resize(name.size() - kSuffix.size());
    return name;
  }

  // Parent named by `Object.create(P[.prototype])` or `new P(...)`, or "".
  static std::string prototype_source(const Node& value) {
    if (value.kind == NodeKind::Call && dotted_name(value.child(0)) == "Object.create" && value.size() > 1)
      return prototype_owner(value.child(1));
    if (value.kind == NodeKind::New) return dotted_name(value.child(0));
    return {};
  }

  void object_members(const Node& obj, TypeInfo& t) {
    for (const auto& p : obj.children) {
      if (p->kind != NodeKind::Property || p->computed || p->name.empty()) continue;
      t.members.insert(p->name);
      const Node& v = p->child(1);
      if (v.kind == NodeKind::FunctionExpr) this_facts(v, nullptr, t.this_uses);
    }
  }

  void collect_types(const Node& program) {
    walk(program, [&](const Node& n) {
      switch (n.kind) {
        case NodeKind::ClassDecl: {
          std::string name = binding_name(n);
          if (name.empty()) break;
          TypeInfo& t = type(name, n.span);
          std::size_t first = n.has_superclass ? 1 : 0;
          for (std::size_t i = first; i < n.size(); ++i) {
            const Node& m = n.child(i);
            const Node& fn = m.child(1);
            if (m.property_kind == PropertyKind::Constructor) {
              this_facts(fn, &t.members, t.this_uses);
              continue;
            }
            if (!m.computed && !m.is_static) t.members.insert(m.name);
            this_facts(fn, nullptr, t.this_uses);
          }
          if (n.has_superclass) {
            std::string parent = dotted_name(n.child(0));
            if (!parent.empty()) add_site(name, parent, n.span);
          }
          break;
        }
        case NodeKind::FunctionDecl:
        case NodeKind::FunctionExpr: {
          std::string name = binding_name(n);
          if (name.empty() || name.find(".prototype") != std::string::npos) break;
          std::set<std::string> writes;
          std::set<std::string> reads;
          this_facts(n, &writes, reads);
          if (writes.empty() && !model_.types.count(name)) break;
          TypeInfo& t = type(name, n.span);
          t.members.insert(writes.begin(), writes.end());
          t.this_uses.insert(reads.begin(), reads.end());
          break;
        }
        case NodeKind::Declarator: {
          if (n.size() < 2) break;
          const Node& value = n.child(1);
          if (value.kind == NodeKind::ObjectLiteral) object_members(value, type(n.name, n.span));
          std::string parent = prototype_source(value);
          if (!parent.empty() && value.kind == NodeKind::Call)
            add_site(n.name, parent, n.span);
          break;
        }
        case NodeKind::Assignment: {
          if (n.name != "=") break;
          const Node& target = n.child(0);
          const Node& value = n.child(1);
          std::string tname = dotted_name(target);
          if (tname.empty()) break;
          constexpr std::string_view kProto = ".prototype";
          if (tname.ends_with(kProto)) {
            std::string owner = tname.substr(0, tname.size() - kProto.size());
            if (value.kind == NodeKind::ObjectLiteral) object_members(value, type(owner, n.span));
            std::string parent = prototype_source(value);
            if (!parent.empty()) add_site(owner, parent, n.span);
          } else if (auto pos = tname.rfind(".prototype."); pos != std::string::npos) {
            std::string owner = tname.substr(0, pos);
            TypeInfo& t = type(owner, n.span);
            t.members.insert(target.name);
            if (value.kind == NodeKind::FunctionExpr) this_facts(value, nullptr, t.this_uses);
          } else if (target.kind == NodeKind::Identifier) {
            if (value.kind == NodeKind::ObjectLiteral) object_members(value, type(tname, n.span));
            std::string parent = prototype_source(value);
            if (!parent.empty() && value.kind == NodeKind::Call)
              add_site(tname, parent, n.span);
          }
          break;
        }
        case NodeKind::Member: {
          if (n.computed) break;
          std::string owner = prototype_owner(n.child(0));
          if (owner.empty() || owner == "this") break;
          const Node* p = n.parent;
          bool written = p && p->kind == NodeKind::Assignment && p->children.front().get() == &n;
          (written ? model_.member_writes : model_.member_reads)[owner].insert(n.name);
          break;
        }
        default:
          break;
      }
      return true;
    });
  }

  const SourceUnit& unit_;
  ScopeModel model_;
};

}  // namespace

ScopeModel build_scopes(const SourceUnit& unit) {
  if (!unit.ast) return {};
  return ScopeBuilder(unit).build();
}

std::vector<InheritanceEdge> link_inheritance(std::span<const ScopeModel* const> models) {
  std::map<std::string, TypeInfo> types;
  std::map<std::string, std::set<std::string>> reads;
  std::map<std::string, std::set<std::string>> writes;
  std::map<std::pair<std::string, std::string>, const InheritanceSite*> sites;
  for (const ScopeModel* m : models) {
    for (const auto& [name, t] : m->types) {
      auto& merged = types[name];
      merged.name = name;
      merged.members.insert(t.members.begin(), t.members.end());
      merged.this_uses.insert(t.this_uses.begin(), t.this_uses.end());
    }
    for (const auto& [name, s] : m->member_reads) reads[name].insert(s.begin(), s.end());
    for (const auto& [name, s] : m->member_writes) writes[name].insert(s.begin(), s.end());
    for (const auto& site : m->inheritance_sites) {
      if (site.child == site.parent) continue;
      auto [it, inserted] = sites.try_emplace({site.child, site.parent}, &site);
      if (!inserted && std::tie(site.path, site.span.start.offset) <
                           std::tie(it->second->path, it->second->span.start.offset))
        it->second = &site;
    }
  }
  std::map<std::string, std::vector<std::string>> parents;
  for (const auto& [key, site] : sites) parents[key.first].push_back(key.second);

  std::vector<InheritanceEdge> edges;
  for (const auto& [key, site] : sites) {
    InheritanceEdge e;
    e.child = key.first;
    e.parent = key.second;
    e.path = site->path;
    e.span = site->span;
    // Members of the parent and everything above it.
    std::set<std::string> seen{e.child};
    std::vector<std::string> pending{e.parent};
    while (!pending.empty()) {
      std::string cur = pending.back();
      pending.pop_back();
      if (!seen.insert(cur).second) continue;
      if (auto t = types.find(cur); t != types.end())
        e.inherited.insert(t->second.members.begin(), t->second.members.end());
      if (auto p = parents.find(cur); p != parents.end())
        pending.insert(pending.end(), p->second.begin(), p->second.end());
    }
    std::set<std::string> own;
    std::set<std::string> uses;
    if (auto t = types.find(e.child); t != types.end()) {
      own = t->second.members;
      uses = t->second.this_uses;
    }
    if (auto w = writes.find(e.child); w != writes.end()) own.insert(w->second.begin(), w->second.end());
    if (auto r = reads.find(e.child); r != reads.end()) uses.insert(r->second.begin(), r->second.end());
    for (const auto& m : e.inherited) {
      if (own.count(m)) e.overridden.insert(m);
      if (uses.count(m)) e.used.insert(m);
    }
    edges.push_back(std::move(e));
  }
  return edges;
}

}  // namespace gamesmell
