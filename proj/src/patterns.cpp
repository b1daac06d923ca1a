#include "gamesmell/patterns.hpp"

#include <algorithm>
#include <map>
#include <regex>
#include <set>

#include "gamesmell/metrics.hpp"
#include "js_util.hpp"

namespace gamesmell {

using detail::make_finding;

namespace {

bool is_link(const Node& n) { return n.kind == NodeKind::Member || n.kind == NodeKind::Call; }

bool is_chain_interior(const Node& n) {
  const Node* p = n.parent;
  return p && is_link(*p) && p->children.front().get() == &n;
}

// Analysis contexts of a unit: the top level plus every function.
std::vector<const Node*> contexts(const Node& program) {
  std::vector<const Node*> out{&program};
  auto fns = detail::all_functions(program);
  out.insert(out.end(), fns.begin(), fns.end());
  return out;
}

std::string join(const std::set<std::string>& items, std::string_view sep) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += sep;
    out += s;
  }
  return out;
}

bool is_function_value(const Node& n) {
  return n.kind == NodeKind::FunctionExpr || n.kind == NodeKind::ArrowFunction;
}

int method_count(const Node& object) {
  int methods = 0;
  for (const auto& c : object.children) {
    if (c->kind == NodeKind::MethodDef && c->property_kind != PropertyKind::Constructor) ++methods;
    if (c->kind == NodeKind::Property && is_function_value(c->child(1))) ++methods;
  }
  return methods;
}

// ---- P2 helpers ----

bool is_event_member_name(std::string_view name) {
  static const std::regex re("on(key|mouse|touch|pointer)[a-z]*");
  return std::regex_match(std::string(name), re);
}

const std::set<std::string>& event_properties() {
  static const std::set<std::string> props = {
      "keyCode", "which",   "key",     "code",           "charCode",        "clientX",
      "clientY", "pageX",   "pageY",   "offsetX",        "offsetY",         "button",
      "touches", "changedTouches",     "targetTouches",  "preventDefault",  "stopPropagation"};
  return props;
}

// Describes the first event/input source in a context's own code, or "".
std::string event_source(const Node& ctx) {
  std::set<std::string> params;
  if (ctx.is_function()) {
    for (std::size_t i = 0; i < ctx.param_count; ++i) {
      const Node& p = ctx.child(i);
      if (p.kind == NodeKind::Identifier) params.insert(p.name);
    }
  }
  static const std::regex on_attr("on[a-z]+");
  std::string found;
  detail::walk_own(ctx, [&](const Node& n) {
    if (!found.empty()) return false;
    if (n.kind == NodeKind::Call && n.child(0).kind == NodeKind::Member && !n.child(0).computed) {
      const std::string& m = n.child(0).name;
      if (m == "getItem" || m == "addEventListener" || m == "attachEvent") found = m;
    } else if (n.kind == NodeKind::Member && !n.computed) {
      if (is_event_member_name(n.name)) {
        found = n.name;
      } else if (n.child(0).kind == NodeKind::Identifier && params.count(n.child(0).name) &&
                 event_properties().count(n.name)) {
        found = n.child(0).name + "." + n.name;
      }
    } else if (n.kind == NodeKind::Assignment && n.child(0).kind == NodeKind::Member &&
               !n.child(0).computed && std::regex_match(n.child(0).name, on_attr)) {
      found = n.child(0).name;
    }
    return true;
  });
  return found;
}

// Method names being called (`x.addEventListener(...)`) are not bindings.
bool is_callee_member(const Node& m) {
  return m.kind == NodeKind::Member && !m.computed && m.parent && m.parent->kind == NodeKind::Call &&
         m.parent->children.front().get() == &m;
}

void add_names(const Node& n, std::set<std::string>& names) {
  if (is_callee_member(n)) return;
  if (n.kind == NodeKind::Identifier && detail::is_property_name(n) && is_callee_member(*n.parent)) return;
  if (n.kind == NodeKind::Identifier || n.kind == NodeKind::Member || n.kind == NodeKind::FunctionDecl ||
      n.kind == NodeKind::FunctionExpr || n.kind == NodeKind::ClassDecl || n.kind == NodeKind::Declarator)
    if (!n.name.empty()) names.insert(n.name);
}

bool mentions_queue(const Node& ctx, const std::regex& queue) {
  std::set<std::string> names;
  walk(ctx, [&](const Node& n) {
    add_names(n, names);
    return true;
  });
  for (const Node* a = ctx.parent ? enclosing_function(ctx) : nullptr; a; a = enclosing_function(*a)) {
    add_names(*a, names);
    detail::walk_own(*a, [&](const Node& n) {
      add_names(n, names);
      return true;
    });
  }
  return std::any_of(names.begin(), names.end(),
                     [&](const std::string& s) { return std::regex_search(s, queue); });
}

int return_chain_depth(const Node& fn) {
  int depth = 0;
  const Node* cur = &fn;
  while (cur->is_function() && cur->parent && cur->parent->kind == NodeKind::Return) {
    const Node* outer = enclosing_function(*cur->parent);
    if (!outer) break;
    ++depth;
    cur = outer;
  }
  return depth;
}

// ---- P3 helpers ----

bool is_primitive(const Node& v) {
  if (v.kind == NodeKind::Literal) return v.literal_kind != LiteralKind::RegExp;
  if (v.kind == NodeKind::Unary && (v.name == "-" || v.name == "+"))
    return v.child(0).kind == NodeKind::Literal && v.child(0).literal_kind == LiteralKind::Number;
  return false;
}

bool all_named_properties(const Node& object) {
  return std::all_of(object.children.begin(), object.children.end(), [](const auto& c) {
    return c->kind == NodeKind::Property && !c->computed && !c->name.empty();
  });
}

struct MemberUse {
  std::set<const Node*> functions;
  bool in_loop = false;
};

// ---- P4 helpers ----

bool is_allocation(const Node& n) {
  return n.kind == NodeKind::ObjectLiteral || n.kind == NodeKind::ArrayLiteral || n.kind == NodeKind::New;
}

bool inside_allocation(const Node& n, const Node& ctx) {
  for (const Node* p = n.parent; p && p != &ctx; p = p->parent)
    if (is_allocation(*p)) return true;
  return false;
}

std::string allocated_binding(const Node& alloc) {
  const Node* p = alloc.parent;
  if (!p) return {};
  if (p->kind == NodeKind::Declarator && p->size() > 1 && &p->child(1) == &alloc) return p->name;
  if (p->kind == NodeKind::Assignment && p->name == "=" && &p->child(1) == &alloc &&
      p->child(0).kind == NodeKind::Identifier)
    return p->child(0).name;
  return {};
}

// Names of containers grown inside a loop of the context's own code.
std::set<std::string> grown_in_loop(const Node& ctx) {
  static const std::set<std::string> kGrowers = {"push", "unshift", "splice", "set", "add"};
  std::set<std::string> out;
  detail::walk_own(ctx, [&](const Node& n) {
    if (n.kind == NodeKind::Call && n.child(0).kind == NodeKind::Member && !n.child(0).computed &&
        kGrowers.count(n.child(0).name) && n.child(0).child(0).kind == NodeKind::Identifier &&
        detail::inside_loop(n)) {
      out.insert(n.child(0).child(0).name);
    } else if (n.kind == NodeKind::Assignment && n.child(0).kind == NodeKind::Member && n.child(0).computed &&
               n.child(0).child(0).kind == NodeKind::Identifier && detail::inside_loop(n)) {
      out.insert(n.child(0).child(0).name);
    }
    return true;
  });
  return out;
}

bool in_pool_function(const Node& ctx, const std::regex& pool) {
  for (const Node* n = &ctx; n; n = n->parent) {
    if (!n->is_function()) continue;
    std::string name = detail::function_name(*n);
    if (!name.empty() && std::regex_search(name, pool)) return true;
  }
  return false;
}

bool is_hot(const Node& ctx, const HotPathLexicon& lex) {
  std::string name = detail::lower(detail::nearest_function_name(ctx));
  if (name.empty()) return false;
  return std::any_of(lex.name_patterns.begin(), lex.name_patterns.end(),
                     [&](const std::string& p) { return name.find(detail::lower(p)) != std::string::npos; });
}

}  // namespace

std::vector<std::string> chain_tokens(const Node& node) {
  std::vector<std::string> out;
  const Node* n = &node;
  std::vector<const Node*> links;
  while (is_link(*n)) {
    links.push_back(n);
    n = n->children.front().get();
  }
  if (n->kind == NodeKind::Identifier) out.push_back(detail::lower(n->name));
  for (auto it = links.rbegin(); it != links.rend(); ++it) {
    const Node& link = **it;
    if (link.kind == NodeKind::Member && !link.computed) out.push_back(detail::lower(link.name));
  }
  return out;
}

bool pattern_matches(std::string_view pattern, std::string_view token) {
  if (!pattern.empty() && pattern.back() == '*') {
    pattern.remove_suffix(1);
    return token.substr(0, pattern.size()) == pattern;
  }
  return token == pattern;
}

std::optional<std::string> classify_component(const Node& node, const ComponentLexicon& lexicon) {
  auto tokens = chain_tokens(node);
  for (const auto& [category, patterns] : lexicon.categories) {
    for (const auto& token : tokens)
      for (const auto& p : patterns)
        if (pattern_matches(p, token)) return category;
  }
  return std::nullopt;
}

std::vector<Finding> detect_p1_component_decoupling(const GameView& game, const AnalysisConfig& cfg) {
  std::vector<Finding> out;
  for (const auto& s : game.scripts) {
    const SourceUnit& unit = *s.unit;
    if (!unit.ast) continue;
    std::set<const Node*> multi;
    for (const Node* ctx : contexts(*unit.ast)) {
      std::set<std::string> categories;
      detail::walk_own(*ctx, [&](const Node& n) {
        bool chain = n.kind == NodeKind::Identifier || is_link(n);
        if (!chain || is_chain_interior(n)) return true;
        if (n.kind == NodeKind::Identifier && detail::is_property_name(n)) return true;
        if (auto c = classify_component(n, cfg.components)) categories.insert(*c);
        return true;
      });
      if (static_cast<int>(categories.size()) < cfg.p1_min_categories) continue;
      multi.insert(ctx);
      auto f = make_finding(Kind::P1, unit, *ctx, join(categories, ","), "multi-component",
                            "multi-component: code touching >= p1_min_categories component categories");
      f.metric = static_cast<double>(categories.size());
      f.threshold = cfg.p1_min_categories;
      out.push_back(std::move(f));
    }
    walk(*unit.ast, [&](const Node& n) {
      if (n.kind != NodeKind::ObjectLiteral && n.kind != NodeKind::ClassDecl) return true;
      int methods = method_count(n);
      int loc = count_loc(n.span, unit);
      if (methods < cfg.monolithic_methods && loc <= cfg.monolithic_loc) return true;
      std::string label = detail::binding_name(n);
      auto f = make_finding(Kind::P1, unit, n, label.empty() ? std::string("<anonymous>") : label, "monolithic",
                            methods >= cfg.monolithic_methods ? "monolithic: >= monolithic_methods methods"
                                                              : "monolithic: body LOC > monolithic_loc");
      f.metric = methods >= cfg.monolithic_methods ? methods : loc;
      f.threshold = methods >= cfg.monolithic_methods ? cfg.monolithic_methods : cfg.monolithic_loc;
      out.push_back(std::move(f));
      return true;
    });
    for (const Node* fn : detail::all_functions(*unit.ast)) {
      if (multi.count(fn)) continue;
      int loc = function_body_loc(*fn, unit);
      if (loc <= cfg.method_loc_max) continue;
      std::string label = detail::function_name(*fn);
      auto f = make_finding(Kind::P1, unit, *fn, label.empty() ? std::string("<anonymous>") : label,
                            "large-method", "large-method: function also reported as a long method");
      f.metric = loc;
      f.threshold = cfg.method_loc_max;
      out.push_back(std::move(f));
    }
  }
  return out;
}

std::vector<Finding> detect_p2_event_queue_decoupling(const GameView& game, const AnalysisConfig& cfg) {
  std::vector<Finding> out;
  std::regex queue(cfg.queue_pattern, std::regex::icase);
  for (const auto& s : game.scripts) {
    const SourceUnit& unit = *s.unit;
    if (!unit.ast) continue;
    for (const Node* ctx : contexts(*unit.ast)) {
      std::string source = event_source(*ctx);
      if (source.empty() || mentions_queue(*ctx, queue)) continue;
      int depth = ctx->is_function() ? return_chain_depth(*ctx) : 0;
      bool async = depth >= cfg.p2_async_depth;
      auto f = make_finding(Kind::P2, unit, *ctx, source, async ? "async-chain" : "unqueued-event",
                            async ? "async-chain: event data returned through nested closures, no central queue"
                                  : "unqueued-event: event or input source without a central queue");
      if (async) {
        f.metric = depth;
        f.threshold = cfg.p2_async_depth;
      }
      out.push_back(std::move(f));
    }
  }
  return out;
}

std::vector<Finding> detect_p3_data_locality(const GameView& game, const AnalysisConfig& cfg) {
  std::map<std::string, MemberUse> uses;
  for (const auto& s : game.scripts) {
    if (!s.unit->ast) continue;
    walk(*s.unit->ast, [&](const Node& n) {
      if (n.kind != NodeKind::Member) return true;
      const Node* p = n.parent;
      if (p && p->kind == NodeKind::Assignment && p->children.front().get() == &n) return true;
      std::string owner = dotted_name(n.child(0));
      if (owner.empty()) return true;
      auto& use = uses[owner];
      if (const Node* fn = enclosing_function(n)) use.functions.insert(fn);
      if (detail::inside_loop(n)) use.in_loop = true;
      return true;
    });
  }

  std::vector<Finding> out;
  for (const auto& s : game.scripts) {
    const SourceUnit& unit = *s.unit;
    if (!unit.ast) continue;
    auto globals = s.scopes->defined_globals();
    walk(*unit.ast, [&](const Node& n) {
      if (n.kind != NodeKind::ObjectLiteral) return true;
      std::string name = detail::binding_name(n);
      if (name.empty() || !all_named_properties(n)) return true;
      auto props = static_cast<int>(n.size());
      if (props < cfg.p3_min_props) return true;
      bool primitive = std::all_of(n.children.begin(), n.children.end(),
                                   [](const auto& p) { return is_primitive(p->child(1)); });
      if (!primitive) return true;
      const MemberUse* use = nullptr;
      if (auto it = uses.find(name); it != uses.end()) use = &it->second;
      bool hot = globals.count(name) > 0 ||
                 (use && (use->in_loop || static_cast<int>(use->functions.size()) >= cfg.p3_min_functions));
      if (!hot) return true;
      auto f = make_finding(Kind::P3, unit, n, name, "hot-struct",
                            "hot-struct: shared object of primitive fields read game-wide");
      f.metric = props;
      f.threshold = cfg.p3_min_props;
      out.push_back(std::move(f));
      return true;
    });

    for (const auto& scope : s.scopes->scopes) {
      std::map<std::string, std::vector<const Node*>> shapes;
      for (const auto& d : scope.declarations) {
        if (d.kind != DeclarationKind::Var && d.kind != DeclarationKind::Let && d.kind != DeclarationKind::Const)
          continue;
        const Node& decl = *d.node;
        if (decl.size() < 2 || decl.child(1).kind != NodeKind::ObjectLiteral) continue;
        const Node& obj = decl.child(1);
        if (obj.size() == 0 || !all_named_properties(obj)) continue;
        std::set<std::string> keys;
        for (const auto& p : obj.children) keys.insert(p->name);
        shapes[join(keys, ",")].push_back(&decl);
      }
      for (const auto& [shape, decls] : shapes) {
        if (static_cast<int>(decls.size()) < cfg.p3_parallel_min) continue;
        const Node* first = *std::min_element(decls.begin(), decls.end(), [](const Node* a, const Node* b) {
          return a->span.start.offset < b->span.start.offset;
        });
        std::set<std::string> names;
        for (const Node* d : decls) names.insert(d->name);
        auto f = make_finding(Kind::P3, unit, *first, join(names, ",") + " {" + shape + "}", "parallel-objects",
                              "parallel-objects: sibling object literals with one shared shape");
        f.metric = static_cast<double>(decls.size());
        f.threshold = cfg.p3_parallel_min;
        out.push_back(std::move(f));
      }
    }
  }
  return out;
}

std::vector<Finding> detect_p4_object_pool(const GameView& game, const AnalysisConfig& cfg) {
  std::vector<Finding> out;
  std::regex pool(cfg.pool_pattern, std::regex::icase);
  for (const auto& s : game.scripts) {
    const SourceUnit& unit = *s.unit;
    if (!unit.ast) continue;
    for (const Node* ctx : contexts(*unit.ast)) {
      if (in_pool_function(*ctx, pool)) continue;
      bool function = ctx->is_function();
      bool hot = function && is_hot(*ctx, cfg.hot_paths);
      auto grown = function ? grown_in_loop(*ctx) : std::set<std::string>{};
      detail::walk_own(*ctx, [&](const Node& n) {
        if (!is_allocation(n) || inside_allocation(n, *ctx)) return true;
        std::string binding = allocated_binding(n);
        const char* subkind = nullptr;
        const char* rule = nullptr;
        if (!binding.empty() && grown.count(binding)) {
          subkind = "transient-container";
          rule = "transient-container: per-call container grown inside a loop";
        } else if (detail::inside_loop(n)) {
          subkind = "alloc-in-loop";
          rule = "alloc-in-loop: allocation inside a loop body";
        } else if (hot) {
          subkind = "hot-function-alloc";
          rule = "hot-function-alloc: allocation inside a hot-path function";
        }
        if (subkind) out.push_back(make_finding(Kind::P4, unit, n, node_text(unit.text, n, 80), subkind, rule));
        return true;
      });
    }
  }
  return out;
}

std::vector<Finding> detect_patterns(const GameView& game, const AnalysisConfig& cfg, const KindSet& enabled) {
  std::vector<Finding> out;
  auto append = [&](std::vector<Finding> part) {
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  };
  if (enabled.contains(Kind::P1)) append(detect_p1_component_decoupling(game, cfg));
  if (enabled.contains(Kind::P2)) append(detect_p2_event_queue_decoupling(game, cfg));
  if (enabled.contains(Kind::P3)) append(detect_p3_data_locality(game, cfg));
  if (enabled.contains(Kind::P4)) append(detect_p4_object_pool(game, cfg));
  sort_canonical(out);
  return out;
}

}  // namespace gamesmell
