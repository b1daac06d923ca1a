#include "gamesmell/smells.hpp"

#include <algorithm>
#include <map>
#include <regex>
#include <set>
#include <tuple>

#include "gamesmell/metrics.hpp"
#include "js_util.hpp"

namespace gamesmell {

using detail::make_finding;

namespace {

void set_metric(Finding& f, double metric, double threshold) {
  f.metric = metric;
  f.threshold = threshold;
}

int function_depth(const Node& fn) {
  int depth = 0;
  for (const Node* n = &fn; n; n = n->parent)
    if (n->is_function()) ++depth;
  return depth;
}

bool uses_own_this(const Node& fn) {
  bool found = false;
  auto visit = [&](auto&& self, const Node& n) -> void {
    if (found) return;
    if (n.kind == NodeKind::This) {
      found = true;
      return;
    }
    if (&n != &fn && (n.kind == NodeKind::FunctionDecl || n.kind == NodeKind::FunctionExpr ||
                      n.kind == NodeKind::ClassDecl))
      return;
    for (const auto& c : n.children) self(self, *c);
  };
  visit(visit, fn);
  return found;
}

// `function () {...}.bind(x)` or `fn.call(x)` style explicit receivers.
bool has_explicit_receiver(const Node& fn) {
  const Node* p = fn.parent;
  if (!p || p->kind != NodeKind::Member || p->computed) return false;
  return p->name == "bind" || p->name == "call" || p->name == "apply";
}

bool capitalized(std::string_view name) {
  auto dot = name.rfind('.');
  if (dot != std::string_view::npos) name = name.substr(dot + 1);
  return !name.empty() && name[0] >= 'A' && name[0] <= 'Z';
}

bool is_string_literal(const Node& n) {
  return n.kind == NodeKind::Literal && n.literal_kind == LiteralKind::String;
}

bool is_plus(const Node& n) { return n.kind == NodeKind::Binary && n.name == "+"; }

void collect_string_parts(const Node& n, std::string& out, bool& any) {
  if (is_plus(n)) {
    collect_string_parts(n.child(0), out, any);
    collect_string_parts(n.child(1), out, any);
  } else if (is_string_literal(n)) {
    out += n.value;
    any = true;
  } else if (n.kind == NodeKind::TemplateLiteral) {
    for (const auto& q : n.quasis) out += q;
    any = true;
  }
}

const std::regex& css_rule_regex() {
  static const std::regex re(R"([^{};<>]+\{\s*[-A-Za-z]+\s*:\s*[^;{}]+;?[^{}]*\})");
  return re;
}

bool is_style_member(const Node& target) {
  if (target.kind != NodeKind::Member) return false;
  const Node& obj = target.child(0);
  return obj.kind == NodeKind::Member && !obj.computed && obj.name == "style";
}

std::vector<const Node*> statement_list(const Node& n) {
  std::vector<const Node*> out;
  std::size_t first = 0;
  if (n.kind == NodeKind::SwitchCase) first = n.is_default ? 0 : 1;
  for (std::size_t i = first; i < n.size(); ++i) out.push_back(&n.child(i));
  return out;
}

bool is_jump(const Node& n) {
  return n.kind == NodeKind::Return || n.kind == NodeKind::Throw || n.kind == NodeKind::Break ||
         n.kind == NodeKind::Continue;
}

bool is_named_object(const Node& n) {
  if (n.kind == NodeKind::ClassDecl) return !n.is_class_expression || !detail::binding_name(n).empty();
  return !detail::binding_name(n).empty();
}

template <typename Fn>
std::vector<Finding> over_game(const GameView& game, const AnalysisConfig& cfg, Fn&& detect) {
  std::vector<Finding> out;
  for (const auto& s : game.scripts) {
    auto part = detect(*s.unit, *s.scopes, cfg);
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return out;
}

GameView single(const SourceUnit& unit, const ScopeModel& scopes) {
  GameView g;
  if (unit.kind == SourceKind::HTML) {
    g.html_units.push_back(&unit);
  } else {
    g.scripts.push_back({&unit, &scopes});
  }
  return g;
}

}  // namespace

int count_html_tags(std::string_view text) {
  static const std::regex re(R"(<\/?[A-Za-z][A-Za-z0-9-]*(\s+[^<>]*)?\/?>)");
  auto begin = std::cregex_iterator(text.data(), text.data() + text.size(), re);
  return static_cast<int>(std::distance(begin, std::cregex_iterator()));
}

int object_member_count(const Node& object) {
  if (object.kind == NodeKind::ObjectLiteral) {
    return static_cast<int>(std::count_if(object.children.begin(), object.children.end(),
                                          [](const auto& c) { return c->kind == NodeKind::Property; }));
  }
  if (object.kind != NodeKind::ClassDecl) return 0;
  std::set<std::string> fields;
  int methods = 0;
  for (const auto& m : object.children) {
    if (m->kind != NodeKind::MethodDef) continue;
    if (m->property_kind != PropertyKind::Constructor) {
      ++methods;
      continue;
    }
    detail::walk_own(m->child(1), [&](const Node& n) {
      if (n.kind == NodeKind::Assignment && n.child(0).kind == NodeKind::Member &&
          !n.child(0).computed && n.child(0).child(0).kind == NodeKind::This)
        fields.insert(n.child(0).name);
      return true;
    });
  }
  return methods + static_cast<int>(fields.size());
}

int function_body_loc(const Node& fn, const SourceUnit& unit) {
  const Node& body = fn.function_body();
  Span inner = body.span;
  if (!fn.is_expression_body && !inner.empty()) {
    inner.start.offset += 1;
    inner.end.offset -= 1;
  }
  std::vector<Span> nested;
  for (const Node* f : detail::direct_functions(fn)) nested.push_back(f->span);
  return count_loc_excluding(inner, nested, unit);
}

std::vector<Finding> detect_s1_closure(const SourceUnit& unit, const ScopeModel& scopes,
                                       const AnalysisConfig& cfg) {
  std::vector<Finding> out;
  if (!unit.ast) return out;
  for (const Node* fn : detail::all_functions(*unit.ast)) {
    int depth = function_depth(*fn);
    if (depth >= cfg.closure_depth) {
      auto f = make_finding(Kind::S1, unit, *fn, detail::function_name(*fn), "depth",
                            "depth: function nested at depth >= closure_depth");
      set_metric(f, depth, cfg.closure_depth);
      out.push_back(std::move(f));
    }
    if (depth >= 2 && fn->kind != NodeKind::ArrowFunction && !detail::is_method_like(*fn) &&
        !has_explicit_receiver(*fn) && !capitalized(detail::function_name(*fn)) && uses_own_this(*fn)) {
      out.push_back(make_finding(Kind::S1, unit, *fn, node_text(unit.text, *fn, 80), "this-confusion",
                                 "this-confusion: `this` inside a nested non-method function"));
    }
  }
  for (std::size_t s = 1; s < scopes.scopes.size(); ++s) {
    const Scope& scope = scopes.scopes[s];
    for (const auto& d : scope.declarations) {
      if (d.kind == DeclarationKind::FunctionName) continue;
      int outer = scopes.resolve(d.name, scope.parent);
      if (outer < 0) continue;
      const Node& at = d.node->kind == NodeKind::Declarator ? d.node->child(0) : *d.node;
      out.push_back(make_finding(Kind::S1, unit, at, d.name, "shadowing",
                                 "shadowing: inner declaration hides an outer binding"));
    }
  }
  return out;
}

std::vector<Finding> detect_s2_coupling(const SourceUnit& unit, const ScopeModel&, const AnalysisConfig& cfg) {
  std::vector<Finding> out;
  if (unit.kind == SourceKind::HTML) {
    for (const auto& script : unit.embedded) {
      if (script.origin == ScriptOrigin::JavascriptHref || script.code.empty()) continue;
      Finding f;
      f.kind = Kind::S2;
      f.path = unit.path;
      f.span = script.html_span;
      f.subkind = "js-in-html";
      f.evidence = clip_evidence(script.origin == ScriptOrigin::EventAttribute
                                     ? script.attribute + "=\"" + script.code + "\""
                                     : std::string("<script>"));
      f.rule = "js-in-html: inline script or event handler attribute";
      out.push_back(std::move(f));
    }
    return out;
  }
  if (!unit.ast) return out;
  walk(*unit.ast, [&](const Node& n) {
    bool candidate = is_string_literal(n) || n.kind == NodeKind::TemplateLiteral || is_plus(n);
    if (candidate && !(n.parent && is_plus(*n.parent))) {
      std::string text;
      bool any = false;
      collect_string_parts(n, text, any);
      if (any) {
        int tags = count_html_tags(text);
        if (tags >= cfg.html_string_min_tags) {
          auto f = make_finding(Kind::S2, unit, n, node_text(unit.text, n), "html-in-js",
                                "html-in-js: string holding >= html_string_min_tags tags");
          set_metric(f, tags, cfg.html_string_min_tags);
          out.push_back(std::move(f));
        }
        if (std::regex_search(text, css_rule_regex())) {
          out.push_back(make_finding(Kind::S2, unit, n, node_text(unit.text, n), "css-in-js",
                                     "css-in-js: string shaped like a CSS rule"));
        }
      }
    }
    if (n.kind == NodeKind::Assignment && is_style_member(n.child(0))) {
      out.push_back(make_finding(Kind::S2, unit, n, node_text(unit.text, n.child(0)), "css-in-js",
                                 "css-in-js: assignment to .style.<prop>"));
    }
    return true;
  });
  return out;
}

std::vector<Finding> detect_s3_empty_catch(const SourceUnit& unit, const ScopeModel&, const AnalysisConfig&) {
  std::vector<Finding> out;
  if (!unit.ast) return out;
  walk(*unit.ast, [&](const Node& n) {
    if (n.kind != NodeKind::CatchClause) return true;
    const Node& body = n.function_body();
    bool empty = std::all_of(body.children.begin(), body.children.end(),
                             [](const auto& s) { return s->kind == NodeKind::Empty; });
    if (empty) {
      out.push_back(make_finding(Kind::S3, unit, n, n.has_param ? n.child(0).name : std::string(), {},
                                 "catch block without statements"));
    }
    return true;
  });
  return out;
}

std::vector<Finding> detect_s4_excessive_globals(const GameView& game, const AnalysisConfig& cfg) {
  struct Site {
    std::string path;
    Span span;
  };
  std::map<std::string, Site> first;
  for (const auto& s : game.scripts) {
    for (const auto& [name, g] : s.scopes->globals) {
      if (!g.defined()) continue;
      Site site{s.unit->path, s.unit->to_file(g.definitions.front())};
      auto [it, inserted] = first.try_emplace(name, site);
      if (!inserted && std::tie(site.path, site.span.start.offset) <
                           std::tie(it->second.path, it->second.span.start.offset))
        it->second = site;
    }
  }
  std::vector<Finding> out;
  auto count = static_cast<int>(first.size());
  if (count <= cfg.globals_max) return out;
  for (const auto& [name, site] : first) {
    Finding f;
    f.kind = Kind::S4;
    f.path = site.path;
    f.span = site.span;
    f.evidence = clip_evidence(name);
    f.rule = "game defines more than globals_max global variables";
    set_metric(f, count, cfg.globals_max);
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<Finding> detect_s5_large_object(const SourceUnit& unit, const ScopeModel&, const AnalysisConfig& cfg) {
  std::vector<Finding> out;
  if (!unit.ast) return out;
  walk(*unit.ast, [&](const Node& n) {
    if (n.kind != NodeKind::ObjectLiteral && n.kind != NodeKind::ClassDecl) return true;
    int members = object_member_count(n);
    if (members >= cfg.large_object_props) {
      std::string label = detail::binding_name(n);
      auto f = make_finding(Kind::S5, unit, n, label.empty() ? std::string("<anonymous>") : label, {},
                            "object with >= large_object_props own members");
      set_metric(f, members, cfg.large_object_props);
      out.push_back(std::move(f));
    }
    return true;
  });
  return out;
}

std::vector<Finding> detect_s6_lazy_object(const SourceUnit& unit, const ScopeModel&, const AnalysisConfig& cfg) {
  std::vector<Finding> out;
  if (!unit.ast) return out;
  walk(*unit.ast, [&](const Node& n) {
    if (n.kind != NodeKind::ObjectLiteral && n.kind != NodeKind::ClassDecl) return true;
    if (!is_named_object(n)) return true;
    int members = object_member_count(n);
    if (members < cfg.lazy_object_props) {
      auto f = make_finding(Kind::S6, unit, n, detail::binding_name(n), "static-lazy",
                            "static-lazy: named object with < lazy_object_props own members");
      set_metric(f, members, cfg.lazy_object_props);
      out.push_back(std::move(f));
    }
    return true;
  });
  return out;
}

std::vector<Finding> detect_s7_long_message_chain(const SourceUnit& unit, const ScopeModel&,
                                                  const AnalysisConfig& cfg) {
  std::vector<Finding> out;
  if (!unit.ast) return out;
  for (const auto& chain : extract_chains(unit)) {
    if (chain.length < cfg.chain_min) continue;
    auto f = make_finding(Kind::S7, unit, *chain.top, chain.text, {}, "chain length >= chain_min");
    set_metric(f, chain.length, cfg.chain_min);
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<Finding> detect_s8_long_method(const SourceUnit& unit, const ScopeModel&, const AnalysisConfig& cfg) {
  std::vector<Finding> out;
  if (!unit.ast) return out;
  for (const Node* fn : detail::all_functions(*unit.ast)) {
    int loc = function_body_loc(*fn, unit);
    if (loc <= cfg.method_loc_max) continue;
    std::string label = detail::function_name(*fn);
    auto f = make_finding(Kind::S8, unit, *fn, label.empty() ? std::string("<anonymous>") : label, {},
                          "own body LOC > method_loc_max");
    set_metric(f, loc, cfg.method_loc_max);
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<Finding> detect_s9_long_parameter_list(const SourceUnit& unit, const ScopeModel&,
                                                   const AnalysisConfig& cfg) {
  std::vector<Finding> out;
  if (!unit.ast) return out;
  for (const Node* fn : detail::all_functions(*unit.ast)) {
    auto params = static_cast<int>(fn->param_count);
    if (params <= cfg.params_max) continue;
    std::string label = detail::function_name(*fn);
    auto f = make_finding(Kind::S9, unit, *fn, label.empty() ? std::string("<anonymous>") : label, {},
                          "parameter count > params_max");
    set_metric(f, params, cfg.params_max);
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<Finding> detect_s10_nested_callback(const SourceUnit& unit, const ScopeModel&,
                                                const AnalysisConfig& cfg) {
  std::vector<Finding> out;
  if (!unit.ast) return out;
  // Returns true when the subtree contains a callback.
  auto visit = [&](auto&& self, const Node& n, int depth) -> bool {
    bool callback = (n.kind == NodeKind::FunctionExpr || n.kind == NodeKind::ArrowFunction) &&
                    detail::is_call_argument(n);
    int here = callback ? depth + 1 : depth;
    bool below = false;
    for (const auto& c : n.children) below = self(self, *c, here) || below;
    if (callback && !below && here >= cfg.callback_depth) {
      auto f = make_finding(Kind::S10, unit, n, node_text(unit.text, n, 80), {},
                            "innermost callback nested >= callback_depth deep");
      set_metric(f, here, cfg.callback_depth);
      out.push_back(std::move(f));
    }
    return callback || below;
  };
  visit(visit, *unit.ast, 0);
  return out;
}

std::vector<Finding> detect_s11_refused_bequest(const GameView& game, const AnalysisConfig& cfg) {
  std::vector<const ScopeModel*> models;
  for (const auto& s : game.scripts) models.push_back(s.scopes);
  std::vector<Finding> out;
  const Fraction& ratio = cfg.bequest_ratio;
  for (const auto& e : link_inheritance(models)) {
    auto inherited = static_cast<long long>(e.inherited.size());
    if (inherited < cfg.bequest_min_inherited) continue;
    std::set<std::string> covered = e.overridden;
    covered.insert(e.used.begin(), e.used.end());
    auto n = static_cast<long long>(covered.size());
    if (n * ratio.den >= ratio.num * inherited) continue;
    Finding f;
    f.kind = Kind::S11;
    f.path = e.path;
    f.span = e.span;
    f.evidence = clip_evidence(e.child + " inherits " + e.parent);
    f.rule = "overridden or used share of inherited members < bequest_ratio";
    set_metric(f, static_cast<double>(n) / static_cast<double>(inherited),
               static_cast<double>(ratio.num) / static_cast<double>(ratio.den));
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<Finding> detect_s12_switch_statement(const SourceUnit& unit, const ScopeModel&,
                                                 const AnalysisConfig& cfg) {
  std::vector<Finding> out;
  if (!unit.ast) return out;
  walk(*unit.ast, [&](const Node& n) {
    if (n.kind != NodeKind::SwitchStmt) return true;
    auto cases = static_cast<int>(std::count_if(n.children.begin() + 1, n.children.end(),
                                                [](const auto& c) { return !c->is_default; }));
    if (cases >= cfg.switch_cases_min) {
      auto f = make_finding(Kind::S12, unit, n, node_text(unit.text, n.child(0), 80), {},
                            "switch with >= switch_cases_min non-default cases");
      set_metric(f, cases, cfg.switch_cases_min);
      out.push_back(std::move(f));
    }
    return true;
  });
  return out;
}

std::vector<Finding> detect_s13_dead_code(const GameView& game, const AnalysisConfig&) {
  std::vector<Finding> out;
  std::set<std::string> referenced;
  for (const auto& s : game.scripts) {
    for (const auto& r : s.scopes->references) referenced.insert(r.name);
    for (const auto& [name, g] : s.scopes->globals)
      if (!g.references.empty()) referenced.insert(name);
  }
  for (const auto& s : game.scripts) {
    const SourceUnit& unit = *s.unit;
    if (!unit.ast) continue;
    walk(*unit.ast, [&](const Node& n) {
      if (n.kind != NodeKind::Program && n.kind != NodeKind::Block && n.kind != NodeKind::SwitchCase)
        return true;
      auto stmts = statement_list(n);
      auto jump = std::find_if(stmts.begin(), stmts.end(), [](const Node* x) { return is_jump(*x); });
      if (jump == stmts.end()) return true;
      for (auto it = jump + 1; it != stmts.end(); ++it) {
        const Node& st = **it;
        if (st.kind == NodeKind::FunctionDecl || st.kind == NodeKind::Empty) continue;
        out.push_back(make_finding(Kind::S13, unit, st, node_text(unit.text, st, 80), "unreachable",
                                   "unreachable: statement after return/throw/break/continue"));
        break;
      }
      return true;
    });
    const auto& root = s.scopes->scopes.front();
    if (root.kind != ScopeKind::Global) continue;
    for (const auto& d : root.declarations) {
      if (referenced.count(d.name)) continue;
      if (d.kind == DeclarationKind::Param || d.kind == DeclarationKind::CatchParam ||
          d.kind == DeclarationKind::FunctionName)
        continue;
      // Entry points wired by the browser, e.g. `function onload() {}`.
      static const std::regex entry("on[a-z]+");
      if (std::regex_match(d.name, entry)) continue;
      const Node& at = d.node->kind == NodeKind::Declarator ? d.node->child(0) : *d.node;
      out.push_back(make_finding(Kind::S13, unit, at, d.name, "unused",
                                 "unused: top-level binding never referenced in the game"));
    }
  }
  return out;
}

std::vector<Finding> detect_s4_excessive_globals(const SourceUnit& unit, const ScopeModel& scopes,
                                                 const AnalysisConfig& cfg) {
  return detect_s4_excessive_globals(single(unit, scopes), cfg);
}

std::vector<Finding> detect_s11_refused_bequest(const SourceUnit& unit, const ScopeModel& scopes,
                                                const AnalysisConfig& cfg) {
  return detect_s11_refused_bequest(single(unit, scopes), cfg);
}

std::vector<Finding> detect_s13_dead_code(const SourceUnit& unit, const ScopeModel& scopes,
                                          const AnalysisConfig& cfg) {
  return detect_s13_dead_code(single(unit, scopes), cfg);
}

std::vector<Finding> detect_smells(const GameView& game, const AnalysisConfig& cfg, const KindSet& enabled) {
  using UnitDetector = std::vector<Finding> (*)(const SourceUnit&, const ScopeModel&, const AnalysisConfig&);
  static const std::pair<Kind, UnitDetector> kUnitDetectors[] = {
      {Kind::S1, detect_s1_closure},
      {Kind::S2, detect_s2_coupling},
      {Kind::S3, detect_s3_empty_catch},
      {Kind::S5, detect_s5_large_object},
      {Kind::S6, detect_s6_lazy_object},
      {Kind::S7, detect_s7_long_message_chain},
      {Kind::S8, detect_s8_long_method},
      {Kind::S9, detect_s9_long_parameter_list},
      {Kind::S10, detect_s10_nested_callback},
      {Kind::S12, detect_s12_switch_statement},
  };
  std::vector<Finding> out;
  auto append = [&](std::vector<Finding> part) {
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  };
  for (const auto& [kind, detect] : kUnitDetectors) {
    if (!enabled.contains(kind)) continue;
    append(over_game(game, cfg, detect));
    if (kind == Kind::S2) {
      static const ScopeModel kNoScopes;
      for (const SourceUnit* html : game.html_units) append(detect(*html, kNoScopes, cfg));
    }
  }
  if (enabled.contains(Kind::S4)) append(detect_s4_excessive_globals(game, cfg));
  if (enabled.contains(Kind::S11)) append(detect_s11_refused_bequest(game, cfg));
  if (enabled.contains(Kind::S13)) append(detect_s13_dead_code(game, cfg));
  sort_canonical(out);
  return out;
}

}  // namespace gamesmell
