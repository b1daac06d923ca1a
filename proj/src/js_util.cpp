#include "js_util.hpp"

#include "gamesmell/scope.hpp"

namespace gamesmell::detail {

const Node& body_of(const Node& fn_or_program) {
  return fn_or_program.is_function() ? fn_or_program.function_body() : fn_or_program;
}

std::vector<const Node*> direct_functions(const Node& root) {
  std::vector<const Node*> out;
  walk_own(root, [&](const Node& n) {
    if (n.is_function()) out.push_back(&n);
    if (n.kind == NodeKind::ClassDecl) {
      for (const auto& m : n.children)
        if (m->kind == NodeKind::MethodDef) out.push_back(&m->child(1));
    }
    return true;
  });
  return out;
}

std::vector<const Node*> all_functions(const Node& root) {
  std::vector<const Node*> out;
  walk(root, [&](const Node& n) {
    if (n.is_function()) out.push_back(&n);
    return true;
  });
  return out;
}

bool is_property_name(const Node& id) {
  const Node* p = id.parent;
  if (!p || p->computed) return false;
  switch (p->kind) {
    case NodeKind::Member:
      return &p->child(1) == &id;
    case NodeKind::Property:
    case NodeKind::MethodDef:
      return &p->child(0) == &id;
    default:
      return false;
  }
}

bool is_method_like(const Node& fn) {
  const Node* p = fn.parent;
  if (!p) return false;
  if (p->kind == NodeKind::MethodDef || p->kind == NodeKind::Property) return true;
  if (p->kind == NodeKind::Assignment && &p->child(1) == &fn && p->child(0).kind == NodeKind::Member)
    return true;
  return false;
}

std::string binding_name(const Node& value) {
  const Node* p = value.parent;
  if (p) {
    if (p->kind == NodeKind::Declarator && p->size() > 1 && &p->child(1) == &value) return p->name;
    if (p->kind == NodeKind::Assignment && p->name == "=" && &p->child(1) == &value) {
      std::string target = dotted_name(p->child(0));
      if (!target.empty()) return target;
    }
  }
  if (value.kind == NodeKind::ClassDecl) return value.name;
  return {};
}

std::string function_name(const Node& fn) {
  if (fn.kind == NodeKind::FunctionDecl) return fn.name;
  const Node* p = fn.parent;
  if (p && (p->kind == NodeKind::Property || p->kind == NodeKind::MethodDef) && &p->child(1) == &fn) {
    std::string key = p->computed ? std::string() : p->name;
    std::string owner = p->parent ? binding_name(*p->parent) : std::string();
    if (owner.empty()) return key;
    if (key.empty()) return owner;
    return owner + "." + key;
  }
  std::string bound = binding_name(fn);
  if (!bound.empty()) return bound;
  return fn.name;
}

std::string nearest_function_name(const Node& node) {
  for (const Node* n = &node; n; n = n->parent) {
    if (!n->is_function()) continue;
    std::string name = function_name(*n);
    if (!name.empty()) return name;
  }
  return {};
}

bool inside_loop(const Node& node) {
  const Node* child = &node;
  for (const Node* p = node.parent; p; child = p, p = p->parent) {
    if (p->is_function() || p->kind == NodeKind::ClassDecl) return false;
    if (p->kind == NodeKind::Loop && &p->loop_body() == child) return true;
  }
  return false;
}

bool is_call_argument(const Node& node) {
  const Node* p = node.parent;
  return p && (p->kind == NodeKind::Call || p->kind == NodeKind::New) && p->children.front().get() != &node;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

Finding make_finding(Kind kind, const SourceUnit& unit, const Node& node, std::string evidence,
                     std::string subkind, std::string rule) {
  Finding f;
  f.kind = kind;
  f.path = unit.path;
  f.span = unit.to_file(node.span);
  f.evidence = clip_evidence(evidence);
  f.subkind = std::move(subkind);
  f.rule = std::move(rule);
  return f;
}

}  // namespace gamesmell::detail
