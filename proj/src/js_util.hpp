#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gamesmell/ast.hpp"
#include "gamesmell/finding.hpp"
#include "gamesmell/source_unit.hpp"

namespace gamesmell::detail {

// Statements of a function body or of a program.
const Node& body_of(const Node& fn_or_program);

// Visits the nodes of a function's own code: its parameters' defaults and
// body, stopping at nested functions and classes (which are visited but not
// entered). For a Program this is the top-level code.
template <typename Visitor>
void walk_own(const Node& root, Visitor&& visit) {
  auto inner = [&](auto&& self, const Node& n) -> void {
    if (!visit(n)) return;
    if (n.is_function() || n.kind == NodeKind::ClassDecl) return;
    for (const auto& c : n.children) self(self, *c);
  };
  if (root.is_function()) {
    for (std::size_t i = 0; i < root.param_count; ++i) inner(inner, root.child(i));
    for (const auto& s : root.function_body().children) inner(inner, *s);
  } else {
    for (const auto& c : root.children) inner(inner, *c);
  }
}

// Functions nested directly in the given function or program (not deeper).
std::vector<const Node*> direct_functions(const Node& root);

// All function nodes of a tree in pre-order.
std::vector<const Node*> all_functions(const Node& root);

// True for `Identifier` nodes that are property names rather than variable
// references: non-computed member properties and object/class keys.
bool is_property_name(const Node& id);

// Object/class methods, prototype and member assignments.
bool is_method_like(const Node& fn);

// Name a function is known by: its own name, or the declarator, assignment
// target, or `Object.key` / `Class.key` it is bound to. Empty if anonymous.
std::string function_name(const Node& fn);

// Nearest function (or the function itself) with a non-empty name.
std::string nearest_function_name(const Node& node);

// Binding name of an object literal or class: declarator, assignment target,
// or class name. Empty for anonymous literals.
std::string binding_name(const Node& value);

// True when `node` lies inside the body of a Loop that belongs to the same
// function as `node` (function boundaries stop the search).
bool inside_loop(const Node& node);

// The node is argument (not callee) of a Call or New.
bool is_call_argument(const Node& node);

std::string lower(std::string_view s);

Finding make_finding(Kind kind, const SourceUnit& unit, const Node& node, std::string evidence = {},
                     std::string subkind = {}, std::string rule = {});

}  // namespace gamesmell::detail
