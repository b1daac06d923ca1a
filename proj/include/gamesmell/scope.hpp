#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "gamesmell/source_unit.hpp"

namespace gamesmell {

enum class DeclarationKind : std::uint8_t {
  Var,
  Let,
  Const,
  Function,
  Param,
  Class,
  CatchParam,
  FunctionName,  // a named function expression's own name
};

struct Declaration {
  std::string name;
  DeclarationKind kind = DeclarationKind::Var;
  const Node* node = nullptr;
};

enum class ScopeKind : std::uint8_t { Global, Function, Block, Catch, Class };

struct Reference {
  std::string name;
  const Node* node = nullptr;
  bool write = false;
  int scope = 0;
  // Scope holding the resolved declaration, or -1 for a free name.
  int declaring_scope = -1;
};

struct Scope {
  ScopeKind kind = ScopeKind::Global;
  const Node* owner = nullptr;
  int parent = -1;
  std::vector<int> children;
  std::vector<Declaration> declarations;

  const Declaration* find(std::string_view name) const;
};

// A name living in the shared global object. Host names that the code only
// reads (document, Math, ...) have references but no definitions.
struct GlobalVar {
  std::string name;
  std::vector<Span> definitions;
  std::vector<Span> references;

  bool defined() const { return !definitions.empty(); }
};

// Members and `this.x` uses of a class, constructor function or object
// literal, keyed by its (possibly dotted) binding name.
struct TypeInfo {
  std::string name;
  Span span;
  std::set<std::string> members;
  std::set<std::string> this_uses;
};

struct InheritanceSite {
  std::string child;
  std::string parent;
  std::string path;
  Span span;  // file coordinates
};

struct InheritanceEdge {
  std::string child;
  std::string parent;
  std::string path;
  Span span;
  std::set<std::string> inherited;
  std::set<std::string> overridden;
  std::set<std::string> used;
};

struct ScopeModel {
  std::vector<Scope> scopes;  // scopes[0] is the unit's root scope
  std::vector<Reference> references;
  std::map<std::string, GlobalVar> globals;
  std::vector<InheritanceEdge> inheritance;

  // Raw facts for linking inheritance across all units of a game.
  std::map<std::string, TypeInfo> types;
  std::vector<InheritanceSite> inheritance_sites;
  std::map<std::string, std::set<std::string>> member_reads;
  std::map<std::string, std::set<std::string>> member_writes;

  // CommonJS file (uses require/module/exports): top-level declarations are
  // module-local, not globals.
  bool commonjs = false;
  std::map<const Node*, int> scope_by_owner;

  std::set<std::string> defined_globals() const;
  // Scope created by the given node, or -1.
  int scope_of(const Node* owner) const;
  // Innermost scope enclosing the node.
  int innermost_scope(const Node& node) const;
  // Scope index declaring `name` as seen from `scope`, or -1.
  int resolve(std::string_view name, int scope) const;
};

ScopeModel build_scopes(const SourceUnit& unit);

// Resolves inheritance edges using the type facts of all given models.
std::vector<InheritanceEdge> link_inheritance(std::span<const ScopeModel* const> models);

// "a.b.c" for identifier/member chains without computed links, else "".
std::string dotted_name(const Node& node);

}  // namespace gamesmell
