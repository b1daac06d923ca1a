#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace gamesmell {

// 1-based line and column, 0-based byte offset.
struct Position {
  std::uint32_t offset = 0;
  std::uint32_t line = 1;
  std::uint32_t column = 1;

  friend bool operator==(const Position&, const Position&) = default;
  friend auto operator<=>(const Position& a, const Position& b) { return a.offset <=> b.offset; }
};

// Half-open byte range [start.offset, end.offset).
struct Span {
  Position start;
  Position end;

  bool empty() const { return end.offset <= start.offset; }
  bool contains(const Span& other) const {
    return start.offset <= other.start.offset && other.end.offset <= end.offset;
  }
  friend bool operator==(const Span&, const Span&) = default;
};

enum class NodeKind : std::uint8_t {
  Program,
  FunctionDecl,
  FunctionExpr,
  ArrowFunction,
  VarDecl,
  Declarator,
  ObjectLiteral,
  Property,
  ArrayLiteral,
  Call,
  New,
  Member,
  Identifier,
  Literal,
  TryStmt,
  CatchClause,
  SwitchStmt,
  SwitchCase,
  Loop,
  If,
  Return,
  Throw,
  Break,
  Continue,
  Assignment,
  Block,
  ClassDecl,
  MethodDef,
  ExpressionStmt,
  TemplateLiteral,
  // Expression and statement forms outside the detector contract. Detectors
  // only traverse through them.
  This,
  Super,
  Unary,
  Update,
  Binary,
  Conditional,
  Sequence,
  Spread,
  Empty,
  Labeled,
  With,
  Debugger,
};

std::string_view to_string(NodeKind kind);

enum class LoopKind : std::uint8_t { For, ForIn, ForOf, While, DoWhile };
enum class LiteralKind : std::uint8_t { Number, String, Boolean, Null, RegExp };
enum class DeclKeyword : std::uint8_t { Var, Let, Const };
enum class PropertyKind : std::uint8_t { Init, Shorthand, Method, Getter, Setter, Constructor };

// Positional child layout by kind (absent optional parts are Empty nodes
// unless noted):
//   Program            statements...
//   Function*/Arrow    params..., body Block (last). Params are Identifier
//                      (is_rest for `...r`) or Assignment(Identifier, default).
//   VarDecl            Declarator...
//   Declarator         target Identifier, [init]
//   ObjectLiteral      Property | Spread ...
//   Property           key, value
//   ArrayLiteral       elements... (holes are Empty)
//   Call / New         callee, args...
//   Member             object, property
//   TryStmt            block, [CatchClause], [finalizer Block]  (has_finalizer)
//   CatchClause        [param Identifier], body Block           (has_param)
//   SwitchStmt         discriminant, SwitchCase...
//   SwitchCase         [test], consequent statements...         (is_default)
//   Loop For           init, test, update, body
//   Loop ForIn/ForOf   left, right, body
//   Loop While         test, body
//   Loop DoWhile       body, test
//   If                 test, consequent, [alternate]
//   Return / Throw     [argument]
//   Assignment         target, value
//   ClassDecl          [superclass] (has_superclass), MethodDef...
//   MethodDef          key, FunctionExpr
//   ExpressionStmt     expression
//   TemplateLiteral    substitutions... (quasis holds the cooked text parts)
//   Unary / Update / Spread   argument
//   Binary             left, right
//   Conditional        test, consequent, alternate
//   Sequence           expressions...
//   Labeled            body
//   With               object, body
struct Node {
  NodeKind kind = NodeKind::Empty;
  Span span;
  std::vector<std::unique_ptr<Node>> children;
  const Node* parent = nullptr;

  // Identifier name, function/class/method name, static property key,
  // operator text, literal raw text, or label depending on kind.
  std::string name;
  // Cooked string literal value.
  std::string value;
  std::vector<std::string> quasis;

  std::uint32_t param_count = 0;
  LoopKind loop_kind = LoopKind::For;
  LiteralKind literal_kind = LiteralKind::Number;
  DeclKeyword decl_keyword = DeclKeyword::Var;
  PropertyKind property_kind = PropertyKind::Init;

  bool computed = false;
  bool is_rest = false;
  bool is_static = false;
  bool is_default = false;
  bool is_prefix = false;
  bool is_expression_body = false;
  bool has_param = false;
  bool has_finalizer = false;
  bool has_superclass = false;
  bool is_class_expression = false;

  Node() = default;
  Node(NodeKind k, Span s) : kind(k), span(s) {}
  Node(const Node&) = delete;
  Node& operator=(const Node&) = delete;

  const Node& child(std::size_t i) const { return *children[i]; }
  std::size_t size() const { return children.size(); }

  bool is_function() const {
    return kind == NodeKind::FunctionDecl || kind == NodeKind::FunctionExpr ||
           kind == NodeKind::ArrowFunction;
  }
  // Body block of a function node.
  const Node& function_body() const { return *children.back(); }
  // Body statement of a Loop node.
  const Node& loop_body() const {
    return loop_kind == LoopKind::DoWhile ? *children.front() : *children.back();
  }
};

// Pre-order traversal. The visitor returns false to skip a node's subtree.
template <typename Visitor>
void walk(const Node& node, Visitor&& visit) {
  if (!visit(node)) return;
  for (const auto& c : node.children) walk(*c, visit);
}

// Nearest enclosing function node, or nullptr at program level.
const Node* enclosing_function(const Node& node);

// Source text of a node, clipped to max_len bytes.
std::string node_text(std::string_view source, const Node& node, std::size_t max_len = 200);

// Compact s-expression form: kinds, names and literal values only. Used to
// compare trees structurally.
std::string to_sexpr(const Node& node);

}  // namespace gamesmell
