#include "gamesmell/parser.hpp"

#include <array>
#include <utility>

namespace gamesmell {
namespace {

using NodePtr = std::unique_ptr<Node>;

constexpr int kMaxNesting = 1000;

int binary_precedence(const Token& t, bool no_in) {
  if (t.kind == TokenKind::Identifier) {
    if (t.text == "instanceof") return 7;
    if (t.text == "in") return no_in ? 0 : 7;
    return 0;
  }
  if (t.kind != TokenKind::Punct) return 0;
  std::string_view op = t.text;
  if (op == "||") return 1;
  if (op == "&&") return 2;
  if (op == "|") return 3;
  if (op == "^") return 4;
  if (op == "&") return 5;
  if (op == "==" || op == "!=" || op == "===" || op == "!==") return 6;
  if (op == "<" || op == ">" || op == "<=" || op == ">=") return 7;
  if (op == "<<" || op == ">>" || op == ">>>") return 8;
  if (op == "+" || op == "-") return 9;
  if (op == "*" || op == "/" || op == "%") return 10;
  if (op == "**") return 11;
  return 0;
}

bool is_assignment_operator(const Token& t) {
  static constexpr std::array<std::string_view, 13> kOps = {
      "=", "+=", "-=", "*=", "/=", "%=", "**=", "<<=", ">>=", ">>>=", "&=", "|=", "^="};
  if (t.kind != TokenKind::Punct) return false;
  for (auto op : kOps)
    if (t.text == op) return true;
  return false;
}

class Parser {
 public:
  Parser(std::vector<Token>& tokens, ParseGoal goal) : toks_(tokens), goal_(goal) {}

  NodePtr parse() {
    auto program = std::make_unique<Node>(NodeKind::Program, Span{});
    program->span.start = Position{};
    function_depth_ = goal_ == ParseGoal::HandlerBody ? 1 : 0;
    while (!cur().kind_is(TokenKind::End)) program->children.push_back(parse_statement());
    program->span.end = tok().span.end;
    if (goal_ == ParseGoal::HandlerBody) program->name = "handler";
    return program;
  }

 private:
  struct Cursor {
    const Token* t;
    bool kind_is(TokenKind k) const { return t->kind == k; }
  };

  const Token& tok(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  Cursor cur() const { return {&tok()}; }
  bool at(std::string_view punct) const { return tok().is(punct); }
  bool at_word(std::string_view word) const { return tok().is_word(word); }
  const Token& take() {
    const Token& t = tok();
    if (pos_ < toks_.size() - 1) ++pos_;
    prev_end_ = t.span.end;
    return t;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw SyntaxError(message, tok().span.start);
  }
  [[noreturn]] void unexpected() const {
    if (tok().kind == TokenKind::End) fail("unexpected end of input");
    fail("unexpected token '" + std::string(tok().text) + "'");
  }

  void expect(std::string_view punct) {
    if (!at(punct)) {
      if (tok().kind == TokenKind::End) fail("expected '" + std::string(punct) + "' before end of input");
      fail("expected '" + std::string(punct) + "' but found '" + std::string(tok().text) + "'");
    }
    take();
  }

  void consume_semicolon() {
    if (at(";")) {
      take();
      return;
    }
    if (at("}") || tok().kind == TokenKind::End || tok().newline_before) return;
    fail("expected ';' but found '" + std::string(tok().text) + "'");
  }

  NodePtr make(NodeKind kind, Position start) {
    auto n = std::make_unique<Node>(kind, Span{start, start});
    return n;
  }
  NodePtr finish(NodePtr n) {
    n->span.end = prev_end_;
    return n;
  }

  struct DepthGuard {
    explicit DepthGuard(Parser& p) : p(p) {
      if (++p.nesting_ > kMaxNesting) p.fail("nesting too deep");
    }
    ~DepthGuard() { --p.nesting_; }
    Parser& p;
  };

  std::string identifier_name() {
    if (tok().kind != TokenKind::Identifier) fail("expected identifier");
    return std::string(take().text);
  }

  NodePtr binding_identifier() {
    const Token& t = tok();
    if (t.kind != TokenKind::Identifier) {
      if (t.is("{") || t.is("[")) fail("destructuring patterns are not supported");
      unexpected();
    }
    if (is_reserved_word(t.text)) fail("unexpected reserved word '" + std::string(t.text) + "'");
    auto id = make(NodeKind::Identifier, t.span.start);
    id->name = std::string(take().text);
    return finish(std::move(id));
  }

  // ---- statements ----

  NodePtr parse_statement() {
    DepthGuard guard(*this);
    const Token& t = tok();
    Position start = t.span.start;
    if (t.kind == TokenKind::Punct) {
      if (t.text == "{") return parse_block();
      if (t.text == ";") {
        take();
        return finish(make(NodeKind::Empty, start));
      }
    }
    if (t.kind == TokenKind::Identifier) {
      std::string_view w = t.text;
      if (w == "var" || w == "const") return parse_var_statement();
      if (w == "let" && tok(1).kind == TokenKind::Identifier && !tok(1).is_word("in") &&
          !tok(1).is_word("instanceof"))
        return parse_var_statement();
      if (w == "let" && (tok(1).is("[") || tok(1).is("{")))
        fail("destructuring patterns are not supported");
      if (w == "function") return parse_function(NodeKind::FunctionDecl);
      if (w == "async" && tok(1).is_word("function") && !tok(1).newline_before)
        fail("async functions are not supported");
      if (w == "class") return parse_class(false);
      if (w == "if") return parse_if();
      if (w == "for") return parse_for();
      if (w == "while") return parse_while();
      if (w == "do") return parse_do_while();
      if (w == "return") return parse_return();
      if (w == "break" || w == "continue") return parse_jump();
      if (w == "throw") return parse_throw();
      if (w == "try") return parse_try();
      if (w == "switch") return parse_switch();
      if (w == "with") return parse_with();
      if (w == "import" || w == "export") fail("modules are not supported");
      if (w == "debugger") {
        take();
        consume_semicolon();
        return finish(make(NodeKind::Debugger, start));
      }
      if (!is_reserved_word(w) && tok(1).is(":")) {
        auto n = make(NodeKind::Labeled, start);
        n->name = std::string(take().text);
        take();
        n->children.push_back(parse_statement());
        return finish(std::move(n));
      }
    }
    auto stmt = make(NodeKind::ExpressionStmt, start);
    stmt->children.push_back(parse_expression(false));
    consume_semicolon();
    return finish(std::move(stmt));
  }

  NodePtr parse_block() {
    auto block = make(NodeKind::Block, tok().span.start);
    expect("{");
    while (!at("}")) {
      if (tok().kind == TokenKind::End) fail("expected '}' before end of input");
      block->children.push_back(parse_statement());
    }
    take();
    return finish(std::move(block));
  }

  NodePtr parse_var_declaration(bool no_in) {
    auto decl = make(NodeKind::VarDecl, tok().span.start);
    std::string_view kw = take().text;
    decl->decl_keyword = kw == "var" ? DeclKeyword::Var : kw == "let" ? DeclKeyword::Let : DeclKeyword::Const;
    decl->name = std::string(kw);
    for (;;) {
      auto d = make(NodeKind::Declarator, tok().span.start);
      auto id = binding_identifier();
      d->name = id->name;
      d->children.push_back(std::move(id));
      if (at("=")) {
        take();
        d->children.push_back(parse_assignment(no_in));
      }
      decl->children.push_back(finish(std::move(d)));
      if (!at(",")) break;
      take();
    }
    return finish(std::move(decl));
  }

  NodePtr parse_var_statement() {
    auto decl = parse_var_declaration(false);
    consume_semicolon();
    decl->span.end = prev_end_;
    return decl;
  }

  NodePtr parse_if() {
    auto n = make(NodeKind::If, tok().span.start);
    take();
    expect("(");
    n->children.push_back(parse_expression(false));
    expect(")");
    n->children.push_back(parse_statement());
    if (at_word("else")) {
      take();
      n->children.push_back(parse_statement());
    }
    return finish(std::move(n));
  }

  NodePtr empty_at(Position p) { return std::make_unique<Node>(NodeKind::Empty, Span{p, p}); }

  NodePtr parse_for() {
    auto loop = make(NodeKind::Loop, tok().span.start);
    take();
    if (at_word("await")) fail("for-await is not supported");
    expect("(");
    NodePtr init;
    if (at(";")) {
      init = empty_at(tok().span.start);
    } else if (at_word("var") || at_word("const") ||
               (at_word("let") && tok(1).kind == TokenKind::Identifier)) {
      init = parse_var_declaration(true);
    } else {
      init = parse_expression(true);
    }
    if (init->kind != NodeKind::Empty && (at_word("in") || at_word("of"))) {
      bool is_of = at_word("of");
      if (init->kind == NodeKind::VarDecl && init->children.size() != 1)
        fail("invalid left-hand side in for-in/of loop");
      if (init->kind != NodeKind::VarDecl && init->kind != NodeKind::Identifier &&
          init->kind != NodeKind::Member)
        fail("invalid left-hand side in for-in/of loop");
      take();
      loop->loop_kind = is_of ? LoopKind::ForOf : LoopKind::ForIn;
      loop->children.push_back(std::move(init));
      loop->children.push_back(is_of ? parse_assignment(false) : parse_expression(false));
      expect(")");
      loop->children.push_back(parse_loop_body());
      return finish(std::move(loop));
    }
    loop->loop_kind = LoopKind::For;
    loop->children.push_back(std::move(init));
    expect(";");
    loop->children.push_back(at(";") ? empty_at(tok().span.start) : parse_expression(false));
    expect(";");
    loop->children.push_back(at(")") ? empty_at(tok().span.start) : parse_expression(false));
    expect(")");
    loop->children.push_back(parse_loop_body());
    return finish(std::move(loop));
  }

  NodePtr parse_loop_body() {
    ++loop_depth_;
    auto body = parse_statement();
    --loop_depth_;
    return body;
  }

  NodePtr parse_while() {
    auto loop = make(NodeKind::Loop, tok().span.start);
    loop->loop_kind = LoopKind::While;
    take();
    expect("(");
    loop->children.push_back(parse_expression(false));
    expect(")");
    loop->children.push_back(parse_loop_body());
    return finish(std::move(loop));
  }

  NodePtr parse_do_while() {
    auto loop = make(NodeKind::Loop, tok().span.start);
    loop->loop_kind = LoopKind::DoWhile;
    take();
    loop->children.push_back(parse_loop_body());
    if (!at_word("while")) fail("expected 'while' after do-while body");
    take();
    expect("(");
    loop->children.push_back(parse_expression(false));
    expect(")");
    if (at(";")) take();
    return finish(std::move(loop));
  }

  NodePtr parse_return() {
    auto n = make(NodeKind::Return, tok().span.start);
    if (function_depth_ == 0) fail("return outside of function");
    take();
    if (!at(";") && !at("}") && tok().kind != TokenKind::End && !tok().newline_before)
      n->children.push_back(parse_expression(false));
    consume_semicolon();
    return finish(std::move(n));
  }

  NodePtr parse_jump() {
    bool is_break = at_word("break");
    auto n = make(is_break ? NodeKind::Break : NodeKind::Continue, tok().span.start);
    take();
    if (tok().kind == TokenKind::Identifier && !tok().newline_before && !is_reserved_word(tok().text))
      n->name = std::string(take().text);
    consume_semicolon();
    return finish(std::move(n));
  }

  NodePtr parse_throw() {
    auto n = make(NodeKind::Throw, tok().span.start);
    take();
    if (tok().newline_before) fail("illegal newline after throw");
    n->children.push_back(parse_expression(false));
    consume_semicolon();
    return finish(std::move(n));
  }

  NodePtr parse_try() {
    auto n = make(NodeKind::TryStmt, tok().span.start);
    take();
    n->children.push_back(parse_block());
    if (at_word("catch")) {
      auto c = make(NodeKind::CatchClause, tok().span.start);
      take();
      if (at("(")) {
        take();
        c->children.push_back(binding_identifier());
        c->has_param = true;
        expect(")");
      }
      c->children.push_back(parse_block());
      n->children.push_back(finish(std::move(c)));
    }
    if (at_word("finally")) {
      take();
      n->children.push_back(parse_block());
      n->has_finalizer = true;
    }
    if (n->children.size() == 1) fail("missing catch or finally after try");
    return finish(std::move(n));
  }

  NodePtr parse_switch() {
    auto n = make(NodeKind::SwitchStmt, tok().span.start);
    take();
    expect("(");
    n->children.push_back(parse_expression(false));
    expect(")");
    expect("{");
    bool seen_default = false;
    while (!at("}")) {
      auto c = make(NodeKind::SwitchCase, tok().span.start);
      if (at_word("case")) {
        take();
        c->children.push_back(parse_expression(false));
      } else if (at_word("default")) {
        if (seen_default) fail("more than one default clause in switch");
        seen_default = true;
        take();
        c->is_default = true;
      } else {
        unexpected();
      }
      expect(":");
      while (!at("}") && !at_word("case") && !at_word("default")) {
        if (tok().kind == TokenKind::End) fail("expected '}' before end of input");
        c->children.push_back(parse_statement());
      }
      n->children.push_back(finish(std::move(c)));
    }
    take();
    return finish(std::move(n));
  }

  NodePtr parse_with() {
    auto n = make(NodeKind::With, tok().span.start);
    take();
    expect("(");
    n->children.push_back(parse_expression(false));
    expect(")");
    n->children.push_back(parse_statement());
    return finish(std::move(n));
  }

  // ---- functions and classes ----

  void parse_params(Node& fn) {
    expect("(");
    while (!at(")")) {
      if (at("...")) {
        Position start = take().span.start;
        auto id = binding_identifier();
        id->is_rest = true;
        id->span.start = start;
        fn.children.push_back(std::move(id));
        if (!at(")")) fail("rest parameter must be last");
        break;
      }
      auto id = binding_identifier();
      if (at("=")) {
        auto a = make(NodeKind::Assignment, id->span.start);
        a->name = "=";
        take();
        a->children.push_back(std::move(id));
        a->children.push_back(parse_assignment(false));
        fn.children.push_back(finish(std::move(a)));
      } else {
        fn.children.push_back(std::move(id));
      }
      if (!at(")")) expect(",");
    }
    expect(")");
    fn.param_count = static_cast<std::uint32_t>(fn.children.size());
  }

  NodePtr parse_function_body() {
    ++function_depth_;
    int saved_loop = std::exchange(loop_depth_, 0);
    auto body = parse_block();
    loop_depth_ = saved_loop;
    --function_depth_;
    return body;
  }

  NodePtr parse_function(NodeKind kind) {
    auto fn = make(kind, tok().span.start);
    take();  // function
    if (at("*")) fail("generator functions are not supported");
    if (tok().kind == TokenKind::Identifier && !at("(")) {
      fn->name = binding_identifier()->name;
    } else if (kind == NodeKind::FunctionDecl) {
      fail("function declaration requires a name");
    }
    parse_params(*fn);
    fn->children.push_back(parse_function_body());
    return finish(std::move(fn));
  }

  // Method body after the key: `(params) { ... }`.
  NodePtr parse_method_function(Position start, std::string name) {
    auto fn = make(NodeKind::FunctionExpr, start);
    fn->name = std::move(name);
    parse_params(*fn);
    fn->children.push_back(parse_function_body());
    return finish(std::move(fn));
  }

  // Property key; sets name for static keys and computed otherwise.
  NodePtr parse_property_key(bool& computed, std::string& name) {
    const Token& t = tok();
    Position start = t.span.start;
    computed = false;
    if (t.is("[")) {
      take();
      computed = true;
      auto key = parse_assignment(false);
      expect("]");
      return key;
    }
    if (t.kind == TokenKind::Identifier) {
      auto id = make(NodeKind::Identifier, start);
      name = std::string(take().text);
      id->name = name;
      return finish(std::move(id));
    }
    if (t.kind == TokenKind::String || t.kind == TokenKind::Number) {
      auto lit = make(NodeKind::Literal, start);
      lit->literal_kind = t.kind == TokenKind::String ? LiteralKind::String : LiteralKind::Number;
      lit->name = std::string(t.text);
      lit->value = t.kind == TokenKind::String ? t.value : std::string(t.text);
      name = lit->value;
      take();
      return finish(std::move(lit));
    }
    if (t.is("...")) fail("object spread is not supported");
    unexpected();
  }

  bool starts_property_key() const {
    const Token& t = tok();
    return t.kind == TokenKind::Identifier || t.kind == TokenKind::String ||
           t.kind == TokenKind::Number || t.is("[");
  }

  NodePtr parse_class(bool expression) {
    auto cls = make(NodeKind::ClassDecl, tok().span.start);
    take();
    if (tok().kind == TokenKind::Identifier && !at_word("extends")) {
      cls->name = binding_identifier()->name;
    } else if (!expression) {
      fail("class declaration requires a name");
    }
    cls->is_class_expression = expression;
    if (at_word("extends")) {
      take();
      cls->children.push_back(parse_lhs_expression());
      cls->has_superclass = true;
    }
    expect("{");
    while (!at("}")) {
      if (at(";")) {
        take();
        continue;
      }
      if (tok().kind == TokenKind::End) fail("expected '}' before end of input");
      Position start = tok().span.start;
      auto m = make(NodeKind::MethodDef, start);
      if (at_word("static") && !tok(1).is("(")) {
        take();
        m->is_static = true;
      }
      m->property_kind = PropertyKind::Method;
      if ((at_word("get") || at_word("set")) && !tok(1).is("(")) {
        m->property_kind = at_word("get") ? PropertyKind::Getter : PropertyKind::Setter;
        take();
      }
      if (at("*")) fail("generator methods are not supported");
      if (at_word("async") && !tok(1).is("(")) fail("async methods are not supported");
      bool computed = false;
      std::string name;
      m->children.push_back(parse_property_key(computed, name));
      m->computed = computed;
      m->name = name;
      if (!at("(")) fail("class fields are not supported");
      if (!computed && !m->is_static && name == "constructor") m->property_kind = PropertyKind::Constructor;
      m->children.push_back(parse_method_function(tok().span.start, name));
      cls->children.push_back(finish(std::move(m)));
    }
    take();
    return finish(std::move(cls));
  }

  // ---- expressions ----

  NodePtr parse_expression(bool no_in) {
    Position start = tok().span.start;
    auto first = parse_assignment(no_in);
    if (!at(",")) return first;
    auto seq = make(NodeKind::Sequence, start);
    seq->children.push_back(std::move(first));
    while (at(",")) {
      take();
      seq->children.push_back(parse_assignment(no_in));
    }
    return finish(std::move(seq));
  }

  // Index of the `)` matching the `(` at pos_ + ahead, or 0 if unbalanced.
  std::size_t matching_paren(std::size_t ahead) const {
    int depth = 0;
    for (std::size_t i = pos_ + ahead; i < toks_.size(); ++i) {
      const Token& t = toks_[i];
      if (t.kind == TokenKind::End) return 0;
      if (t.is("(") || t.is("[") || t.is("{")) ++depth;
      if (t.is(")") || t.is("]") || t.is("}")) {
        if (--depth == 0) return t.is(")") ? i : 0;
      }
      if (t.kind == TokenKind::Template && t.template_part == TemplatePart::Head) ++depth;
      if (t.kind == TokenKind::Template && t.template_part == TemplatePart::Tail) --depth;
    }
    return 0;
  }

  bool arrow_ahead() const {
    if (tok().kind == TokenKind::Identifier && !is_reserved_word(tok().text))
      return tok(1).is("=>") && !tok(1).newline_before;
    if (!at("(")) return false;
    std::size_t close = matching_paren(0);
    if (close == 0 || close + 1 >= toks_.size()) return false;
    return toks_[close + 1].is("=>") && !toks_[close + 1].newline_before;
  }

  NodePtr parse_arrow() {
    auto fn = make(NodeKind::ArrowFunction, tok().span.start);
    if (at("(")) {
      parse_params(*fn);
    } else {
      fn->children.push_back(binding_identifier());
      fn->param_count = 1;
    }
    expect("=>");
    if (at("{")) {
      fn->children.push_back(parse_function_body());
    } else {
      ++function_depth_;
      int saved_loop = std::exchange(loop_depth_, 0);
      auto expr = parse_assignment(false);
      loop_depth_ = saved_loop;
      --function_depth_;
      auto block = std::make_unique<Node>(NodeKind::Block, expr->span);
      auto ret = std::make_unique<Node>(NodeKind::Return, expr->span);
      ret->children.push_back(std::move(expr));
      block->children.push_back(std::move(ret));
      fn->children.push_back(std::move(block));
      fn->is_expression_body = true;
    }
    return finish(std::move(fn));
  }

  NodePtr parse_assignment(bool no_in) {
    DepthGuard guard(*this);
    if (arrow_ahead()) return parse_arrow();
    if (at_word("yield") && function_depth_ > 0) fail("generators are not supported");
    Position start = tok().span.start;
    auto left = parse_conditional(no_in);
    if (is_assignment_operator(tok())) {
      if (left->kind == NodeKind::ObjectLiteral || left->kind == NodeKind::ArrayLiteral)
        fail("destructuring assignment is not supported");
      if (left->kind != NodeKind::Identifier && left->kind != NodeKind::Member)
        fail("invalid assignment target");
      auto a = make(NodeKind::Assignment, start);
      a->name = std::string(take().text);
      a->children.push_back(std::move(left));
      a->children.push_back(parse_assignment(no_in));
      return finish(std::move(a));
    }
    return left;
  }

  NodePtr parse_conditional(bool no_in) {
    Position start = tok().span.start;
    auto test = parse_binary(1, no_in);
    if (!at("?")) return test;
    take();
    auto n = make(NodeKind::Conditional, start);
    n->children.push_back(std::move(test));
    n->children.push_back(parse_assignment(false));
    expect(":");
    n->children.push_back(parse_assignment(no_in));
    return finish(std::move(n));
  }

  NodePtr parse_binary(int min_prec, bool no_in) {
    Position start = tok().span.start;
    auto left = parse_unary();
    for (;;) {
      int prec = binary_precedence(tok(), no_in);
      if (prec == 0 || prec < min_prec) break;
      auto n = make(NodeKind::Binary, start);
      n->name = std::string(take().text);
      n->children.push_back(std::move(left));
      n->children.push_back(parse_binary(n->name == "**" ? prec : prec + 1, no_in));
      left = finish(std::move(n));
    }
    return left;
  }

  NodePtr parse_unary() {
    DepthGuard guard(*this);
    const Token& t = tok();
    Position start = t.span.start;
    bool unary_word = t.kind == TokenKind::Identifier &&
                      (t.text == "typeof" || t.text == "void" || t.text == "delete");
    bool unary_punct = t.kind == TokenKind::Punct &&
                       (t.text == "!" || t.text == "~" || t.text == "+" || t.text == "-");
    if (unary_word || unary_punct) {
      auto n = make(NodeKind::Unary, start);
      n->name = std::string(take().text);
      n->children.push_back(parse_unary());
      return finish(std::move(n));
    }
    if (t.is("++") || t.is("--")) {
      auto n = make(NodeKind::Update, start);
      n->name = std::string(take().text);
      n->is_prefix = true;
      auto arg = parse_unary();
      if (arg->kind != NodeKind::Identifier && arg->kind != NodeKind::Member)
        fail("invalid update target");
      n->children.push_back(std::move(arg));
      return finish(std::move(n));
    }
    if (t.is_word("await") && function_depth_ > 0 && tok(1).kind == TokenKind::Identifier &&
        !tok(1).newline_before)
      fail("await is not supported");
    auto expr = parse_lhs_expression();
    if ((at("++") || at("--")) && !tok().newline_before) {
      if (expr->kind != NodeKind::Identifier && expr->kind != NodeKind::Member)
        fail("invalid update target");
      auto n = make(NodeKind::Update, start);
      n->name = std::string(take().text);
      n->children.push_back(std::move(expr));
      return finish(std::move(n));
    }
    return expr;
  }

  void parse_arguments(Node& call) {
    expect("(");
    while (!at(")")) {
      if (at("...")) {
        auto s = make(NodeKind::Spread, tok().span.start);
        take();
        s->children.push_back(parse_assignment(false));
        call.children.push_back(finish(std::move(s)));
      } else {
        call.children.push_back(parse_assignment(false));
      }
      if (!at(")")) expect(",");
    }
    expect(")");
  }

  NodePtr member_property(Position start, NodePtr object) {
    auto m = make(NodeKind::Member, start);
    take();  // .
    const Token& p = tok();
    if (p.kind != TokenKind::Identifier) {
      if (p.is("#")) fail("private names are not supported");
      fail("expected property name after '.'");
    }
    auto id = make(NodeKind::Identifier, p.span.start);
    id->name = std::string(take().text);
    m->name = id->name;
    m->children.push_back(std::move(object));
    m->children.push_back(finish(std::move(id)));
    return finish(std::move(m));
  }

  NodePtr computed_member(Position start, NodePtr object) {
    auto m = make(NodeKind::Member, start);
    take();  // [
    m->computed = true;
    m->children.push_back(std::move(object));
    m->children.push_back(parse_expression(false));
    expect("]");
    return finish(std::move(m));
  }

  NodePtr tagged_template(Position start, NodePtr tag) {
    auto call = make(NodeKind::Call, start);
    call->children.push_back(std::move(tag));
    call->children.push_back(parse_template());
    return finish(std::move(call));
  }

  NodePtr parse_new() {
    Position start = tok().span.start;
    take();  // new
    if (at(".")) fail("new.target is not supported");
    Position callee_start = tok().span.start;
    NodePtr callee;
    if (at_word("new")) {
      callee = parse_new();
    } else {
      callee = parse_primary();
    }
    for (;;) {
      if (at(".")) {
        callee = member_property(callee_start, std::move(callee));
      } else if (at("[")) {
        callee = computed_member(callee_start, std::move(callee));
      } else if (tok().kind == TokenKind::Template &&
                 (tok().template_part == TemplatePart::NoSubstitution ||
                  tok().template_part == TemplatePart::Head)) {
        callee = tagged_template(callee_start, std::move(callee));
      } else {
        break;
      }
    }
    auto n = make(NodeKind::New, start);
    n->children.push_back(std::move(callee));
    if (at("(")) parse_arguments(*n);
    return finish(std::move(n));
  }

  NodePtr parse_lhs_expression() {
    Position start = tok().span.start;
    NodePtr expr;
    if (at_word("new")) {
      expr = parse_new();
    } else if (at_word("super")) {
      expr = make(NodeKind::Super, start);
      take();
      expr = finish(std::move(expr));
      if (!at("(") && !at(".") && !at("[")) fail("unexpected 'super'");
    } else {
      expr = parse_primary();
    }
    for (;;) {
      if (at(".")) {
        expr = member_property(start, std::move(expr));
      } else if (at("[")) {
        expr = computed_member(start, std::move(expr));
      } else if (at("(")) {
        auto call = make(NodeKind::Call, start);
        call->children.push_back(std::move(expr));
        parse_arguments(*call);
        expr = finish(std::move(call));
      } else if (tok().kind == TokenKind::Template &&
                 (tok().template_part == TemplatePart::NoSubstitution ||
                  tok().template_part == TemplatePart::Head)) {
        expr = tagged_template(start, std::move(expr));
      } else if (at("?") && tok(1).is(".") && tok(1).span.start.offset == tok().span.end.offset) {
        fail("optional chaining is not supported");
      } else {
        break;
      }
    }
    return expr;
  }

  NodePtr parse_template() {
    auto tpl = make(NodeKind::TemplateLiteral, tok().span.start);
    const Token& first = take();
    tpl->quasis.push_back(first.value);
    if (first.template_part == TemplatePart::NoSubstitution) return finish(std::move(tpl));
    for (;;) {
      tpl->children.push_back(parse_expression(false));
      const Token& part = tok();
      if (part.kind != TokenKind::Template ||
          (part.template_part != TemplatePart::Middle && part.template_part != TemplatePart::Tail))
        fail("expected '}' in template literal");
      take();
      tpl->quasis.push_back(part.value);
      if (part.template_part == TemplatePart::Tail) break;
    }
    return finish(std::move(tpl));
  }

  NodePtr parse_primary() {
    const Token& t = tok();
    Position start = t.span.start;
    switch (t.kind) {
      case TokenKind::Number:
      case TokenKind::String:
      case TokenKind::RegExp: {
        auto lit = make(NodeKind::Literal, start);
        lit->literal_kind = t.kind == TokenKind::Number   ? LiteralKind::Number
                            : t.kind == TokenKind::String ? LiteralKind::String
                                                          : LiteralKind::RegExp;
        lit->name = std::string(t.text);
        lit->value = t.kind == TokenKind::String ? t.value : std::string(t.text);
        take();
        return finish(std::move(lit));
      }
      case TokenKind::Template:
        if (t.template_part == TemplatePart::NoSubstitution || t.template_part == TemplatePart::Head)
          return parse_template();
        unexpected();
      case TokenKind::Identifier: {
        std::string_view w = t.text;
        if (w == "this") {
          take();
          return finish(make(NodeKind::This, start));
        }
        if (w == "true" || w == "false" || w == "null") {
          auto lit = make(NodeKind::Literal, start);
          lit->literal_kind = w == "null" ? LiteralKind::Null : LiteralKind::Boolean;
          lit->name = std::string(w);
          lit->value = lit->name;
          take();
          return finish(std::move(lit));
        }
        if (w == "function") return parse_function(NodeKind::FunctionExpr);
        if (w == "class") return parse_class(true);
        if (w == "async" && tok(1).is_word("function") && !tok(1).newline_before)
          fail("async functions are not supported");
        if (w == "import") fail("dynamic import is not supported");
        if (is_reserved_word(w)) unexpected();
        auto id = make(NodeKind::Identifier, start);
        id->name = std::string(w);
        take();
        return finish(std::move(id));
      }
      case TokenKind::Punct:
        if (t.text == "(") {
          take();
          auto inner = parse_expression(false);
          expect(")");
          return inner;
        }
        if (t.text == "[") return parse_array();
        if (t.text == "{") return parse_object();
        if (t.text == "<") fail("JSX is not supported");
        if (t.text == "@") fail("decorators are not supported");
        unexpected();
      case TokenKind::End:
        unexpected();
    }
    unexpected();
  }

  NodePtr parse_array() {
    auto arr = make(NodeKind::ArrayLiteral, tok().span.start);
    take();
    while (!at("]")) {
      if (at(",")) {
        arr->children.push_back(empty_at(tok().span.start));
        take();
        continue;
      }
      if (at("...")) {
        auto s = make(NodeKind::Spread, tok().span.start);
        take();
        s->children.push_back(parse_assignment(false));
        arr->children.push_back(finish(std::move(s)));
      } else {
        arr->children.push_back(parse_assignment(false));
      }
      if (!at("]")) expect(",");
    }
    take();
    return finish(std::move(arr));
  }

  NodePtr parse_object() {
    auto obj = make(NodeKind::ObjectLiteral, tok().span.start);
    take();
    while (!at("}")) {
      if (tok().kind == TokenKind::End) fail("expected '}' before end of input");
      Position start = tok().span.start;
      auto prop = make(NodeKind::Property, start);
      if ((at_word("get") || at_word("set")) && !tok(1).is(":") && !tok(1).is("(") &&
          !tok(1).is(",") && !tok(1).is("}")) {
        prop->property_kind = at_word("get") ? PropertyKind::Getter : PropertyKind::Setter;
        take();
        bool computed = false;
        std::string name;
        prop->children.push_back(parse_property_key(computed, name));
        prop->computed = computed;
        prop->name = name;
        prop->children.push_back(parse_method_function(tok().span.start, name));
      } else {
        if (at("*")) fail("generator methods are not supported");
        if (at_word("async") && !tok(1).is(":") && !tok(1).is("(") && !tok(1).is(",") &&
            !tok(1).is("}"))
          fail("async methods are not supported");
        bool computed = false;
        std::string name;
        bool key_is_identifier = tok().kind == TokenKind::Identifier;
        auto key = parse_property_key(computed, name);
        prop->computed = computed;
        prop->name = name;
        if (at(":")) {
          take();
          prop->children.push_back(std::move(key));
          prop->children.push_back(parse_assignment(false));
        } else if (at("(")) {
          prop->property_kind = PropertyKind::Method;
          prop->children.push_back(std::move(key));
          prop->children.push_back(parse_method_function(tok().span.start, name));
        } else if (key_is_identifier && !computed && (at(",") || at("}"))) {
          if (is_reserved_word(name)) fail("unexpected reserved word '" + name + "'");
          prop->property_kind = PropertyKind::Shorthand;
          auto value = std::make_unique<Node>(NodeKind::Identifier, key->span);
          value->name = name;
          prop->children.push_back(std::move(key));
          prop->children.push_back(std::move(value));
        } else if (at("=")) {
          fail("destructuring patterns are not supported");
        } else {
          unexpected();
        }
      }
      obj->children.push_back(finish(std::move(prop)));
      if (!at("}")) expect(",");
    }
    take();
    return finish(std::move(obj));
  }

  std::vector<Token>& toks_;
  ParseGoal goal_;
  std::size_t pos_ = 0;
  Position prev_end_;
  int nesting_ = 0;
  int function_depth_ = 0;
  int loop_depth_ = 0;
};

void link_parents(Node& node) {
  for (auto& c : node.children) {
    c->parent = &node;
    link_parents(*c);
  }
}

}  // namespace

ParseOutput parse_program(std::string_view source, ParseGoal goal) {
  ParseOutput out;
  out.lex = tokenize(source);
  Parser parser(out.lex.tokens, goal);
  out.program = parser.parse();
  link_parents(*out.program);
  return out;
}

}  // namespace gamesmell
