#include "gamesmell/ast.hpp"

#include <array>

#include "gamesmell/parser.hpp"

namespace gamesmell {

std::string_view to_string(NodeKind kind) {
  static constexpr std::array<std::string_view, 42> kNames = {
      "Program",      "FunctionDecl", "FunctionExpr", "ArrowFunction", "VarDecl",
      "Declarator",   "ObjectLiteral", "Property",    "ArrayLiteral",  "Call",
      "New",          "Member",       "Identifier",   "Literal",       "TryStmt",
      "CatchClause",  "SwitchStmt",   "SwitchCase",   "Loop",          "If",
      "Return",       "Throw",        "Break",        "Continue",      "Assignment",
      "Block",        "ClassDecl",    "MethodDef",    "ExpressionStmt", "TemplateLiteral",
      "This",         "Super",        "Unary",        "Update",        "Binary",
      "Conditional",  "Sequence",     "Spread",       "Empty",         "Labeled",
      "With",         "Debugger"};
  return kNames[static_cast<std::size_t>(kind)];
}

const Node* enclosing_function(const Node& node) {
  for (const Node* p = node.parent; p; p = p->parent)
    if (p->is_function()) return p;
  return nullptr;
}

std::string node_text(std::string_view source, const Node& node, std::size_t max_len) {
  std::size_t begin = std::min<std::size_t>(node.span.start.offset, source.size());
  std::size_t end = std::min<std::size_t>(node.span.end.offset, source.size());
  std::string text(source.substr(begin, end - begin));
  for (char& c : text)
    if (c == '\n' || c == '\r' || c == '\t') c = ' ';
  if (text.size() > max_len) {
    // Cut on a UTF-8 boundary.
    std::size_t cut = max_len;
    while (cut > 0 && (static_cast<unsigned char>(text[cut]) & 0xC0) == 0x80) --cut;
    text.resize(cut);
  }
  return text;
}

namespace {

void sexpr(const Node& n, std::string& out) {
  out += '(';
  out += to_string(n.kind);
  if (!n.name.empty()) {
    out += " '";
    out += n.name;
    out += '\'';
  }
  if (n.kind == NodeKind::Loop) out += " loop=" + std::to_string(static_cast<int>(n.loop_kind));
  if (n.kind == NodeKind::Literal) out += " lit=" + std::to_string(static_cast<int>(n.literal_kind));
  if (n.kind == NodeKind::Property || n.kind == NodeKind::MethodDef)
    out += " prop=" + std::to_string(static_cast<int>(n.property_kind));
  if (n.is_function()) out += " params=" + std::to_string(n.param_count);
  if (n.computed) out += " computed";
  if (n.is_rest) out += " rest";
  if (n.is_static) out += " static";
  if (n.is_default) out += " default";
  if (n.is_prefix) out += " prefix";
  if (n.is_expression_body) out += " expr-body";
  for (const auto& q : n.quasis) {
    out += " `";
    out += q;
    out += '`';
  }
  for (const auto& c : n.children) {
    out += ' ';
    sexpr(*c, out);
  }
  out += ')';
}

class Printer {
 public:
  std::string out;

  void statement(const Node& n, int indent) {
    pad(indent);
    switch (n.kind) {
      case NodeKind::ExpressionStmt:
        out += '(';
        expr(n.child(0));
        out += ");\n";
        return;
      case NodeKind::VarDecl:
        var_decl(n);
        out += ";\n";
        return;
      case NodeKind::FunctionDecl:
        function(n, indent);
        out += '\n';
        return;
      case NodeKind::ClassDecl:
        class_decl(n, indent);
        out += '\n';
        return;
      case NodeKind::Block:
        block(n, indent);
        out += '\n';
        return;
      case NodeKind::Empty:
        out += ";\n";
        return;
      case NodeKind::If:
        out += "if (";
        expr(n.child(0));
        out += ")\n";
        statement(n.child(1), indent + 1);
        if (n.size() > 2) {
          pad(indent);
          out += "else\n";
          statement(n.child(2), indent + 1);
        }
        return;
      case NodeKind::Loop:
        loop(n, indent);
        return;
      case NodeKind::Return:
      case NodeKind::Throw:
        out += n.kind == NodeKind::Return ? "return" : "throw";
        if (n.size() > 0) {
          out += " (";
          expr(n.child(0));
          out += ')';
        }
        out += ";\n";
        return;
      case NodeKind::Break:
      case NodeKind::Continue:
        out += n.kind == NodeKind::Break ? "break" : "continue";
        if (!n.name.empty()) out += ' ' + n.name;
        out += ";\n";
        return;
      case NodeKind::TryStmt: {
        out += "try ";
        block(n.child(0), indent);
        std::size_t i = 1;
        if (i < n.size() && n.child(i).kind == NodeKind::CatchClause) {
          const Node& c = n.child(i++);
          out += " catch ";
          if (c.has_param) out += "(" + c.child(0).name + ") ";
          block(c.function_body(), indent);
        }
        if (n.has_finalizer) {
          out += " finally ";
          block(n.child(i), indent);
        }
        out += '\n';
        return;
      }
      case NodeKind::SwitchStmt:
        out += "switch (";
        expr(n.child(0));
        out += ") {\n";
        for (std::size_t i = 1; i < n.size(); ++i) {
          const Node& c = n.child(i);
          pad(indent + 1);
          std::size_t first = 0;
          if (c.is_default) {
            out += "default:\n";
          } else {
            out += "case (";
            expr(c.child(0));
            out += "):\n";
            first = 1;
          }
          for (std::size_t j = first; j < c.size(); ++j) statement(c.child(j), indent + 2);
        }
        pad(indent);
        out += "}\n";
        return;
      case NodeKind::Labeled:
        out += n.name + ":\n";
        statement(n.child(0), indent + 1);
        return;
      case NodeKind::With:
        out += "with (";
        expr(n.child(0));
        out += ")\n";
        statement(n.child(1), indent + 1);
        return;
      case NodeKind::Debugger:
        out += "debugger;\n";
        return;
      default:
        out += '(';
        expr(n);
        out += ");\n";
        return;
    }
  }

  void pad(int indent) { out.append(static_cast<std::size_t>(indent) * 2, ' '); }

  void block(const Node& n, int indent) {
    out += "{\n";
    for (const auto& s : n.children) statement(*s, indent + 1);
    pad(indent);
    out += '}';
  }

  void var_decl(const Node& n) {
    out += n.name;
    out += ' ';
    for (std::size_t i = 0; i < n.size(); ++i) {
      if (i) out += ", ";
      const Node& d = n.child(i);
      out += d.name;
      if (d.size() > 1) {
        out += " = (";
        expr(d.child(1));
        out += ')';
      }
    }
  }

  void loop(const Node& n, int indent) {
    switch (n.loop_kind) {
      case LoopKind::For:
        out += "for (";
        for_head(n.child(0));
        out += "; ";
        if (n.child(1).kind != NodeKind::Empty) expr(n.child(1));
        out += "; ";
        if (n.child(2).kind != NodeKind::Empty) expr(n.child(2));
        out += ")\n";
        break;
      case LoopKind::ForIn:
      case LoopKind::ForOf:
        out += "for (";
        for_head(n.child(0));
        out += n.loop_kind == LoopKind::ForIn ? " in (" : " of (";
        expr(n.child(1));
        out += "))\n";
        break;
      case LoopKind::While:
        out += "while (";
        expr(n.child(0));
        out += ")\n";
        break;
      case LoopKind::DoWhile:
        out += "do\n";
        statement(n.child(0), indent + 1);
        pad(indent);
        out += "while (";
        expr(n.child(1));
        out += ");\n";
        return;
    }
    statement(n.loop_body(), indent + 1);
  }

  void for_head(const Node& n) {
    if (n.kind == NodeKind::Empty) return;
    if (n.kind == NodeKind::VarDecl) {
      var_decl(n);
      return;
    }
    out += '(';
    expr(n);
    out += ')';
  }

  void params(const Node& fn) {
    out += '(';
    for (std::size_t i = 0; i < fn.param_count; ++i) {
      if (i) out += ", ";
      const Node& p = fn.child(i);
      if (p.kind == NodeKind::Assignment) {
        out += p.child(0).name + " = (";
        expr(p.child(1));
        out += ')';
      } else {
        if (p.is_rest) out += "...";
        out += p.name;
      }
    }
    out += ')';
  }

  void function(const Node& n, int indent) {
    if (n.kind == NodeKind::ArrowFunction) {
      params(n);
      out += " => ";
      if (n.is_expression_body) {
        out += '(';
        expr(n.function_body().child(0).child(0));
        out += ')';
      } else {
        block(n.function_body(), indent);
      }
      return;
    }
    out += "function";
    if (!n.name.empty()) out += ' ' + n.name;
    params(n);
    out += ' ';
    block(n.function_body(), indent);
  }

  void method_tail(const Node& fn, int indent) {
    params(fn);
    out += ' ';
    block(fn.function_body(), indent);
  }

  void key(const Node& owner) {
    const Node& k = owner.child(0);
    if (owner.computed) {
      out += '[';
      expr(k);
      out += ']';
    } else if (k.kind == NodeKind::Literal) {
      out += k.name;
    } else {
      out += k.name;
    }
  }

  void class_decl(const Node& n, int indent) {
    out += "class";
    if (!n.name.empty()) out += ' ' + n.name;
    std::size_t first = 0;
    if (n.has_superclass) {
      out += " extends (";
      expr(n.child(0));
      out += ')';
      first = 1;
    }
    out += " {\n";
    for (std::size_t i = first; i < n.size(); ++i) {
      const Node& m = n.child(i);
      pad(indent + 1);
      if (m.is_static) out += "static ";
      if (m.property_kind == PropertyKind::Getter) out += "get ";
      if (m.property_kind == PropertyKind::Setter) out += "set ";
      key(m);
      method_tail(m.child(1), indent + 1);
      out += '\n';
    }
    pad(indent);
    out += '}';
  }

  static void escape_template(const std::string& q, std::string& out) {
    for (std::size_t i = 0; i < q.size(); ++i) {
      char c = q[i];
      if (c == '\\' || c == '`') out += '\\';
      if (c == '$' && i + 1 < q.size() && q[i + 1] == '{') out += '\\';
      if (c == '\r') {
        out += "\\r";
        continue;
      }
      out += c;
    }
  }

  void args(const Node& n, std::size_t first) {
    out += '(';
    for (std::size_t i = first; i < n.size(); ++i) {
      if (i > first) out += ", ";
      expr(n.child(i));
    }
    out += ')';
  }

  void wrapped(const Node& n) {
    out += '(';
    expr(n);
    out += ')';
  }

  void expr(const Node& n) {
    switch (n.kind) {
      case NodeKind::Identifier: out += n.name; return;
      case NodeKind::Literal: out += n.name; return;
      case NodeKind::This: out += "this"; return;
      case NodeKind::Super: out += "super"; return;
      case NodeKind::Empty: return;
      case NodeKind::FunctionExpr:
      case NodeKind::ArrowFunction:
        out += '(';
        function(n, 0);
        out += ')';
        return;
      case NodeKind::ClassDecl:
        out += '(';
        class_decl(n, 0);
        out += ')';
        return;
      case NodeKind::ArrayLiteral:
        out += '[';
        for (std::size_t i = 0; i < n.size(); ++i) {
          if (i) out += ", ";
          expr(n.child(i));
        }
        if (n.size() > 0 && n.children.back()->kind == NodeKind::Empty) out += ',';
        out += ']';
        return;
      case NodeKind::ObjectLiteral:
        out += "({";
        for (std::size_t i = 0; i < n.size(); ++i) {
          if (i) out += ", ";
          const Node& p = n.child(i);
          switch (p.property_kind) {
            case PropertyKind::Shorthand: out += p.name; break;
            case PropertyKind::Getter:
            case PropertyKind::Setter:
              out += p.property_kind == PropertyKind::Getter ? "get " : "set ";
              key(p);
              method_tail(p.child(1), 0);
              break;
            case PropertyKind::Method:
              key(p);
              method_tail(p.child(1), 0);
              break;
            default:
              key(p);
              out += ": ";
              wrapped(p.child(1));
          }
        }
        out += "})";
        return;
      case NodeKind::TemplateLiteral:
        out += '`';
        for (std::size_t i = 0; i < n.quasis.size(); ++i) {
          escape_template(n.quasis[i], out);
          if (i < n.size()) {
            out += "${";
            expr(n.child(i));
            out += '}';
          }
        }
        out += '`';
        return;
      case NodeKind::Call:
        if (n.child(0).kind == NodeKind::Super)
          out += "super";
        else
          wrapped(n.child(0));
        args(n, 1);
        return;
      case NodeKind::New:
        out += "(new ";
        wrapped(n.child(0));
        args(n, 1);
        out += ')';
        return;
      case NodeKind::Member:
        if (n.child(0).kind == NodeKind::Super)
          out += "super";
        else
          wrapped(n.child(0));
        if (n.computed) {
          out += '[';
          expr(n.child(1));
          out += ']';
        } else {
          out += '.' + n.name;
        }
        return;
      case NodeKind::Unary:
        out += '(' + n.name + ' ';
        wrapped(n.child(0));
        out += ')';
        return;
      case NodeKind::Update:
        out += '(';
        if (n.is_prefix) out += n.name;
        wrapped(n.child(0));
        if (!n.is_prefix) out += n.name;
        out += ')';
        return;
      case NodeKind::Binary:
      case NodeKind::Assignment:
        out += '(';
        wrapped(n.child(0));
        out += ' ' + n.name + ' ';
        wrapped(n.child(1));
        out += ')';
        return;
      case NodeKind::Conditional:
        out += '(';
        wrapped(n.child(0));
        out += " ? ";
        wrapped(n.child(1));
        out += " : ";
        wrapped(n.child(2));
        out += ')';
        return;
      case NodeKind::Sequence:
        out += '(';
        for (std::size_t i = 0; i < n.size(); ++i) {
          if (i) out += ", ";
          wrapped(n.child(i));
        }
        out += ')';
        return;
      case NodeKind::Spread:
        out += "...";
        wrapped(n.child(0));
        return;
      default:
        out += "/* unsupported */";
        return;
    }
  }
};

}  // namespace

std::string to_sexpr(const Node& node) {
  std::string out;
  sexpr(node, out);
  return out;
}

std::string print_js(const Node& node) {
  Printer p;
  if (node.kind == NodeKind::Program) {
    for (const auto& s : node.children) p.statement(*s, 0);
  } else {
    p.statement(node, 0);
  }
  return p.out;
}

}  // namespace gamesmell
