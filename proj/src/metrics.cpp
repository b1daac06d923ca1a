#include "gamesmell/metrics.hpp"

#include <algorithm>

namespace gamesmell {

int count_loc_excluding(const Span& span, const std::vector<Span>& excluded,
                        const SourceUnit& unit) {
  if (span.empty()) return 0;
  const auto& toks = unit.tokens;
  auto it = std::lower_bound(toks.begin(), toks.end(), span.start.offset,
                             [](const TokenLines& t, std::uint32_t off) { return t.offset < off; });
  int count = 0;
  std::uint32_t last = 0;
  for (; it != toks.end() && it->offset < span.end.offset; ++it) {
    bool skip = std::any_of(excluded.begin(), excluded.end(), [&](const Span& ex) {
      return ex.start.offset <= it->offset && it->offset < ex.end.offset;
    });
    if (skip) continue;
    std::uint32_t from = std::max(it->first_line, last + 1);
    if (it->last_line >= from) {
      count += static_cast<int>(it->last_line - from + 1);
      last = it->last_line;
    }
  }
  return count;
}

int count_loc(const Span& span, const SourceUnit& unit) { return count_loc_excluding(span, {}, unit); }

int count_loc(const SourceUnit& unit) {
  Span whole{Position{0, 1, 1}, Position{static_cast<std::uint32_t>(unit.text.size()), 1, 1}};
  return count_loc(whole, unit);
}

namespace {

bool is_link(const Node& n) { return n.kind == NodeKind::Member || n.kind == NodeKind::Call; }

// True when n continues a chain as the object of a Member or callee of a Call.
bool is_chain_interior(const Node& n) {
  const Node* p = n.parent;
  if (!p || !is_link(*p)) return false;
  return p->children.front().get() == &n;
}

}  // namespace

int chain_length(const Node& node) {
  int length = 0;
  const Node* n = &node;
  while (is_link(*n)) {
    ++length;
    n = n->children.front().get();
  }
  return length;
}

std::vector<MemberChain> extract_chains(const SourceUnit& unit) {
  std::vector<MemberChain> chains;
  if (!unit.ast) return chains;
  walk(*unit.ast, [&](const Node& n) {
    if (is_link(n) && !is_chain_interior(n)) {
      MemberChain c;
      c.top = &n;
      c.length = chain_length(n);
      const Node* root = &n;
      while (is_link(*root)) root = root->children.front().get();
      c.root = root;
      c.span = n.span;
      c.text = node_text(unit.text, n);
      chains.push_back(std::move(c));
    }
    return true;
  });
  return chains;
}

}  // namespace gamesmell
