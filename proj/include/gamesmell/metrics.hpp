#pragma once

#include <string>
#include <vector>

#include "gamesmell/source_unit.hpp"

namespace gamesmell {

// CLOC-style line count: lines in the span holding at least one token that
// starts inside the span. Blank and comment-only lines do not count.
int count_loc(const Span& span, const SourceUnit& unit);

// As count_loc, ignoring tokens inside any of the excluded spans.
int count_loc_excluding(const Span& span, const std::vector<Span>& excluded,
                        const SourceUnit& unit);

// Lines of code of a whole unit.
int count_loc(const SourceUnit& unit);

struct MemberChain {
  const Node* root = nullptr;  // innermost non-member, non-call expression
  const Node* top = nullptr;   // outermost Member/Call of the chain
  int length = 0;              // member accesses plus call links
  Span span;
  std::string text;
};

// One entry per maximal chain of member accesses and calls.
std::vector<MemberChain> extract_chains(const SourceUnit& unit);

// Chain length of a Member/Call node counting down to its root.
int chain_length(const Node& node);

}  // namespace gamesmell
