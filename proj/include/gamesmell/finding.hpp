#pragma once

#include <array>
#include <bitset>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gamesmell/ast.hpp"

namespace gamesmell {

// S1..S13 are the JavaScript smells, P1..P4 the game-pattern violations.
enum class Kind : std::uint8_t {
  S1, S2, S3, S4, S5, S6, S7, S8, S9, S10, S11, S12, S13,
  P1, P2, P3, P4,
};

constexpr std::size_t kKindCount = 17;
constexpr std::size_t kSmellCount = 13;

constexpr std::size_t index(Kind k) { return static_cast<std::size_t>(k); }
constexpr bool is_smell(Kind k) { return index(k) < kSmellCount; }
constexpr bool is_pattern(Kind k) { return !is_smell(k); }

const std::array<Kind, kKindCount>& all_kinds();
std::string_view code(Kind k);  // "S1", "P4"
std::string_view name(Kind k);  // "Closure smell", "Object Pool"
// Accepts "S3", "s3", "P1"; nullopt for anything else.
std::optional<Kind> parse_kind(std::string_view text);

class KindSet {
 public:
  static KindSet all();
  static KindSet none() { return {}; }

  bool contains(Kind k) const { return bits_.test(index(k)); }
  void insert(Kind k) { bits_.set(index(k)); }
  bool empty() const { return bits_.none(); }
  std::vector<Kind> kinds() const;

  friend bool operator==(const KindSet&, const KindSet&) = default;

 private:
  std::bitset<kKindCount> bits_;
};

struct Finding {
  Kind kind = Kind::S1;
  std::string path;
  Span span;  // file coordinates
  std::optional<double> metric;
  std::optional<double> threshold;
  std::string evidence;  // at most 200 bytes
  std::string subkind;
  // Rule clause that fired, e.g. "alloc-in-loop: allocation inside a loop body".
  std::string rule;
};

// Orders by path, span start, span end, kind, then the remaining fields so
// that sorting is total and stable across runs.
bool canonical_less(const Finding& a, const Finding& b);
void sort_canonical(std::vector<Finding>& findings);

// Clips evidence text to 200 bytes on a UTF-8 boundary.
std::string clip_evidence(std::string_view text);

}  // namespace gamesmell
