#include "gamesmell/finding.hpp"

#include <algorithm>
#include <tuple>

namespace gamesmell {

namespace {

struct KindInfo {
  std::string_view code;
  std::string_view name;
};

constexpr std::array<KindInfo, kKindCount> kInfo = {{
    {"S1", "Closure smell"},
    {"S2", "Coupling JS/HTML/CSS"},
    {"S3", "Empty catch"},
    {"S4", "Excessive global variables"},
    {"S5", "Large object"},
    {"S6", "Lazy object"},
    {"S7", "Long message chain"},
    {"S8", "Long method/function"},
    {"S9", "Long parameter list"},
    {"S10", "Nested callback"},
    {"S11", "Refused bequest"},
    {"S12", "Switch statement"},
    {"S13", "Unused/dead code"},
    {"P1", "Component Decoupling"},
    {"P2", "Event Queue Decoupling"},
    {"P3", "Data Locality"},
    {"P4", "Object Pool"},
}};

}  // namespace

const std::array<Kind, kKindCount>& all_kinds() {
  static const auto kinds = [] {
    std::array<Kind, kKindCount> out{};
    for (std::size_t i = 0; i < kKindCount; ++i) out[i] = static_cast<Kind>(i);
    return out;
  }();
  return kinds;
}

std::string_view code(Kind k) { return kInfo[index(k)].code; }
std::string_view name(Kind k) { return kInfo[index(k)].name; }

std::optional<Kind> parse_kind(std::string_view text) {
  if (text.size() < 2) return std::nullopt;
  char c = text[0];
  if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  for (std::size_t i = 0; i < kKindCount; ++i) {
    std::string_view want = kInfo[i].code;
    if (want[0] == c && want.substr(1) == text.substr(1)) return static_cast<Kind>(i);
  }
  return std::nullopt;
}

KindSet KindSet::all() {
  KindSet s;
  s.bits_.set();
  return s;
}

std::vector<Kind> KindSet::kinds() const {
  std::vector<Kind> out;
  for (Kind k : all_kinds())
    if (contains(k)) out.push_back(k);
  return out;
}

bool canonical_less(const Finding& a, const Finding& b) {
  auto key = [](const Finding& f) {
    return std::tie(f.path, f.span.start.offset, f.span.start.line, f.span.start.column,
                    f.span.end.offset, f.kind, f.subkind, f.evidence, f.metric, f.threshold, f.rule);
  };
  return key(a) < key(b);
}

void sort_canonical(std::vector<Finding>& findings) {
  std::stable_sort(findings.begin(), findings.end(), canonical_less);
}

std::string clip_evidence(std::string_view text) {
  constexpr std::size_t kMax = 200;
  if (text.size() <= kMax) return std::string(text);
  std::size_t cut = kMax;
  while (cut > 0 && (static_cast<unsigned char>(text[cut]) & 0xC0) == 0x80) --cut;
  return std::string(text.substr(0, cut));
}

}  // namespace gamesmell
