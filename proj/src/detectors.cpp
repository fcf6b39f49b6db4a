#include "procx/detectors.hpp"

#include <string>

#include "procx/text.hpp"

namespace procx {

namespace {

bool skippable(Tag t) { return t == Tag::PUNCT || t == Tag::ADV || t == Tag::NUM; }

std::size_t first_content(const TaggedSentence& s) {
  std::size_t i = 0;
  while (i < s.tokens.size() && skippable(s.tokens[i].tag)) ++i;
  return i;
}

bool is_be(std::string_view surface) {
  const std::string lower = to_lower(surface);
  return lower == "be" || lower == "is" || lower == "are" || lower == "am" || lower == "was" ||
         lower == "were" || lower == "been" || lower == "being" || lower == "'re" || lower == "'m";
}

/// Length of the opener starting at `i` (0 when none).
std::size_t opener_length(const TaggedSentence& s, std::size_t i) {
  const std::string w = to_lower(s.tokens[i].surface);
  if (w == "if" || w == "when" || w == "unless" || w == "whenever") return 1;
  if (w == "in" && i + 1 < s.tokens.size() && to_lower(s.tokens[i + 1].surface) == "case") return 2;
  return 0;
}

}  // namespace

std::string_view to_string(Tense t) {
  switch (t) {
    case Tense::Present: return "present";
    case Tense::Past: return "past";
    case Tense::Mixed: return "mixed";
  }
  return "present";
}

std::string_view to_string(Voice v) { return v == Voice::Active ? "active" : "passive"; }
std::string_view to_string(Polarity p) { return p == Polarity::Positive ? "positive" : "negative"; }

bool detect_imperative(const TaggedSentence& s) {
  const std::size_t i = first_content(s);
  return i < s.tokens.size() && s.tokens[i].tag == Tag::VB;
}

std::optional<ConditionalSplit> detect_conditional(const TaggedSentence& s) {
  const std::size_t n = s.tokens.size();
  const std::size_t lead = first_content(s);
  for (std::size_t k = 0; k < n; ++k) {
    if (opener_length(s, k) == 0) continue;
    // "the when clause", "in the if branch": not clause openers.
    if (k > 0 && (s.tokens[k - 1].tag == Tag::DET || s.tokens[k - 1].tag == Tag::PREP)) continue;
    ConditionalSplit split;
    if (k == lead) {
      std::size_t comma = k;
      while (comma < n && s.tokens[comma].surface != ",") ++comma;
      split.condition = {0, comma};
      split.effect = {comma, n};
    } else {
      split.effect = {0, k};
      split.condition = {k, n};
    }
    split.effect_imperative =
        !split.effect.empty() && detect_imperative(s.slice(split.effect.begin, split.effect.end));
    return split;
  }
  return std::nullopt;
}

Profile profile(const TaggedSentence& s) {
  Profile p;
  bool past = false;
  bool present = false;
  for (std::size_t i = 0; i < s.tokens.size(); ++i) {
    const Token& t = s.tokens[i];
    if (t.tag == Tag::VBD) past = true;
    if (t.tag == Tag::VB || t.tag == Tag::VBZ || t.tag == Tag::VBP) present = true;
    if (t.tag == Tag::NEG) p.polarity = Polarity::Negative;
    if (is_be(t.surface)) {
      for (std::size_t j = i + 1; j < s.tokens.size() && j <= i + 3; ++j)
        if (s.tokens[j].tag == Tag::VBN) p.voice = Voice::Passive;
    }
  }
  if (past) p.tense = present ? Tense::Mixed : Tense::Past;
  return p;
}

std::string span_text(const TaggedSentence& s, TokenRange range) {
  std::size_t b = range.begin, e = std::min(range.end, s.tokens.size());
  while (b < e && s.tokens[b].tag == Tag::PUNCT) ++b;
  while (e > b && s.tokens[e - 1].tag == Tag::PUNCT) --e;
  return s.slice(b, e).text;
}

}  // namespace procx
