#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "procx/tagger.hpp"

namespace procx {

/// Half-open token range [begin, end).
struct TokenRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end - begin; }
  bool empty() const noexcept { return begin == end; }
  bool operator==(const TokenRange&) const = default;
};

struct ConditionalSplit {
  TokenRange condition;
  TokenRange effect;
  bool effect_imperative = false;
};

enum class Tense { Present, Past, Mixed };
enum class Voice { Active, Passive };
enum class Polarity { Positive, Negative };

std::string_view to_string(Tense t);
std::string_view to_string(Voice v);
std::string_view to_string(Polarity p);

struct Profile {
  Tense tense = Tense::Present;
  Voice voice = Voice::Active;
  Polarity polarity = Polarity::Positive;

  bool operator==(const Profile&) const = default;
};

/// Verb-initial command form. Leading punctuation, adverbs ("Carefully",
/// "Please") and numbers are skipped; the first remaining token must be VB.
bool detect_imperative(const TaggedSentence& s);

/// Finds a condition clause opened by if/when/unless/whenever/"in case".
/// A sentence-initial opener's clause runs to the first comma and the effect
/// is the rest; an opener later in the sentence starts a condition that runs
/// to the end, with everything before it as the effect. The two ranges are
/// disjoint and together cover every token.
std::optional<ConditionalSplit> detect_conditional(const TaggedSentence& s);

/// Tense from main verbs (VBD means past; VBN alone does not), passive voice
/// when a be-form is followed within three tokens by VBN, negative polarity
/// when any negator is present.
Profile profile(const TaggedSentence& s);

/// Text of a token range with leading/trailing punctuation dropped.
std::string span_text(const TaggedSentence& s, TokenRange range);

}  // namespace procx
