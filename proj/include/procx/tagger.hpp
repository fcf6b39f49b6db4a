#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace procx {

enum class Tag : std::uint8_t {
  VB,   // base form
  VBD,  // past
  VBG,  // gerund / present participle
  VBN,  // past participle
  VBZ,  // 3rd person singular present
  VBP,  // non-3rd person present
  MD,
  NOUN,
  PRON,
  DET,
  ADJ,
  ADV,
  PREP,
  CONJ,
  NEG,
  NUM,
  PUNCT,
  OTHER,
};

std::string_view to_string(Tag tag);
std::optional<Tag> tag_from_string(std::string_view name);

/// Verb forms for finite/main-verb checks.
constexpr bool is_main_verb(Tag t) {
  return t == Tag::VB || t == Tag::VBZ || t == Tag::VBP || t == Tag::VBD;
}
constexpr bool is_verb(Tag t) {
  return is_main_verb(t) || t == Tag::VBG || t == Tag::VBN;
}

struct Token {
  std::string surface;
  Tag tag = Tag::OTHER;
};

struct TaggedSentence {
  std::string text;
  std::vector<Token> tokens;

  std::size_t size() const noexcept { return tokens.size(); }
  /// Sub-sentence over tokens [begin, end), text rebuilt with single spaces.
  TaggedSentence slice(std::size_t begin, std::size_t end) const;
};

enum VerbForm : std::uint8_t {
  kBase = 1u << 0,
  kThird = 1u << 1,
  kPast = 1u << 2,
  kParticiple = 1u << 3,
  kGerund = 1u << 4,
};

struct VerbEntry {
  std::string lemma;
  std::uint8_t forms = 0;
};

/// Word lists behind the rule tagger. Files are line oriented UTF-8:
/// `verbs.txt` holds `base,third,past,participle,gerund`; `forms.txt` holds
/// `surface,TAG` overrides; the other files hold one word per line.
/// Lines starting with '#' are comments.
class Lexicon {
 public:
  static Lexicon load(const std::filesystem::path& dir);
  /// The lexicon shipped in the data directory, loaded once.
  static const Lexicon& bundled();
  static std::filesystem::path bundled_dir();

  std::optional<Tag> closed_class(std::string_view lower) const;
  const VerbEntry* verb(std::string_view lower) const;
  bool is_be_form(std::string_view lower) const;
  bool is_have_form(std::string_view lower) const;
  std::size_t verb_count() const noexcept { return verb_count_; }

  void add_closed(std::string word, Tag tag) { closed_[std::move(word)] = tag; }
  void add_verb(const std::string& base, const std::string& third, const std::string& past,
                const std::string& participle, const std::string& gerund);

 private:
  std::unordered_map<std::string, Tag> closed_;
  std::unordered_map<std::string, VerbEntry> verbs_;
  std::size_t verb_count_ = 0;
};

/// Tagger interface; the rule tagger below is the default implementation.
class Tagger {
 public:
  virtual ~Tagger() = default;
  virtual TaggedSentence tag(std::string text, std::vector<std::string> tokens) const = 0;
};

/// Deterministic tagger: closed-class lexicon, then the verb table with a
/// little left context (determiner/preposition before a base form makes it a
/// noun, a be/have form before a participle makes it VBN), then suffix rules,
/// then NOUN.
class RuleTagger final : public Tagger {
 public:
  explicit RuleTagger(const Lexicon& lexicon) : lexicon_(&lexicon) {}
  TaggedSentence tag(std::string text, std::vector<std::string> tokens) const override;

 private:
  const Lexicon* lexicon_;
};

/// Tags pre-split tokens with the bundled lexicon.
TaggedSentence pos_tag(const std::vector<std::string>& tokens);
/// Tokenizes and tags one sentence.
TaggedSentence tag_sentence(std::string_view sentence, const Tagger& tagger);
TaggedSentence tag_sentence(std::string_view sentence);

/// Process-wide default tagger over the bundled lexicon.
const Tagger& default_tagger();

}  // namespace procx
