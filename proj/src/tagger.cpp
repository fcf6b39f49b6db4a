#include <algorithm>
#include <array>

#include "procx/tagger.hpp"
#include "procx/text.hpp"

namespace procx {

namespace {

constexpr std::array<std::pair<Tag, std::string_view>, 18> kTagNames{{
    {Tag::VB, "VB"},     {Tag::VBD, "VBD"},   {Tag::VBG, "VBG"},   {Tag::VBN, "VBN"},
    {Tag::VBZ, "VBZ"},   {Tag::VBP, "VBP"},   {Tag::MD, "MD"},     {Tag::NOUN, "NOUN"},
    {Tag::PRON, "PRON"}, {Tag::DET, "DET"},   {Tag::ADJ, "ADJ"},   {Tag::ADV, "ADV"},
    {Tag::PREP, "PREP"}, {Tag::CONJ, "CONJ"}, {Tag::NEG, "NEG"},   {Tag::NUM, "NUM"},
    {Tag::PUNCT, "PUNCT"}, {Tag::OTHER, "OTHER"},
}};

bool ends_with_any(std::string_view s, std::initializer_list<std::string_view> suffixes) {
  for (auto suf : suffixes)
    if (s.size() > suf.size() + 2 && s.ends_with(suf)) return true;
  return false;
}

bool resets_clause(const Token& tok) {
  if (tok.tag == Tag::CONJ) return true;
  return tok.tag == Tag::PUNCT && (tok.surface == "," || tok.surface == ";" || tok.surface == ":" ||
                                   tok.surface == "(" || tok.surface == "-" || tok.surface == "\"");
}

/// Left context seen by the verb rules.
struct Context {
  const Token* prev = nullptr;  // previous token, skipping adverbs
  bool clause_start = true;     // nothing but punctuation/adverbs/numbers so far in the clause
  bool verb_seen = false;       // a finite verb already appeared in the clause
  bool aux_before = false;      // be/have form within the last 3 tokens (adverbs/negators skipped)
};

class SentenceTagger {
 public:
  SentenceTagger(const Lexicon& lex, std::vector<std::string>& surfaces) : lex_(lex), surfaces_(surfaces) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    out.reserve(surfaces_.size());
    for (std::size_t i = 0; i < surfaces_.size(); ++i) {
      Context ctx = context(out);
      Token tok{surfaces_[i], tag_one(i, ctx)};
      out.push_back(std::move(tok));
    }
    return out;
  }

 private:
  Context context(const std::vector<Token>& done) const {
    Context ctx;
    for (auto it = done.rbegin(); it != done.rend(); ++it) {
      if (resets_clause(*it)) break;
      if (it->tag != Tag::PUNCT && it->tag != Tag::ADV && it->tag != Tag::NUM) ctx.clause_start = false;
      if (is_main_verb(it->tag) || it->tag == Tag::MD) ctx.verb_seen = true;
    }
    for (auto it = done.rbegin(); it != done.rend(); ++it) {
      if (it->tag == Tag::ADV) continue;
      ctx.prev = &*it;
      break;
    }
    int seen = 0;
    for (auto it = done.rbegin(); it != done.rend() && seen < 3; ++it) {
      if (it->tag == Tag::ADV || it->tag == Tag::NEG) continue;
      ++seen;
      const std::string lower = to_lower(it->surface);
      if (lex_.is_be_form(lower) || lex_.is_have_form(lower)) {
        ctx.aux_before = true;
        break;
      }
    }
    return ctx;
  }

  std::string next_lower(std::size_t i) const {
    return i + 1 < surfaces_.size() ? to_lower(surfaces_[i + 1]) : std::string{};
  }

  Tag tag_one(std::size_t i, const Context& ctx) const {
    const std::string& surface = surfaces_[i];
    if (is_punctuation(surface)) return Tag::PUNCT;
    if (is_numeric(surface)) return Tag::NUM;
    const std::string lower = to_lower(surface);
    if (auto closed = lex_.closed_class(lower)) return *closed;
    if (const VerbEntry* v = lex_.verb(lower)) return tag_verb(i, *v, ctx);
    return tag_by_suffix(lower, ctx);
  }

  Tag prev_tag(const Context& ctx) const { return ctx.prev ? ctx.prev->tag : Tag::PUNCT; }

  Tag tag_verb(std::size_t i, const VerbEntry& v, const Context& ctx) const {
    const Tag prev = prev_tag(ctx);
    // Auxiliaries carry their tag in the form itself.
    if (v.lemma == "be" || ((v.lemma == "have" || v.lemma == "do") && !(v.forms & kBase))) {
      if (v.forms & kGerund) return Tag::VBG;
      if (v.forms & kBase) return Tag::VB;
      if (v.forms & kThird) return Tag::VBZ;
      if (v.forms & kPast) return Tag::VBD;
      return Tag::VBN;
    }
    if (v.forms & kGerund) return prev == Tag::DET ? Tag::ADJ : Tag::VBG;
    if ((v.forms & kParticiple) && ctx.aux_before) return Tag::VBN;
    if (v.forms & kBase) {
      if (prev == Tag::MD || prev == Tag::NEG) return Tag::VB;
      if (ctx.prev && to_lower(ctx.prev->surface) == "to") return Tag::VB;
      if (ctx.clause_start) {
        const std::string next = next_lower(i);
        if (next == ":" || lex_.is_be_form(next) || lex_.closed_class(next) == Tag::MD) return Tag::NOUN;
        // "Step 3" / "Step 3:" labels, but not "Repeat 3 times"
        if (i + 1 < surfaces_.size() && is_numeric(surfaces_[i + 1]) &&
            (i + 2 >= surfaces_.size() || is_punctuation(surfaces_[i + 2])))
          return Tag::NOUN;
        return Tag::VB;
      }
      if (prev == Tag::PRON) return Tag::VBP;
      if (prev == Tag::NOUN && !ctx.verb_seen) return Tag::VBP;
      if (prev == Tag::DET || prev == Tag::ADJ || prev == Tag::PREP || prev == Tag::NUM || is_verb(prev))
        return Tag::NOUN;
      if (!(v.forms & (kPast | kParticiple))) return Tag::NOUN;
    }
    if (v.forms & kThird) {
      if ((prev == Tag::NOUN || prev == Tag::PRON) && !ctx.verb_seen) return Tag::VBZ;
      return Tag::NOUN;
    }
    return tag_past(v.forms, ctx);
  }

  Tag tag_past(std::uint8_t forms, const Context& ctx) const {
    const Tag prev = prev_tag(ctx);
    const bool past = forms & kPast;
    const bool participle = forms & kParticiple;
    if (participle && ctx.aux_before) return Tag::VBN;
    if (prev == Tag::DET || prev == Tag::ADJ) return Tag::ADJ;
    if (participle && (ctx.verb_seen || !past)) return Tag::VBN;
    return Tag::VBD;
  }

  Tag tag_by_suffix(const std::string& lower, const Context& ctx) const {
    if (ends_with_any(lower, {"ing"})) return prev_tag(ctx) == Tag::DET ? Tag::ADJ : Tag::VBG;
    if (ends_with_any(lower, {"ed"})) return tag_past(kPast | kParticiple, ctx);
    if (ends_with_any(lower, {"tion", "ment", "ness", "ity", "ance", "ence", "sion"})) return Tag::NOUN;
    if (ends_with_any(lower, {"ly"})) return Tag::ADV;
    if (ends_with_any(lower, {"able", "ible", "ous", "ful", "ive"})) return Tag::ADJ;
    return Tag::NOUN;
  }

  const Lexicon& lex_;
  std::vector<std::string>& surfaces_;
};

}  // namespace

std::string_view to_string(Tag tag) {
  for (const auto& [t, name] : kTagNames)
    if (t == tag) return name;
  return "OTHER";
}

std::optional<Tag> tag_from_string(std::string_view name) {
  for (const auto& [t, n] : kTagNames)
    if (n == name) return t;
  return std::nullopt;
}

TaggedSentence TaggedSentence::slice(std::size_t begin, std::size_t end) const {
  TaggedSentence out;
  end = std::min(end, tokens.size());
  for (std::size_t i = begin; i < end; ++i) {
    if (!out.text.empty() && tokens[i].tag != Tag::PUNCT) out.text.push_back(' ');
    out.text += tokens[i].surface;
    out.tokens.push_back(tokens[i]);
  }
  return out;
}

TaggedSentence RuleTagger::tag(std::string text, std::vector<std::string> tokens) const {
  SentenceTagger tagger(*lexicon_, tokens);
  return TaggedSentence{std::move(text), tagger.run()};
}

const Tagger& default_tagger() {
  static const RuleTagger tagger(Lexicon::bundled());
  return tagger;
}

TaggedSentence pos_tag(const std::vector<std::string>& tokens) {
  std::string text;
  for (const auto& t : tokens) {
    if (!text.empty()) text.push_back(' ');
    text += t;
  }
  return default_tagger().tag(std::move(text), tokens);
}

TaggedSentence tag_sentence(std::string_view sentence, const Tagger& tagger) {
  return tagger.tag(std::string(sentence), tokenize(sentence));
}

TaggedSentence tag_sentence(std::string_view sentence) {
  return tag_sentence(sentence, default_tagger());
}

}  // namespace procx
