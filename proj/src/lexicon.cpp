#include <array>
#include <fstream>

#include "procx/error.hpp"
#include "procx/tagger.hpp"
#include "procx/text.hpp"

namespace procx {

namespace {

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read lexicon file '" + path.string() + "'");
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    lines.push_back(std::move(line));
  }
  return lines;
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(trim(cur));
  return out;
}

constexpr std::array<std::pair<const char*, Tag>, 9> kClosedFiles{{
    {"determiners.txt", Tag::DET},
    {"pronouns.txt", Tag::PRON},
    {"prepositions.txt", Tag::PREP},
    {"modals.txt", Tag::MD},
    {"negators.txt", Tag::NEG},
    {"conjunctions.txt", Tag::CONJ},
    {"adverbs.txt", Tag::ADV},
    {"adjectives.txt", Tag::ADJ},
    {"nouns.txt", Tag::NOUN},
}};

}  // namespace

void Lexicon::add_verb(const std::string& base, const std::string& third, const std::string& past,
                       const std::string& participle, const std::string& gerund) {
  auto add = [&](const std::string& surface, VerbForm form) {
    auto& entry = verbs_[to_lower(surface)];
    if (entry.lemma.empty()) entry.lemma = to_lower(base);
    if (entry.lemma == to_lower(base)) entry.forms |= form;
  };
  add(base, kBase);
  add(third, kThird);
  add(past, kPast);
  add(participle, kParticiple);
  add(gerund, kGerund);
  ++verb_count_;
}

Lexicon Lexicon::load(const std::filesystem::path& dir) {
  Lexicon lex;
  for (const auto& [file, tag] : kClosedFiles) {
    auto path = dir / file;
    if (tag == Tag::NOUN && !std::filesystem::exists(path)) continue;
    for (auto& word : read_lines(path)) lex.closed_[to_lower(word)] = tag;
  }
  for (const auto& line : read_lines(dir / "verbs.txt")) {
    auto cols = split_commas(line);
    if (cols.size() != 5) throw IoError("verbs.txt: expected 5 columns in '" + line + "'");
    lex.add_verb(cols[0], cols[1], cols[2], cols[3], cols[4]);
  }
  if (std::filesystem::exists(dir / "forms.txt")) {
    for (const auto& line : read_lines(dir / "forms.txt")) {
      auto cols = split_commas(line);
      auto tag = cols.size() == 2 ? tag_from_string(cols[1]) : std::nullopt;
      if (!tag) throw IoError("forms.txt: expected 'surface,TAG' in '" + line + "'");
      lex.closed_[to_lower(cols[0])] = *tag;
    }
  }
  return lex;
}

std::filesystem::path Lexicon::bundled_dir() {
  return std::filesystem::path(PROCX_DATA_DIR) / "lexicon";
}

const Lexicon& Lexicon::bundled() {
  static const Lexicon lex = load(bundled_dir());
  return lex;
}

std::optional<Tag> Lexicon::closed_class(std::string_view lower) const {
  auto it = closed_.find(std::string(lower));
  if (it == closed_.end()) return std::nullopt;
  return it->second;
}

const VerbEntry* Lexicon::verb(std::string_view lower) const {
  auto it = verbs_.find(std::string(lower));
  return it == verbs_.end() ? nullptr : &it->second;
}

bool Lexicon::is_be_form(std::string_view lower) const {
  if (lower == "are" || lower == "am" || lower == "were" || lower == "'re" || lower == "'m") return true;
  const VerbEntry* v = verb(lower);
  return v && v->lemma == "be";
}

bool Lexicon::is_have_form(std::string_view lower) const {
  if (lower == "'ve") return true;
  const VerbEntry* v = verb(lower);
  return v && v->lemma == "have";
}

}  // namespace procx
