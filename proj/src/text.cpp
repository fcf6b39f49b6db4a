#include "procx/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace procx {

namespace {

constexpr std::size_t kMaxProtectedParen = 40;

constexpr std::array<std::string_view, 18> kAbbreviations{
    "e.g", "i.e", "etc", "vs", "fig", "figs", "no", "approx", "incl", "mr",
    "mrs", "dr", "ms", "cf", "al", "ver", "resp", "min"};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ascii_punct(char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; }

bool is_abbreviation(std::string_view text, std::size_t period) {
  std::size_t start = period;
  while (start > 0 && !is_space(text[start - 1]) && text[start - 1] != '(') --start;
  std::string word = to_lower(text.substr(start, period - start));
  if (word.empty()) return false;
  if (word.size() == 1 && std::isalpha(static_cast<unsigned char>(word[0]))) return true;
  return std::find(kAbbreviations.begin(), kAbbreviations.end(), word) != kAbbreviations.end();
}

/// Marks characters inside balanced parentheses whose span is short.
std::vector<bool> protected_spans(std::string_view text) {
  std::vector<bool> prot(text.size(), false);
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '(') continue;
    int depth = 0;
    for (std::size_t j = i; j < text.size() && j - i <= kMaxProtectedParen; ++j) {
      if (text[j] == '(') ++depth;
      if (text[j] == ')' && --depth == 0) {
        std::fill(prot.begin() + static_cast<long>(i), prot.begin() + static_cast<long>(j) + 1, true);
        break;
      }
    }
  }
  return prot;
}

/// "e.g." / "i.e." style: two or more single letters each followed by '.'.
bool is_dotted_initials(std::string_view word) {
  if (word.size() < 4 || word.size() % 2 != 0) return false;
  for (std::size_t k = 0; k < word.size(); k += 2)
    if (!std::isalpha(static_cast<unsigned char>(word[k])) || word[k + 1] != '.') return false;
  return true;
}

constexpr std::string_view kLeadingPunct = "([{\"'`<";
constexpr std::string_view kTrailingPunct = ".,;:!?)]}\"'`>";

}  // namespace

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (is_upper(c)) c = static_cast<char>(c - 'A' + 'a');
  return out;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

bool is_punctuation(std::string_view token) {
  return !token.empty() && std::all_of(token.begin(), token.end(), is_ascii_punct);
}

bool is_numeric(std::string_view token) {
  if (token.empty()) return false;
  std::size_t i = (token[0] == 'v' || token[0] == 'V') && token.size() > 1 ? 1 : 0;
  if (!is_digit(token[i])) return false;
  for (; i < token.size(); ++i)
    if (!is_digit(token[i]) && token[i] != '.' && token[i] != ',') return false;
  return true;
}

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  const auto prot = protected_spans(text);
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if ((c != '.' && c != '!' && c != '?') || prot[i]) continue;
    std::size_t end = i + 1;
    while (end < text.size() && (text[end] == '"' || text[end] == '\'' || text[end] == ')' ||
                                 text[end] == ']'))
      ++end;
    std::size_t next = end;
    while (next < text.size() && is_space(text[next])) ++next;
    if (next == end || next >= text.size()) continue;
    char lead = text[next];
    if ((lead == '"' || lead == '\'' || lead == '(') && next + 1 < text.size()) lead = text[next + 1];
    if (!is_upper(lead) && !is_digit(lead)) continue;
    if (c == '.' && is_abbreviation(text, i)) continue;
    std::string sentence = trim(text.substr(start, end - start));
    if (!sentence.empty()) out.push_back(std::move(sentence));
    start = next;
    i = next - 1;
  }
  std::string tail = trim(text.substr(std::min(start, text.size())));
  if (!tail.empty()) out.push_back(std::move(tail));
  return out;
}

std::vector<std::string> tokenize(std::string_view sentence) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < sentence.size()) {
    while (i < sentence.size() && is_space(sentence[i])) ++i;
    std::size_t j = i;
    while (j < sentence.size() && !is_space(sentence[j])) ++j;
    std::string_view word = sentence.substr(i, j - i);
    i = j;
    if (word.empty()) continue;

    while (word.size() > 1 && kLeadingPunct.find(word.front()) != std::string_view::npos) {
      tokens.emplace_back(1, word.front());
      word.remove_prefix(1);
    }
    std::vector<std::string> trailing;
    while (word.size() > 1 && kTrailingPunct.find(word.back()) != std::string_view::npos) {
      // Keep the final period of dotted abbreviations ("e.g.").
      if (word.back() == '.' && is_dotted_initials(word)) break;
      trailing.emplace_back(1, word.back());
      word.remove_suffix(1);
    }
    const std::string lower = to_lower(word);
    if (lower.size() > 3 && lower.ends_with("n't")) {
      tokens.emplace_back(word.substr(0, word.size() - 3));
      tokens.emplace_back(word.substr(word.size() - 3));
    } else {
      tokens.emplace_back(word);
    }
    tokens.insert(tokens.end(), trailing.rbegin(), trailing.rend());
  }
  return tokens;
}

std::vector<std::string> normalized_words(std::string_view text) {
  std::vector<std::string> words;
  for (const auto& tok : tokenize(text)) {
    if (is_punctuation(tok)) continue;
    words.push_back(to_lower(tok));
  }
  return words;
}

}  // namespace procx
