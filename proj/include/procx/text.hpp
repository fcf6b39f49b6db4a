#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace procx {

/// Splits prose into sentences at `.`, `!` or `?` followed by whitespace and
/// an upper-case letter or digit. Abbreviations ("e.g.", "etc.") and short
/// parenthesized spans never end a sentence. Returned sentences are trimmed.
std::vector<std::string> split_sentences(std::string_view text);

/// Whitespace and punctuation tokenizer. Leading/trailing punctuation is split
/// off; internal punctuation ("v2.1.3", "x.png", "C:\\dir") stays in the word.
/// Negative contractions are split Penn-style: "don't" -> "do" "n't".
/// Concatenating the tokens reproduces the input with whitespace removed.
std::vector<std::string> tokenize(std::string_view sentence);

std::string to_lower(std::string_view s);
std::string trim(std::string_view s);
bool is_punctuation(std::string_view token);
/// True for tokens made of digits and dots/commas ("3", "2.1.5", "1,000"),
/// optionally prefixed with 'v' ("v2.1.3").
bool is_numeric(std::string_view token);

/// Lowercased words of `text` with punctuation tokens removed.
std::vector<std::string> normalized_words(std::string_view text);

}  // namespace procx
