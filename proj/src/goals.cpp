#include "procx/goals.hpp"

#include <fstream>
#include <sstream>

#include "procx/error.hpp"
#include "procx/text.hpp"

namespace procx {

std::string_view to_string(GoalCue cue) {
  switch (cue) {
    case GoalCue::GerundOpening: return "gerund_opening";
    case GoalCue::MethodPrefix: return "prefix";
    case GoalCue::None: return "none";
  }
  return "none";
}

GoalCues GoalCues::parse(std::string_view text, const std::string& origin) {
  GoalCues cues;
  cues.gerund_opening = false;
  cues.prefixes.clear();
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw Error(origin + ":" + std::to_string(lineno) + ": expected key:value");
    const std::string key = trim(std::string_view(line).substr(0, colon));
    const std::string value = trim(std::string_view(line).substr(colon + 1));
    if (key == "gerund_opening") {
      if (value != "on" && value != "off")
        throw Error(origin + ":" + std::to_string(lineno) + ": gerund_opening takes on or off");
      cues.gerund_opening = value == "on";
    } else if (key == "prefix") {
      if (value.empty()) throw Error(origin + ":" + std::to_string(lineno) + ": empty prefix");
      cues.prefixes.push_back(to_lower(value));
    } else {
      throw Error(origin + ":" + std::to_string(lineno) + ": unknown cue '" + key + "'");
    }
  }
  return cues;
}

GoalCues GoalCues::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read cue file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.string());
}

const GoalCues& GoalCues::bundled() {
  static const GoalCues cues = load(std::filesystem::path(PROCX_DATA_DIR) / "goal_cues.txt");
  return cues;
}

GoalAnnotation annotate_goal(const TaggedSentence& s, bool is_heading, const GoalCues& cues) {
  if (!is_heading) return {};
  std::size_t first = 0;
  while (first < s.tokens.size() && (s.tokens[first].tag == Tag::NUM || s.tokens[first].tag == Tag::PUNCT)) ++first;
  if (first == s.tokens.size()) return {};

  for (const auto& prefix : cues.prefixes) {
    const auto words = tokenize(prefix);
    if (words.empty() || first + words.size() > s.tokens.size()) continue;
    bool match = true;
    for (std::size_t k = 0; k < words.size() && match; ++k)
      match = to_lower(s.tokens[first + k].surface) == words[k];
    if (match) return {true, GoalCue::MethodPrefix};
  }
  if (cues.gerund_opening && s.tokens[first].tag == Tag::VBG) return {true, GoalCue::GerundOpening};
  return {};
}

}  // namespace procx
