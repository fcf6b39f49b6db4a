#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "procx/tagger.hpp"

namespace procx {

enum class GoalCue { None, GerundOpening, MethodPrefix };
std::string_view to_string(GoalCue cue);

struct GoalAnnotation {
  bool is_goal = false;
  GoalCue cue = GoalCue::None;

  bool operator==(const GoalAnnotation&) const = default;
};

/// Goal cue configuration. File format, one directive per line:
///   gerund_opening:on|off
///   prefix:<word or phrase>
/// '#' starts a comment line.
struct GoalCues {
  bool gerund_opening = true;
  std::vector<std::string> prefixes{"method"};  // lowercased

  static GoalCues load(const std::filesystem::path& path);
  static GoalCues parse(std::string_view text, const std::string& origin = "<cues>");
  static const GoalCues& bundled();
};

/// Only headings can be goals. Leading section numbers ("3.2", "1)") are
/// skipped; a heading whose first word is a gerund, or that starts with a
/// configured prefix, is a goal.
GoalAnnotation annotate_goal(const TaggedSentence& s, bool is_heading, const GoalCues& cues = GoalCues::bundled());

}  // namespace procx
