#include "procx/markdown.hpp"

#include <optional>
#include <regex>
#include <vector>

namespace procx {

namespace {

constexpr int kIndentUnit = 2;

struct HeadingLine {
  int level;
  std::string text;
};

struct ItemLine {
  int indent;
  bool ordered;
  std::string text;
};

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string collapse_spaces(std::string_view s) {
  std::string out;
  bool space = false;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      space = !out.empty();
      continue;
    }
    if (space) out.push_back(' ');
    space = false;
    out.push_back(c);
  }
  return out;
}

int leading_spaces(std::string_view line) {
  int n = 0;
  while (static_cast<std::size_t>(n) < line.size() && line[static_cast<std::size_t>(n)] == ' ') ++n;
  return n;
}

std::optional<HeadingLine> match_heading(std::string_view line) {
  int indent = leading_spaces(line);
  if (indent > 3) return std::nullopt;
  std::size_t i = static_cast<std::size_t>(indent);
  int level = 0;
  while (i < line.size() && line[i] == '#') {
    ++level;
    ++i;
  }
  if (level < 1 || level > 6) return std::nullopt;
  if (i < line.size() && line[i] != ' ') return std::nullopt;
  std::string text = trim(line.substr(i));
  // Optional closing sequence of '#'.
  auto last = text.find_last_not_of('#');
  if (last == std::string::npos) {
    text.clear();
  } else if (last + 1 < text.size() && text[last] == ' ') {
    text = trim(text.substr(0, last));
  }
  return HeadingLine{level, std::move(text)};
}

std::optional<ItemLine> match_item(std::string_view line) {
  int indent = leading_spaces(line);
  std::size_t i = static_cast<std::size_t>(indent);
  if (i >= line.size()) return std::nullopt;
  bool ordered = false;
  if (line[i] == '-' || line[i] == '*' || line[i] == '+') {
    ++i;
  } else {
    std::size_t digits = 0;
    while (i < line.size() && line[i] >= '0' && line[i] <= '9' && digits < 9) {
      ++i;
      ++digits;
    }
    if (digits == 0 || i >= line.size() || (line[i] != '.' && line[i] != ')')) return std::nullopt;
    ++i;
    ordered = true;
  }
  if (i < line.size() && line[i] != ' ') return std::nullopt;
  return ItemLine{indent, ordered, trim(line.substr(i))};
}

const std::regex& image_pattern() {
  static const std::regex re(R"(!\[[^\]]*\]\([^)]*\))");
  return re;
}

/// Removes image syntax; returns true when any was present.
bool strip_images(std::string& text) {
  if (text.find("![") == std::string::npos) return false;
  std::string stripped = std::regex_replace(text, image_pattern(), " ");
  bool found = stripped != text;
  text = collapse_spaces(stripped);
  return found;
}

struct OpenList {
  NodeId block;
  bool ordered;
  NodeId last_item = kNoNode;
};

class MarkdownReader {
 public:
  MarkdownReader(std::string title, std::string source) : builder_(std::move(title), std::move(source)) {
    outline_.emplace_back(0, builder_.root());
  }

  void heading(HeadingLine h) {
    flush_paragraph();
    lists_.clear();
    DocNode node;
    node.kind = NodeKind::Heading;
    node.level = h.level;
    node.associated_image = strip_images(h.text);
    node.text = std::move(h.text);
    while (outline_.back().first >= node.level) outline_.pop_back();
    NodeId id = builder_.add(container(), std::move(node));
    outline_.emplace_back(h.level, id);
  }

  void item(ItemLine item) {
    flush_paragraph();
    std::size_t level = static_cast<std::size_t>(item.indent / kIndentUnit);
    if (level > lists_.size()) level = lists_.size();
    if (lists_.empty()) level = 0;
    while (lists_.size() > level + 1) lists_.pop_back();
    if (lists_.size() == level + 1 && level == 0 && lists_.back().ordered != item.ordered)
      lists_.pop_back();
    if (lists_.size() == level) {
      NodeId parent = level == 0 ? container() : lists_.back().last_item;
      DocNode block;
      block.kind = NodeKind::ListBlock;
      block.ordered = item.ordered;
      lists_.push_back({builder_.add(parent, std::move(block)), item.ordered});
    }
    DocNode node;
    node.kind = NodeKind::ListItem;
    node.associated_image = strip_images(item.text);
    node.text = collapse_spaces(item.text);
    lists_.back().last_item = builder_.add(lists_.back().block, std::move(node));
  }

  void text(std::string_view raw, bool after_blank) {
    if (!lists_.empty()) {
      int indent = leading_spaces(raw);
      if (!after_blank) {
        append_to_item(lists_.back().last_item, raw);
        return;
      }
      if (indent >= kIndentUnit) {
        std::size_t level = static_cast<std::size_t>(indent / kIndentUnit) - 1;
        if (level >= lists_.size()) level = lists_.size() - 1;
        while (lists_.size() > level + 1) lists_.pop_back();
        append_to_item(lists_.back().last_item, raw);
        return;
      }
      lists_.clear();
    }
    if (!paragraph_.empty()) paragraph_.push_back(' ');
    paragraph_ += trim(raw);
  }

  void blank() { flush_paragraph(); }

  DocTree finish() && {
    flush_paragraph();
    return std::move(builder_).build();
  }

 private:
  NodeId container() const { return outline_.back().second; }

  void append_to_item(NodeId item, std::string_view raw) {
    std::string extra = trim(raw);
    DocNode& node = builder_.at(item);
    if (strip_images(extra)) node.associated_image = true;
    if (extra.empty()) return;
    if (!node.text.empty()) node.text.push_back(' ');
    node.text += extra;
  }

  void flush_paragraph() {
    if (paragraph_.empty()) return;
    std::string text = std::move(paragraph_);
    paragraph_.clear();
    bool image = strip_images(text);
    text = collapse_spaces(text);
    if (text.empty()) {
      if (!image) return;
      // Standalone figure: attach to the preceding sibling, else the container.
      const auto& siblings = builder_.at(container()).children;
      NodeId target = siblings.empty() ? container() : siblings.back();
      builder_.at(target).associated_image = true;
      return;
    }
    DocNode node;
    node.kind = NodeKind::Paragraph;
    node.text = std::move(text);
    node.associated_image = image;
    builder_.add(container(), std::move(node));
  }

  TreeBuilder builder_;
  std::vector<std::pair<int, NodeId>> outline_;
  std::vector<OpenList> lists_;
  std::string paragraph_;
};

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(std::move(cur));
      cur.clear();
    } else if (c == '\t') {
      cur.append(kIndentUnit, ' ');
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) lines.push_back(std::move(cur));
  return lines;
}

bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

}  // namespace

DocTree parse_markdown(std::string_view text, std::string source_name) {
  const auto lines = split_lines(text);

  std::optional<std::size_t> title_line;
  std::string title = source_name;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (auto h = match_heading(lines[i]); h && h->level == 1) {
      title_line = i;
      strip_images(h->text);
      title = collapse_spaces(h->text);
      break;
    }
  }

  MarkdownReader reader(std::move(title), std::move(source_name));
  bool after_blank = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (is_blank(line)) {
      reader.blank();
      after_blank = true;
      continue;
    }
    if (auto h = match_heading(line)) {
      if (title_line && *title_line == i) {
        reader.blank();
      } else {
        reader.heading(std::move(*h));
      }
    } else if (auto item = match_item(line)) {
      reader.item(std::move(*item));
    } else {
      reader.text(line, after_blank);
    }
    after_blank = false;
  }
  return std::move(reader).finish();
}

}  // namespace procx
