#include "procx/analysis.hpp"

#include "procx/text.hpp"

namespace procx {

SentenceAnnotation Annotator::annotate_sentence(std::string_view text, bool is_heading) const {
  SentenceAnnotation a;
  a.sentence = tag_sentence(text, *tagger_);
  a.imperative = detect_imperative(a.sentence);
  a.conditional = detect_conditional(a.sentence);
  a.profile = profile(a.sentence);
  a.goal = annotate_goal(a.sentence, is_heading, *cues_);
  if (model_ && !a.imperative && !a.sentence.tokens.empty()) {
    const auto p = predict(*model_, a.sentence, a.profile);
    a.nonimperative_actionable = p.actionable;
    a.actionable_margin = p.margin;
  }
  if (a.conditional) {
    a.effect_actionable = a.conditional->effect_imperative;
    if (!a.effect_actionable && model_ && !a.conditional->effect.empty()) {
      const TaggedSentence effect = a.sentence.slice(a.conditional->effect.begin, a.conditional->effect.end);
      a.effect_actionable = predict(*model_, effect, profile(effect)).actionable;
    }
  }
  a.actionable = a.imperative || a.nonimperative_actionable || a.goal.cue == GoalCue::GerundOpening ||
                 (a.conditional && a.effect_actionable);
  return a;
}

NodeAnnotation Annotator::annotate_node(const DocNode& node) const {
  NodeAnnotation out;
  switch (node.kind) {
    case NodeKind::Heading:
      if (!trim(node.text).empty()) out.sentences.push_back(annotate_sentence(trim(node.text), true));
      break;
    case NodeKind::Paragraph:
    case NodeKind::ListItem:
      for (const auto& s : split_sentences(node.text)) out.sentences.push_back(annotate_sentence(s, false));
      break;
    default:
      break;
  }
  return out;
}

std::vector<NodeAnnotation> Annotator::annotate_tree(const DocTree& tree) const {
  std::vector<NodeAnnotation> notes;
  notes.reserve(tree.size());
  for (const auto& n : tree.nodes()) notes.push_back(annotate_node(n));
  return notes;
}

namespace {

Unit unit_of(NodeId node, const SentenceAnnotation* begin, const SentenceAnnotation* end) {
  Unit u;
  u.node = node;
  for (auto it = begin; it != end; ++it) {
    u.imperative |= it->imperative;
    u.conditional |= it->conditional.has_value();
    u.effect_actionable |= it->conditional && it->effect_actionable;
    u.nonimperative_actionable |= it->nonimperative_actionable;
    u.goal |= it->goal.is_goal;
    u.actionable |= it->actionable;
  }
  return u;
}

}  // namespace

std::vector<Unit> chunk_units(const Chunk& chunk, const DocTree& tree, const std::vector<NodeAnnotation>& notes) {
  std::vector<Unit> units;
  for (NodeId item : chunk.items) {
    const DocNode& n = tree.node(item);
    const auto& sentences = notes.at(static_cast<std::size_t>(item)).sentences;
    const SentenceAnnotation* first = sentences.data();
    if (chunk.kind == ChunkKind::ParagraphGroup && !sentences.empty()) {
      for (std::size_t k = 0; k < sentences.size(); ++k) units.push_back(unit_of(item, first + k, first + k + 1));
    } else {
      units.push_back(unit_of(item, first, first + sentences.size()));
    }
    if (n.associated_image) units.back().image = true;
  }
  return units;
}

std::vector<TaggedSentence> chunk_sentences(const Chunk& chunk, const std::vector<NodeAnnotation>& notes) {
  std::vector<TaggedSentence> out;
  for (NodeId item : chunk.items)
    for (const auto& s : notes.at(static_cast<std::size_t>(item)).sentences) out.push_back(s.sentence);
  return out;
}

}  // namespace procx
