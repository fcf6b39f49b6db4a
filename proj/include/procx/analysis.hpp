#pragma once

#include <optional>
#include <vector>

#include "procx/actionable.hpp"
#include "procx/chunker.hpp"
#include "procx/detectors.hpp"
#include "procx/doc_tree.hpp"
#include "procx/goals.hpp"
#include "procx/tagger.hpp"

namespace procx {

/// Everything lingua, actionable and goals say about one sentence.
struct SentenceAnnotation {
  TaggedSentence sentence;
  bool imperative = false;
  std::optional<ConditionalSplit> conditional;
  bool effect_actionable = false;  // conditional only: imperative or model-actionable effect
  Profile profile;
  bool nonimperative_actionable = false;
  double actionable_margin = 0.0;
  GoalAnnotation goal;
  /// Imperative, model-actionable, gerund goal, or conditional with an
  /// actionable effect.
  bool actionable = false;
};

struct NodeAnnotation {
  std::vector<SentenceAnnotation> sentences;
};

/// The unit a chunk's fractions count: a list item or heading (sentences
/// OR-aggregated), or one paragraph sentence.
struct Unit {
  NodeId node = kNoNode;
  bool imperative = false;
  bool conditional = false;
  bool effect_actionable = false;
  bool nonimperative_actionable = false;
  bool goal = false;
  bool actionable = false;
  bool image = false;
};

class Annotator {
 public:
  /// `model` may be null, in which case nothing is non-imperative actionable.
  Annotator(const Tagger& tagger, const ActionableModel* model, const GoalCues& cues)
      : tagger_(&tagger), model_(model), cues_(&cues) {}

  SentenceAnnotation annotate_sentence(std::string_view text, bool is_heading) const;
  /// Headings are one sentence; paragraphs and items are split.
  NodeAnnotation annotate_node(const DocNode& node) const;
  /// Indexed by node id.
  std::vector<NodeAnnotation> annotate_tree(const DocTree& tree) const;

 private:
  const Tagger* tagger_;
  const ActionableModel* model_;
  const GoalCues* cues_;
};

/// Units in document order; their count equals chunk_size(chunk).
/// A paragraph's image flag lands on its last sentence.
std::vector<Unit> chunk_units(const Chunk& chunk, const DocTree& tree, const std::vector<NodeAnnotation>& notes);

/// All tagged sentences of the chunk's items in order, for relatedness.
std::vector<TaggedSentence> chunk_sentences(const Chunk& chunk, const std::vector<NodeAnnotation>& notes);

}  // namespace procx
