#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "procx/detectors.hpp"
#include "procx/linear_model.hpp"
#include "procx/tagger.hpp"

namespace procx {

inline constexpr std::string_view kActionableModelVersion = "actionable/1;tf=raw;idf=ln";
/// Number of linguistic features appended after the bag of words.
inline constexpr int kLinguisticFeatures = 3;

struct VocabTerm {
  std::string term;
  int document_frequency = 0;
  double idf = 0.0;
};

/// tf-idf vocabulary. Terms are sorted so feature indices are deterministic.
struct Vocabulary {
  std::vector<VocabTerm> terms;
  int total_sentences = 0;

  std::size_t size() const noexcept { return terms.size(); }
  std::optional<std::size_t> index_of(std::string_view term) const;
};

/// Keeps terms that occur in at least `min_document_frequency` sentences and
/// sets idf = ln(N / df). Each sentence is a list of lowercased words.
/// Throws EmptyCorpus when nothing survives.
Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& sentences,
                            int min_document_frequency = 3);

/// Bag-of-words tf-idf (raw term counts) followed by tense, voice and polarity
/// indicators (present, active and positive encode as 1).
Eigen::VectorXd featurize(const TaggedSentence& s, const Profile& p, const Vocabulary& vocab);

struct ActionableModel {
  Vocabulary vocabulary;
  LinearModel linear;
  std::string version{kActionableModelVersion};
};

struct LabeledSentence {
  TaggedSentence sentence;
  bool actionable = false;
};

struct ActionablePrediction {
  bool actionable = false;
  double margin = 0.0;
};

/// Requires at least two examples of each class (DegenerateLabels otherwise).
ActionableModel train_actionable(const std::vector<LabeledSentence>& labeled, const TrainParams& params,
                                 TrainReport* report = nullptr);

ActionablePrediction predict(const ActionableModel& model, const TaggedSentence& s, const Profile& p);

std::string actionable_model_to_json(const ActionableModel& model);
/// Throws VersionMismatch when the file was written by an incompatible version.
ActionableModel actionable_model_from_json(std::string_view text);

/// Reads a `text,label` CSV (label 1 or 0, optional header). Sentences the
/// imperative detector fires on are dropped unless `include_imperatives`.
std::vector<LabeledSentence> load_actionable_corpus(const std::string& path, const Tagger& tagger,
                                                    bool include_imperatives = false);

}  // namespace procx
