#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "procx/actionable.hpp"
#include "procx/analysis.hpp"
#include "procx/chunker.hpp"
#include "procx/classifier.hpp"
#include "procx/extractor.hpp"
#include "procx/features.hpp"
#include "procx/goals.hpp"
#include "procx/relatedness.hpp"
#include "procx/tagger.hpp"

namespace procx {

/// Settings shared by every command. Empty paths mean "use the bundled data".
/// Config files are flat `key=value` text; '#' starts a comment.
struct RunConfig {
  std::filesystem::path lexicon_dir;
  std::filesystem::path cue_file;
  std::filesystem::path context_procedural;
  std::filesystem::path context_nonprocedural;
  RoleWeights role_weights;
  std::filesystem::path actionable_model;
  std::filesystem::path procedure_model;
  std::optional<std::uint64_t> seed;
  TrainParams train;
  std::set<std::string> dump;  // "graphs"

  /// Applies one key; throws Error on unknown keys or bad values.
  void set(const std::string& key, const std::string& value);
  void load_file(const std::filesystem::path& path);
  /// Throws IoError naming the first configured path that does not exist.
  void check_paths() const;
  TrainParams train_params() const;  // requires a seed
};

/// Read-only state built once per run and shared by concurrent documents.
class Resources {
 public:
  explicit Resources(const RunConfig& config);

  const Tagger& tagger() const { return *tagger_; }
  const GoalCues& goal_cues() const { return goal_cues_; }
  const ContextCues& context_cues() const { return context_cues_; }
  const RoleWeights& role_weights() const { return role_weights_; }
  const ActionableModel* actionable() const { return actionable_ ? &*actionable_ : nullptr; }
  const ProcedureModel* procedure() const { return procedure_ ? &*procedure_ : nullptr; }

  void set_actionable(ActionableModel model) { actionable_ = std::move(model); }
  void set_procedure(ProcedureModel model) { procedure_ = std::move(model); }

 private:
  std::unique_ptr<Lexicon> lexicon_;
  std::unique_ptr<Tagger> tagger_;
  GoalCues goal_cues_;
  ContextCues context_cues_;
  RoleWeights role_weights_;
  std::optional<ActionableModel> actionable_;
  std::optional<ProcedureModel> procedure_;
};

ActionableModel load_actionable_model(const std::filesystem::path& path);
ProcedureModel load_procedure_model(const std::filesystem::path& path);
std::string read_file(const std::filesystem::path& path);
/// Writes `content` followed by a newline.
void write_file(const std::filesystem::path& path, const std::string& content);

/// Everything computed before classification.
struct DocumentAnalysis {
  DocTree tree;
  ChunkSet chunks;
  std::vector<NodeAnnotation> notes;
  std::vector<std::vector<Unit>> units;
  std::vector<FeatureVector> features;  // static; f6 = f7 = 0
  std::string graph_dump;               // filled when requested
};

DocumentAnalysis analyze_document(DocTree tree, const Resources& resources, bool dump_graphs = false);

struct DocumentResult {
  DocumentAnalysis analysis;
  std::vector<ChunkPrediction> predictions;  // scoring order
  std::vector<Procedure> procedures;
};

/// Full pipeline. Needs a procedure model in `resources`.
DocumentResult run_document(DocTree tree, const Resources& resources, const ClassifyOptions& options = {},
                            bool dump_graphs = false);

/// Gold labels: CSV `chunk_id,label[,first_item]`. Every chunk must be
/// labeled; `first_item`, when given, must be a prefix of the chunk's first
/// item text so stale label files are caught.
std::vector<bool> load_gold(const std::filesystem::path& path, const DocumentAnalysis& doc);
std::string gold_template_csv(const DocumentAnalysis& doc, const std::vector<bool>* labels = nullptr);

/// Corpus manifest: CSV `document,labels,split` with paths relative to the
/// manifest and split "train" or "test".
struct CorpusEntry {
  std::filesystem::path document;
  std::filesystem::path labels;
  std::string split;
};
std::vector<CorpusEntry> load_manifest(const std::filesystem::path& path);

struct LabeledDocument {
  std::string name;
  std::string split;
  DocumentAnalysis analysis;
  std::vector<bool> gold;
};
/// Analyzes every manifest document (concurrently) and loads its labels.
std::vector<LabeledDocument> load_corpus(const std::filesystem::path& manifest, const Resources& resources);

/// Teacher-forced rows for the given split ("" selects all documents).
std::vector<FeatureRow> training_rows(const std::vector<LabeledDocument>& docs, const std::string& split = "train");

/// Runs the classifier over each selected document and pools the metrics.
Metrics evaluate_corpus(const std::vector<LabeledDocument>& docs, const ProcedureModel& model,
                        const ClassifyOptions& options, const std::string& split = "");

/// Baseline plus one row per feature category: retrain on the train split with
/// the category zeroed and evaluate the tree-level classifier on `eval_split`.
std::vector<AblationRow> ablate_corpus(const std::vector<LabeledDocument>& docs, const TrainParams& params,
                                       const std::string& eval_split = "test");

}  // namespace procx
