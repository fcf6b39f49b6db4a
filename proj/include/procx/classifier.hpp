#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "procx/analysis.hpp"
#include "procx/chunker.hpp"
#include "procx/features.hpp"
#include "procx/linear_model.hpp"

namespace procx {

inline constexpr std::string_view kProcedureModelVersion = "procedure/1;features=chunk/15";

struct ProcedureModel {
  LinearModel linear;
  std::string version{kProcedureModelVersion};

  double margin(const FeatureVector& v) const { return linear.margin(v.to_eigen()); }
};

struct ChunkPrediction {
  int chunk_id = 0;
  int depth = 0;
  bool label = false;
  double margin = 0.0;
  FeatureVector snapshot;  // the exact vector that was scored
};

ProcedureModel train_procedure(const std::vector<FeatureVector>& rows, const std::vector<bool>& labels,
                               const TrainParams& params, TrainReport* report = nullptr);

std::string procedure_model_to_json(const ProcedureModel& model);
/// Throws VersionMismatch on a version or dimension mismatch.
ProcedureModel procedure_model_from_json(std::string_view text);

struct ClassifyOptions {
  bool propagation = true;
  std::set<int> ablate;  // features zeroed before scoring
};

/// Scores chunks from the deepest level up. Before a chunk is scored its f6/f7
/// are recomputed from the predictions of the chunks its units govern, all of
/// which lie strictly deeper. The returned log is in scoring order.
/// `units[c]` and `features[c]` belong to chunk c.
std::vector<ChunkPrediction> classify_tree(const ChunkSet& set, const std::vector<std::vector<Unit>>& units,
                                           const std::vector<FeatureVector>& features, const ProcedureModel& model,
                                           const ClassifyOptions& options = {});

/// Teacher-forced feature rows: f6/f7 computed from gold child labels.
std::vector<FeatureVector> gold_propagated_features(const ChunkSet& set, const std::vector<std::vector<Unit>>& units,
                                                    const std::vector<FeatureVector>& features,
                                                    const std::vector<bool>& gold);

struct Metrics {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  int tp = 0, fp = 0, fn = 0, tn = 0;
  bool precision_undefined = false;  // no positive predictions
  bool recall_undefined = false;     // no positive gold labels
};

Metrics metrics_from_counts(int tp, int fp, int fn, int tn);

/// Procedure is the positive class. Every gold id must have a prediction
/// (MissingPrediction otherwise); extra predictions are ignored.
Metrics evaluate(const std::vector<ChunkPrediction>& predictions, const std::map<int, bool>& gold);
Metrics evaluate(const std::map<std::string, bool>& predicted, const std::map<std::string, bool>& gold);

struct AblationRow {
  std::string category;
  std::set<int> features;
  Metrics metrics;
};

/// The five feature groups of the ablation study, in report order.
const std::vector<std::pair<std::string, std::set<int>>>& feature_categories();

/// Zeroes `ids` in both row sets, retrains and evaluates on the test rows.
Metrics ablate(const std::set<int>& ids, const std::vector<FeatureVector>& train_rows,
               const std::vector<bool>& train_labels, const std::vector<FeatureVector>& test_rows,
               const std::vector<bool>& test_labels, const TrainParams& params);

/// CSV `category,accuracy,precision,recall`.
std::string ablation_report_csv(const std::vector<AblationRow>& rows);
/// CSV `chunk_id,depth,label,margin`.
std::string prediction_log_csv(const std::vector<ChunkPrediction>& log);

}  // namespace procx
