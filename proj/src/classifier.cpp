#include "procx/classifier.hpp"

#include <charconv>
#include <sstream>

#include "json.hpp"
#include "procx/error.hpp"

namespace procx {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

Eigen::MatrixXd stack(const std::vector<FeatureVector>& rows) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), kFeatureCount);
  for (std::size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = rows[i].to_eigen().transpose();
  return m;
}

std::string fixed4(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 4);
  return std::string(buf, end);
}

std::string shortest(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

}  // namespace

ProcedureModel train_procedure(const std::vector<FeatureVector>& rows, const std::vector<bool>& labels,
                               const TrainParams& params, TrainReport* report) {
  ProcedureModel model;
  model.linear = train_linear_svm(stack(rows), labels, params, report);
  return model;
}

std::string procedure_model_to_json(const ProcedureModel& model) {
  ordered_json doc;
  doc["version"] = model.version;
  doc["weights"] = std::vector<double>(model.linear.weights.begin(), model.linear.weights.end());
  doc["bias"] = model.linear.bias;
  ordered_json scaler = ordered_json::array();
  for (Eigen::Index i = 0; i < model.linear.scaler.dim(); ++i)
    scaler.push_back(ordered_json{{"min", model.linear.scaler.min[i]}, {"max", model.linear.scaler.max[i]}});
  doc["scaler"] = std::move(scaler);
  return doc.dump(2);
}

ProcedureModel procedure_model_from_json(std::string_view text) {
  json doc = json::parse(text.begin(), text.end(), nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw VersionMismatch("procedure model: not a JSON object");
  const std::string version = doc.value("version", std::string{});
  if (version != kProcedureModelVersion)
    throw VersionMismatch("procedure model version '" + version + "' is not '" + std::string(kProcedureModelVersion) +
                          "'");
  try {
    ProcedureModel model;
    const auto weights = doc.at("weights").get<std::vector<double>>();
    const auto& scaler = doc.at("scaler");
    if (weights.size() != kFeatureCount || scaler.size() != kFeatureCount)
      throw VersionMismatch("procedure model: expected " + std::to_string(kFeatureCount) + " weights");
    model.linear.weights = Eigen::Map<const Eigen::VectorXd>(weights.data(), kFeatureCount);
    model.linear.bias = doc.at("bias").get<double>();
    model.linear.scaler.min.resize(kFeatureCount);
    model.linear.scaler.max.resize(kFeatureCount);
    for (int i = 0; i < kFeatureCount; ++i) {
      model.linear.scaler.min[i] = scaler[static_cast<std::size_t>(i)].at("min").get<double>();
      model.linear.scaler.max[i] = scaler[static_cast<std::size_t>(i)].at("max").get<double>();
      if (model.linear.scaler.min[i] > model.linear.scaler.max[i])
        throw VersionMismatch("procedure model: scaler min exceeds max");
    }
    return model;
  } catch (const json::exception& e) {
    throw VersionMismatch(std::string("procedure model: ") + e.what());
  }
}

std::vector<ChunkPrediction> classify_tree(const ChunkSet& set, const std::vector<std::vector<Unit>>& units,
                                           const std::vector<FeatureVector>& features, const ProcedureModel& model,
                                           const ClassifyOptions& options) {
  const std::size_t n = set.chunks.size();
  if (units.size() != n || features.size() != n) throw Error("classify_tree: per-chunk inputs do not match chunk set");
  std::vector<std::optional<bool>> labels(n);
  std::vector<ChunkPrediction> log;
  log.reserve(n);
  for (auto level = set.by_level.rbegin(); level != set.by_level.rend(); ++level) {
    for (int id : level->second) {
      const auto idx = static_cast<std::size_t>(id);
      FeatureVector v = features[idx];
      if (options.propagation) {
        v = update_propagated_features(units[idx], set, labels, v);
      } else {
        v[kInferredGoal] = 0.0;
        v[kNonActionableGoals] = 0.0;
      }
      v = mask_features(v, options.ablate);
      ChunkPrediction p;
      p.chunk_id = id;
      p.depth = level->first;
      p.margin = model.margin(v);
      p.label = p.margin >= 0.0;
      p.snapshot = v;
      log.push_back(p);
    }
    // Labels become visible to shallower chunks only once the level is done.
    for (std::size_t k = log.size() - level->second.size(); k < log.size(); ++k)
      labels[static_cast<std::size_t>(log[k].chunk_id)] = log[k].label;
  }
  return log;
}

std::vector<FeatureVector> gold_propagated_features(const ChunkSet& set, const std::vector<std::vector<Unit>>& units,
                                                    const std::vector<FeatureVector>& features,
                                                    const std::vector<bool>& gold) {
  const std::size_t n = set.chunks.size();
  if (units.size() != n || features.size() != n || gold.size() != n)
    throw Error("gold_propagated_features: per-chunk inputs do not match chunk set");
  std::vector<std::optional<bool>> labels(gold.begin(), gold.end());
  std::vector<FeatureVector> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(update_propagated_features(units[i], set, labels, features[i]));
  return out;
}

Metrics metrics_from_counts(int tp, int fp, int fn, int tn) {
  Metrics m;
  m.tp = tp;
  m.fp = fp;
  m.fn = fn;
  m.tn = tn;
  const int total = tp + fp + fn + tn;
  m.accuracy = total > 0 ? static_cast<double>(tp + tn) / total : 0.0;
  m.precision_undefined = tp + fp == 0;
  m.recall_undefined = tp + fn == 0;
  m.precision = m.precision_undefined ? 0.0 : static_cast<double>(tp) / (tp + fp);
  m.recall = m.recall_undefined ? 0.0 : static_cast<double>(tp) / (tp + fn);
  return m;
}

Metrics evaluate(const std::vector<ChunkPrediction>& predictions, const std::map<int, bool>& gold) {
  std::map<std::string, bool> predicted, expected;
  for (const auto& p : predictions) predicted[std::to_string(p.chunk_id)] = p.label;
  for (const auto& [id, label] : gold) expected[std::to_string(id)] = label;
  return evaluate(predicted, expected);
}

Metrics evaluate(const std::map<std::string, bool>& predicted, const std::map<std::string, bool>& gold) {
  int tp = 0, fp = 0, fn = 0, tn = 0;
  for (const auto& [id, truth] : gold) {
    auto it = predicted.find(id);
    if (it == predicted.end()) throw MissingPrediction("no prediction for chunk " + id);
    const bool p = it->second;
    if (p && truth) ++tp;
    else if (p) ++fp;
    else if (truth) ++fn;
    else ++tn;
  }
  return metrics_from_counts(tp, fp, fn, tn);
}

const std::vector<std::pair<std::string, std::set<int>>>& feature_categories() {
  static const std::vector<std::pair<std::string, std::set<int>>> categories = {
      {"Actionable", {1, 2, 3, 4}},
      {"Goal-based", {5, 6, 7, 8}},
      {"Relatedness", {9}},
      {"Structural", {10, 11, 12, 13}},
      {"Context-based", {14, 15}},
  };
  return categories;
}

Metrics ablate(const std::set<int>& ids, const std::vector<FeatureVector>& train_rows,
               const std::vector<bool>& train_labels, const std::vector<FeatureVector>& test_rows,
               const std::vector<bool>& test_labels, const TrainParams& params) {
  if (test_rows.size() != test_labels.size()) throw Error("ablate: test row/label count mismatch");
  std::vector<FeatureVector> train;
  train.reserve(train_rows.size());
  for (const auto& r : train_rows) train.push_back(mask_features(r, ids));
  const ProcedureModel model = train_procedure(train, train_labels, params);
  int tp = 0, fp = 0, fn = 0, tn = 0;
  for (std::size_t i = 0; i < test_rows.size(); ++i) {
    const bool p = model.margin(mask_features(test_rows[i], ids)) >= 0.0;
    const bool truth = test_labels[i];
    if (p && truth) ++tp;
    else if (p) ++fp;
    else if (truth) ++fn;
    else ++tn;
  }
  return metrics_from_counts(tp, fp, fn, tn);
}

std::string ablation_report_csv(const std::vector<AblationRow>& rows) {
  std::ostringstream out;
  out << "category,accuracy,precision,recall\n";
  for (const auto& r : rows)
    out << r.category << ',' << fixed4(r.metrics.accuracy) << ',' << fixed4(r.metrics.precision) << ','
        << fixed4(r.metrics.recall) << '\n';
  return out.str();
}

std::string prediction_log_csv(const std::vector<ChunkPrediction>& log) {
  std::ostringstream out;
  out << "chunk_id,depth,label,margin\n";
  for (const auto& p : log) out << p.chunk_id << ',' << p.depth << ',' << (p.label ? 1 : 0) << ',' << shortest(p.margin) << '\n';
  return out.str();
}

}  // namespace procx
