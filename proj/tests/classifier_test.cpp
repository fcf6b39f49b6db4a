#include <gtest/gtest.h>

#include <cstdio>

#include "procx/error.hpp"
#include "procx/markdown.hpp"
#include "procx/pipeline.hpp"

using namespace procx;

namespace {

const Resources& plain_resources() {
  static const Resources r{RunConfig{}};
  return r;
}

DocumentAnalysis analyze(std::string_view md) { return analyze_document(parse_markdown(md), plain_resources()); }

int chunk_with_first_item(const DocumentAnalysis& d, std::string_view prefix) {
  for (const auto& c : d.chunks.chunks)
    if (d.tree.node(c.items.front()).text.rfind(prefix, 0) == 0) return c.id;
  return -1;
}

// Identity scaling over [0, 1], so weights act on raw fractions.
ProcedureModel hand_model(std::map<int, double> weights, double bias) {
  ProcedureModel m;
  m.linear.weights = Eigen::VectorXd::Zero(kFeatureCount);
  for (auto [id, w] : weights) m.linear.weights[id - 1] = w;
  m.linear.bias = bias;
  m.linear.scaler.min = Eigen::VectorXd::Zero(kFeatureCount);
  m.linear.scaler.max = Eigen::VectorXd::Ones(kFeatureCount);
  return m;
}

const char* kNested =
    "# Guide\n## Step 1\n1. Open the console.\n2. Click Start.\n"
    "## Step 2\n1. Type the name.\n2. Click Save.\n## Step 3\n1. Close the console.\n";

}  // namespace

TEST(Features, Fractions) {
  const auto d = analyze("# T\n1. Open the console.\n2. Click Start.\n3. Type the name.\n4. The name is shown.\n");
  ASSERT_EQ(d.features.size(), 1u);
  EXPECT_DOUBLE_EQ(d.features[0][kImperatives], 0.75);
  EXPECT_DOUBLE_EQ(d.features[0][kConditionals], 0.0);
  EXPECT_DOUBLE_EQ(d.features[0][kEffectActionable], 0.0);
  EXPECT_DOUBLE_EQ(d.features[0][kChunkSize], 4.0);
  EXPECT_DOUBLE_EQ(d.features[0][kInferredGoal], 0.0);
}

TEST(Features, ContextCuesAndParentGoal) {
  const auto d = analyze("# T\n## Installing the agent\nComplete the following steps:\n\n1. Open it.\n2. Click Save.\n");
  const int list = chunk_with_first_item(d, "Open it");
  ASSERT_GE(list, 0);
  EXPECT_DOUBLE_EQ(d.features[static_cast<std::size_t>(list)][kContextProcedural], 1.0);
  EXPECT_DOUBLE_EQ(d.features[static_cast<std::size_t>(list)][kIfParentIsGoal], 1.0);
}

TEST(Features, InferredGoalForEightSteps) {
  std::string md = "# T\n## Steps\n";
  for (int i = 1; i <= 8; ++i) md += "### Step " + std::to_string(i) + "\n1. Click Save.\n";
  const auto d = analyze(md);
  const int headings = chunk_with_first_item(d, "Step 1");
  std::vector<std::optional<bool>> labels(d.chunks.chunks.size());
  for (const auto& c : d.chunks.chunks)
    if (c.kind == ChunkKind::List) labels[static_cast<std::size_t>(c.id)] = true;
  const auto& units = d.units[static_cast<std::size_t>(headings)];
  const auto f = update_propagated_features(units, d.chunks, labels, d.features[static_cast<std::size_t>(headings)]);
  EXPECT_DOUBLE_EQ(f[kInferredGoal], 1.0);
  EXPECT_DOUBLE_EQ(f[kNonActionableGoals], 1.0);

  labels.assign(labels.size(), std::nullopt);
  EXPECT_THROW(update_propagated_features(units, d.chunks, labels, d.features[static_cast<std::size_t>(headings)]),
               PropagationOrderError);
}

TEST(Features, NonActionableGoals) {
  // Two gerund headings count as actionable; "Notes" and "Limits" do not.
  const auto d = analyze(
      "# T\n## Creating a key\n## Creating a user\n## Notes\n1. Click Save.\n## Limits\n1. Up to ten users\n");
  const int headings = chunk_with_first_item(d, "Creating a key");
  std::vector<std::optional<bool>> labels(d.chunks.chunks.size(), false);
  labels[static_cast<std::size_t>(chunk_with_first_item(d, "Click Save"))] = true;
  const auto f = update_propagated_features(d.units[static_cast<std::size_t>(headings)], d.chunks, labels,
                                            d.features[static_cast<std::size_t>(headings)]);
  EXPECT_DOUBLE_EQ(f[kNonActionableGoals], 0.5);
  EXPECT_DOUBLE_EQ(f[kInferredGoal], 0.25);
}

TEST(Features, IdsAndCsv) {
  EXPECT_EQ(parse_feature_ids("1,2,5-7"), (std::set<int>{1, 2, 5, 6, 7}));
  EXPECT_EQ(parse_feature_ids("actionable"), (std::set<int>{1, 2, 3, 4}));
  EXPECT_EQ(parse_feature_ids("context"), (std::set<int>{14, 15}));
  EXPECT_THROW(parse_feature_ids("16"), Error);
  EXPECT_THROW(parse_feature_ids("bogus"), Error);

  FeatureRow row{"doc#0", {}, true};
  for (int i = 1; i <= kFeatureCount; ++i) row.features[i] = i / 3.0;
  const auto path = std::filesystem::temp_directory_path() / "procx_rows_test.csv";
  write_file(path, feature_rows_to_csv({row}));
  const auto back = feature_rows_from_csv(path.string());
  std::filesystem::remove(path);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].features, row.features);
  EXPECT_EQ(back[0].label, std::optional<bool>(true));
}

TEST(Classify, PropagationFlipsParent) {
  const auto d = analyze(kNested);
  const auto model = hand_model({{kImperatives, 1.0}, {kInferredGoal, 1.0}}, -0.5);
  const int parent = chunk_with_first_item(d, "Step 1");

  const auto log = classify_tree(d.chunks, d.units, d.features, model);
  ASSERT_EQ(log.size(), d.chunks.chunks.size());
  for (std::size_t i = 1; i < log.size(); ++i) EXPECT_GE(log[i - 1].depth, log[i].depth);
  std::map<int, ChunkPrediction> by_id;
  for (const auto& p : log) by_id[p.chunk_id] = p;
  EXPECT_TRUE(by_id[parent].label);
  EXPECT_DOUBLE_EQ(by_id[parent].snapshot[kInferredGoal], 1.0);

  const auto frozen = classify_tree(d.chunks, d.units, d.features, model, {false, {}});
  for (const auto& p : frozen) EXPECT_EQ(p.label, p.chunk_id != parent ? by_id[p.chunk_id].label : false);
}

TEST(Classify, FlatAndEmpty) {
  const auto d = analyze("# T\n1. Open it.\n2. Close it.\n\nSome text.\n");
  const auto model = hand_model({{kImperatives, 1.0}, {kInferredGoal, 1.0}}, -0.5);
  const auto a = classify_tree(d.chunks, d.units, d.features, model);
  const auto b = classify_tree(d.chunks, d.units, d.features, model, {false, {}});
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].label, b[i].label);

  const auto empty = analyze("# Nothing\n");
  EXPECT_TRUE(classify_tree(empty.chunks, empty.units, empty.features, model).empty());
}

TEST(Classify, AblationMaskAppliesAtInference) {
  const auto d = analyze(kNested);
  const auto model = hand_model({{kImperatives, 1.0}}, -0.5);
  for (const auto& p : classify_tree(d.chunks, d.units, d.features, model, {true, {kImperatives}}))
    EXPECT_FALSE(p.label);
}

TEST(Classify, GoldPropagation) {
  const auto d = analyze(kNested);
  std::vector<bool> gold(d.chunks.chunks.size(), true);
  const auto rows = gold_propagated_features(d.chunks, d.units, d.features, gold);
  EXPECT_DOUBLE_EQ(rows[static_cast<std::size_t>(chunk_with_first_item(d, "Step 1"))][kInferredGoal], 1.0);
}

TEST(ProcedureModel, TrainAndRoundTrip) {
  std::vector<FeatureVector> rows;
  std::vector<bool> labels;
  for (int i = 0; i < 40; ++i) {
    FeatureVector v;
    v[kImperatives] = (i % 10) / 9.0;
    v[kChunkSize] = 1 + i % 7;
    rows.push_back(v);
    labels.push_back(v[kImperatives] > 0.6);
  }
  TrainParams params;
  params.seed = 9;
  params.learning_rate = 0.1;
  params.epochs = 300;
  TrainReport report;
  const auto m = train_procedure(rows, labels, params, &report);
  EXPECT_DOUBLE_EQ(report.train_accuracy, 1.0);
  const auto json = procedure_model_to_json(m);
  EXPECT_EQ(procedure_model_to_json(train_procedure(rows, labels, params)), json);
  EXPECT_EQ(procedure_model_to_json(procedure_model_from_json(json)), json);
  EXPECT_THROW(train_procedure(rows, std::vector<bool>(rows.size(), false), params), DegenerateLabels);

  std::string bad = json;
  bad.replace(bad.find("chunk/15"), 8, "chunk/14");
  EXPECT_THROW(procedure_model_from_json(bad), VersionMismatch);

  const auto dropped = ablate({kImperatives}, rows, labels, rows, labels, params);
  EXPECT_LT(dropped.accuracy, 1.0);
  std::set<int> all;
  for (int i = 1; i <= kFeatureCount; ++i) all.insert(i);
  const auto none = ablate(all, rows, labels, rows, labels, params);
  EXPECT_DOUBLE_EQ(none.accuracy, 0.6);  // 24 of 40 rows are negative
}

TEST(Metrics, Counts) {
  auto m = metrics_from_counts(2, 1, 1, 6);
  EXPECT_DOUBLE_EQ(m.accuracy, 0.8);
  EXPECT_NEAR(m.precision, 0.6667, 1e-4);
  EXPECT_NEAR(m.recall, 0.6667, 1e-4);

  m = metrics_from_counts(0, 0, 0, 5);
  EXPECT_TRUE(m.precision_undefined);
  EXPECT_TRUE(m.recall_undefined);

  std::map<int, bool> gold{{0, true}, {1, false}, {2, true}, {3, false}};
  std::vector<ChunkPrediction> all_right, all_wrong;
  for (auto [id, label] : gold) {
    all_right.push_back({id, 1, label, 0.0, {}});
    all_wrong.push_back({id, 1, !label, 0.0, {}});
  }
  m = evaluate(all_right, gold);
  EXPECT_DOUBLE_EQ(m.accuracy + m.precision + m.recall, 3.0);
  EXPECT_DOUBLE_EQ(evaluate(all_wrong, gold).accuracy, 0.0);
  all_right.pop_back();
  EXPECT_THROW(evaluate(all_right, gold), MissingPrediction);
}

TEST(Metrics, AblationReport) {
  std::vector<AblationRow> rows{{"None", {}, metrics_from_counts(2, 1, 1, 6)}};
  for (const auto& [name, ids] : feature_categories()) rows.push_back({name, ids, metrics_from_counts(1, 1, 2, 6)});
  const auto csv = ablation_report_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "category,accuracy,precision,recall");
  EXPECT_NE(csv.find("None,0.8000,0.6667,0.6667"), std::string::npos);
  for (std::string name : {"Actionable", "Goal-based", "Relatedness", "Structural", "Context-based"})
    EXPECT_NE(csv.find("\n" + name + ","), std::string::npos);
}
