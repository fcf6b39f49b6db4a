#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "procx/analysis.hpp"
#include "procx/chunker.hpp"
#include "procx/goals.hpp"
#include "procx/linear_model.hpp"

namespace procx {

inline constexpr int kFeatureCount = 15;
inline constexpr std::string_view kFeatureSetVersion = "chunk/15";

/// Feature ids are 1-based, in table order.
enum Feature : int {
  kImperatives = 1,
  kConditionals = 2,
  kActionables = 3,
  kEffectActionable = 4,
  kDiscourseOnlyGoals = 5,
  kInferredGoal = 6,
  kNonActionableGoals = 7,
  kIfParentIsGoal = 8,
  kRelatedness = 9,
  kDepthLevel = 10,
  kChunkSize = 11,
  kAvgSiblingDistance = 12,
  kAssociatedImage = 13,
  kContextNonProcedural = 14,
  kContextProcedural = 15,
};

std::string_view feature_name(int id);

struct FeatureVector {
  std::array<double, kFeatureCount> values{};

  double& operator[](int id) { return values.at(static_cast<std::size_t>(id - 1)); }
  double operator[](int id) const { return values.at(static_cast<std::size_t>(id - 1)); }
  Eigen::VectorXd to_eigen() const;
  bool operator==(const FeatureVector&) const = default;
};

/// Word lists for the two context cues.
struct ContextCues {
  std::set<std::string> procedural;
  std::set<std::string> nonprocedural;

  static ContextCues load(const std::filesystem::path& procedural_file, const std::filesystem::path& nonprocedural_file);
  static const ContextCues& bundled();
};

/// Everything except f6 and f7, which start at 0.
FeatureVector compute_static_features(const Chunk& chunk, const DocTree& tree, const std::vector<Unit>& units,
                                      const GoalAnnotation& governing_goal, double relatedness,
                                      const ContextCues& cues = ContextCues::bundled());

/// Recomputes f6 and f7 from the labels of the chunks each unit's node
/// governs. `labels` is indexed by chunk id; an empty optional means the chunk
/// has not been classified yet, which throws PropagationOrderError when a
/// unit depends on it.
FeatureVector update_propagated_features(const std::vector<Unit>& units, const ChunkSet& set,
                                         const std::vector<std::optional<bool>>& labels,
                                         const FeatureVector& current);

/// Zeroes the given 1-based feature ids.
FeatureVector mask_features(FeatureVector v, const std::set<int>& ids);

/// Parses "1,2,5-8" style lists and category names (actionable, goal,
/// relatedness, structural, context). Throws Error on anything else.
std::set<int> parse_feature_ids(std::string_view text);

struct FeatureRow {
  std::string chunk_id;  // "<document>#<chunk>"
  FeatureVector features;
  std::optional<bool> label;
};

/// CSV `chunk_id,f1,...,f15[,label]`.
std::string feature_rows_to_csv(const std::vector<FeatureRow>& rows);
std::vector<FeatureRow> feature_rows_from_csv(const std::string& path);

}  // namespace procx
