#include "procx/features.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "procx/csv.hpp"
#include "procx/error.hpp"
#include "procx/text.hpp"

namespace procx {

namespace {

constexpr std::array<std::string_view, kFeatureCount> kNames = {
    "nImperatives",      "nConditionals",     "nActionables", "nEffectActionable",
    "nDiscourseOnlyGoals", "nInferredGoal",   "nNonActionableGoals", "ifParentIsGoal",
    "relatedness",       "depthLevel",        "chunkSize",    "avgSiblingDistance",
    "nAssociatedImage",  "contextNonProcedural", "contextProcedural"};

std::set<std::string> read_word_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read word list " + path.string());
  std::set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    words.insert(to_lower(line));
  }
  return words;
}

double fraction(int count, int total) { return total > 0 ? static_cast<double>(count) / total : 0.0; }

std::string format_double(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

}  // namespace

std::string_view feature_name(int id) {
  if (id < 1 || id > kFeatureCount) return "?";
  return kNames[static_cast<std::size_t>(id - 1)];
}

Eigen::VectorXd FeatureVector::to_eigen() const {
  return Eigen::Map<const Eigen::VectorXd>(values.data(), kFeatureCount);
}

ContextCues ContextCues::load(const std::filesystem::path& procedural_file,
                              const std::filesystem::path& nonprocedural_file) {
  return {read_word_list(procedural_file), read_word_list(nonprocedural_file)};
}

const ContextCues& ContextCues::bundled() {
  static const ContextCues cues = load(std::filesystem::path(PROCX_DATA_DIR) / "context_procedural.txt",
                                       std::filesystem::path(PROCX_DATA_DIR) / "context_nonprocedural.txt");
  return cues;
}

FeatureVector compute_static_features(const Chunk& chunk, const DocTree& tree, const std::vector<Unit>& units,
                                      const GoalAnnotation& governing_goal, double relatedness,
                                      const ContextCues& cues) {
  FeatureVector f;
  const int n = static_cast<int>(units.size());
  int imperatives = 0, conditionals = 0, nonimp = 0, effect = 0, goals = 0, images = 0;
  for (const auto& u : units) {
    imperatives += u.imperative;
    conditionals += u.conditional;
    nonimp += u.nonimperative_actionable && !u.imperative;
    effect += u.conditional && u.effect_actionable;
    goals += u.goal;
    images += u.image;
  }
  f[kImperatives] = fraction(imperatives, n);
  f[kConditionals] = fraction(conditionals, n);
  f[kActionables] = fraction(nonimp, n);
  f[kEffectActionable] = fraction(effect, conditionals);
  f[kDiscourseOnlyGoals] = fraction(goals, n);
  f[kIfParentIsGoal] = governing_goal.is_goal ? 1.0 : 0.0;
  f[kRelatedness] = relatedness;
  f[kDepthLevel] = chunk.depth;
  f[kChunkSize] = chunk_size(chunk, tree);
  f[kAvgSiblingDistance] = average_sibling_distance(chunk, tree);
  f[kAssociatedImage] = fraction(images, n);

  bool procedural = false, nonprocedural = false;
  for (const auto& w : normalized_words(chunk.context)) {
    procedural |= cues.procedural.count(w) > 0;
    nonprocedural |= cues.nonprocedural.count(w) > 0;
  }
  f[kContextNonProcedural] = nonprocedural ? 1.0 : 0.0;
  f[kContextProcedural] = procedural ? 1.0 : 0.0;
  return f;
}

FeatureVector update_propagated_features(const std::vector<Unit>& units, const ChunkSet& set,
                                         const std::vector<std::optional<bool>>& labels,
                                         const FeatureVector& current) {
  FeatureVector f = current;
  int with_child = 0, nonactionable = 0, nonactionable_with_child = 0;
  for (const auto& u : units) {
    bool has_procedure = false;
    for (int child : set.children_of(u.node)) {
      const auto& label = labels.at(static_cast<std::size_t>(child));
      if (!label)
        throw PropagationOrderError("chunk " + std::to_string(child) + " governed by node " +
                                    std::to_string(u.node) + " is not classified yet");
      has_procedure |= *label;
    }
    with_child += has_procedure;
    if (!u.actionable) {
      ++nonactionable;
      nonactionable_with_child += has_procedure;
    }
  }
  f[kInferredGoal] = fraction(with_child, static_cast<int>(units.size()));
  f[kNonActionableGoals] = fraction(nonactionable_with_child, nonactionable);
  return f;
}

FeatureVector mask_features(FeatureVector v, const std::set<int>& ids) {
  for (int id : ids) v[id] = 0.0;
  return v;
}

std::set<int> parse_feature_ids(std::string_view text) {
  static const std::map<std::string, std::set<int>> categories = {
      {"actionable", {1, 2, 3, 4}}, {"goal", {5, 6, 7, 8}},   {"goal-based", {5, 6, 7, 8}},
      {"relatedness", {9}},         {"structural", {10, 11, 12, 13}},
      {"context", {14, 15}},        {"context-based", {14, 15}}, {"all", {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15}}};
  std::set<int> ids;
  std::string part;
  std::istringstream in{std::string(text)};
  auto parse_int = [&](const std::string& s) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || v < 1 || v > kFeatureCount)
      throw Error("feature id '" + s + "' is not in 1.." + std::to_string(kFeatureCount));
    return v;
  };
  while (std::getline(in, part, ',')) {
    part = to_lower(trim(part));
    if (part.empty()) continue;
    if (auto it = categories.find(part); it != categories.end()) {
      ids.insert(it->second.begin(), it->second.end());
      continue;
    }
    const auto dash = part.find('-');
    if (dash != std::string::npos) {
      const int lo = parse_int(part.substr(0, dash));
      const int hi = parse_int(part.substr(dash + 1));
      if (lo > hi) throw Error("empty feature range '" + part + "'");
      for (int i = lo; i <= hi; ++i) ids.insert(i);
    } else {
      ids.insert(parse_int(part));
    }
  }
  return ids;
}

std::string feature_rows_to_csv(const std::vector<FeatureRow>& rows) {
  bool labeled = !rows.empty();
  for (const auto& r : rows) labeled &= r.label.has_value();
  std::ostringstream out;
  out << "chunk_id";
  for (int i = 1; i <= kFeatureCount; ++i) out << ",f" << i;
  if (labeled) out << ",label";
  out << '\n';
  for (const auto& r : rows) {
    out << csv_field(r.chunk_id);
    for (double v : r.features.values) out << ',' << format_double(v);
    if (labeled) out << ',' << (*r.label ? 1 : 0);
    out << '\n';
  }
  return out.str();
}

std::vector<FeatureRow> feature_rows_from_csv(const std::string& path) {
  const auto table = read_csv_file(path);
  if (table.empty() || table[0].empty() || table[0][0] != "chunk_id")
    throw Error(path + ": expected header chunk_id,f1..f15[,label]");
  const auto& header = table[0];
  const bool labeled = header.size() == kFeatureCount + 2 && header.back() == "label";
  if (header.size() != kFeatureCount + 1 && !labeled)
    throw Error(path + ": expected " + std::to_string(kFeatureCount) + " feature columns");
  std::vector<FeatureRow> rows;
  for (std::size_t r = 1; r < table.size(); ++r) {
    const auto& row = table[r];
    if (row.size() == 1 && row[0].empty()) continue;
    if (row.size() != header.size()) throw Error(path + ": line " + std::to_string(r + 1) + ": wrong column count");
    FeatureRow fr;
    fr.chunk_id = row[0];
    for (int i = 1; i <= kFeatureCount; ++i) {
      const std::string& cell = row[static_cast<std::size_t>(i)];
      double v = 0.0;
      auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc{} || p != cell.data() + cell.size() || !std::isfinite(v))
        throw Error(path + ": line " + std::to_string(r + 1) + ": bad number '" + cell + "'");
      fr.features[i] = v;
    }
    if (labeled) {
      if (row.back() != "0" && row.back() != "1")
        throw Error(path + ": line " + std::to_string(r + 1) + ": label must be 0 or 1");
      fr.label = row.back() == "1";
    }
    rows.push_back(std::move(fr));
  }
  return rows;
}

}  // namespace procx
