#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "procx/doc_tree.hpp"
#include "procx/relatedness.hpp"

namespace testsupport {

inline std::filesystem::path corpus_dir() { return PROCX_CORPUS_DIR; }

// Small deterministic helper; the tests only need uniform picks.
class Dice {
 public:
  explicit Dice(std::uint64_t seed) : rng_(seed) {}
  int below(int n) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(n)); }
  bool chance(int percent) { return below(100) < percent; }
  template <class T>
  const T& pick(const std::vector<T>& v) { return v[static_cast<std::size_t>(below(static_cast<int>(v.size())))]; }

 private:
  std::mt19937_64 rng_;
};

inline std::string random_sentence(Dice& dice) {
  static const std::vector<std::string> pool = {
      "Open the console.", "Click Save.", "The server restarts.", "Type the name of the host.",
      "If the check fails, repeat the step.", "The log is written daily.", "Select the volume.",
      "Creating a backup", "Method 2: Use the wizard", "Ports are listed below."};
  std::string out;
  const int n = 1 + dice.below(3);
  for (int i = 0; i < n; ++i) out += (i ? " " : "") + dice.pick(pool);
  return out;
}

inline void add_list(procx::TreeBuilder& b, procx::NodeId parent, Dice& dice, int budget) {
  procx::DocNode block;
  block.kind = procx::NodeKind::ListBlock;
  block.ordered = dice.chance(50);
  const procx::NodeId id = b.add(parent, block);
  const int items = 1 + dice.below(5);
  for (int i = 0; i < items; ++i) {
    procx::DocNode item;
    item.kind = procx::NodeKind::ListItem;
    item.text = random_sentence(dice);
    item.associated_image = dice.chance(10);
    const procx::NodeId item_id = b.add(id, item);
    if (budget > 0 && dice.chance(20)) add_list(b, item_id, dice, budget - 1);
  }
}

inline void add_section(procx::TreeBuilder& b, procx::NodeId parent, int min_level, Dice& dice, int budget) {
  const int blocks = dice.below(5);
  for (int i = 0; i < blocks; ++i) {
    const int r = dice.below(10);
    if (r < 4) {
      procx::DocNode p;
      p.kind = procx::NodeKind::Paragraph;
      p.text = dice.chance(5) ? "" : random_sentence(dice);
      b.add(parent, p);
    } else if (r < 7) {
      add_list(b, parent, dice, 2);
    } else if (budget > 0 && min_level <= 6) {
      procx::DocNode h;
      h.kind = procx::NodeKind::Heading;
      h.level = min_level + dice.below(std::min(2, 7 - min_level));
      h.text = random_sentence(dice);
      const procx::NodeId hid = b.add(parent, h);
      add_section(b, hid, h.level + 1, dice, budget - 1);
    }
  }
}

/// A random tree that satisfies every structural invariant.
inline procx::DocTree random_tree(std::uint64_t seed) {
  Dice dice(seed);
  procx::TreeBuilder b("Random document " + std::to_string(seed));
  add_section(b, b.root(), 1, dice, 4);
  return std::move(b).build();
}

/// Independent relatedness oracle: per-sentence max role weight per entity,
/// then a plain triple loop over sentence pairs and entities.
inline double brute_force_relatedness(std::size_t sentences, const std::vector<procx::Entity>& entities,
                                      const procx::RoleWeights& w) {
  if (sentences < 2) return 0.0;
  std::vector<std::map<std::string, double>> weight(sentences);
  for (const auto& e : entities) {
    double& slot = weight[e.sentence_index][e.surface];
    slot = std::max(slot, w(e.role));
  }
  double total = 0.0;
  for (std::size_t i = 0; i < sentences; ++i)
    for (std::size_t j = i + 1; j < sentences; ++j)
      for (const auto& [name, wi] : weight[i]) {
        auto it = weight[j].find(name);
        if (it != weight[j].end()) total += wi * it->second / static_cast<double>(j - i);
      }
  return total / static_cast<double>(sentences);
}

inline std::vector<procx::Entity> random_entities(Dice& dice, std::size_t& sentences) {
  static const std::vector<std::string> names = {"server", "console", "user", "file", "port", "disk", "agent", "key"};
  sentences = static_cast<std::size_t>(1 + dice.below(6));
  const int distinct = 1 + dice.below(8);
  std::vector<procx::Entity> out;
  const int mentions = dice.below(20);
  for (int m = 0; m < mentions; ++m) {
    procx::Entity e;
    e.surface = names[static_cast<std::size_t>(dice.below(distinct))];
    e.role = static_cast<procx::Role>(dice.below(3));
    e.sentence_index = static_cast<std::size_t>(dice.below(static_cast<int>(sentences)));
    out.push_back(e);
  }
  return out;
}

}  // namespace testsupport
