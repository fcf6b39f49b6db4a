#include "procx/relatedness.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "procx/detectors.hpp"
#include "procx/text.hpp"

namespace procx {

namespace {

bool in_run(Tag t) { return t == Tag::NOUN || t == Tag::ADJ; }

}  // namespace

std::string_view to_string(Role role) {
  switch (role) {
    case Role::Subject: return "subject";
    case Role::Object: return "object";
    case Role::Other: return "other";
  }
  return "other";
}

std::vector<Entity> extract_entities(const TaggedSentence& s, std::size_t sentence_index) {
  const auto& toks = s.tokens;
  const bool imperative = detect_imperative(s);
  std::size_t main_verb = toks.size();
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (is_main_verb(toks[i].tag)) {
      main_verb = i;
      break;
    }
  }

  std::vector<Entity> out;
  bool object_assigned = false;
  std::size_t i = 0;
  while (i < toks.size()) {
    if (!in_run(toks[i].tag)) {
      ++i;
      continue;
    }
    std::size_t b = i;
    while (i < toks.size() && in_run(toks[i].tag)) ++i;
    std::size_t e = i;
    while (e > b && toks[e - 1].tag != Tag::NOUN) --e;
    if (e == b) continue;

    std::size_t g = b;
    while (g > 0 && toks[g - 1].tag == Tag::DET) --g;
    const bool governed = g > 0 && toks[g - 1].tag == Tag::PREP;

    Entity ent;
    for (std::size_t k = b; k < e; ++k) {
      if (!ent.surface.empty()) ent.surface.push_back(' ');
      ent.surface += to_lower(toks[k].surface);
    }
    ent.sentence_index = sentence_index;
    if (main_verb == toks.size() || governed) {
      ent.role = Role::Other;
    } else if (e <= main_verb) {
      ent.role = imperative ? Role::Other : Role::Subject;
    } else if (!object_assigned) {
      ent.role = Role::Object;
    } else {
      ent.role = Role::Other;
    }
    if (b > main_verb && main_verb != toks.size()) object_assigned = true;
    out.push_back(std::move(ent));
  }
  return out;
}

Eigen::MatrixXd BipartiteGraph::incidence() const {
  std::map<std::string, Eigen::Index> columns;
  for (const auto& e : edges) {
    if (!columns.count(e.entity)) columns.emplace(e.entity, static_cast<Eigen::Index>(columns.size()));
  }
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(sentence_count),
                                            static_cast<Eigen::Index>(columns.size()));
  for (const auto& e : edges) w(static_cast<Eigen::Index>(e.sentence), columns.at(e.entity)) = e.weight;
  return w;
}

BipartiteGraph build_bipartite(std::size_t sentence_count, const std::vector<Entity>& entities,
                               const RoleWeights& weights) {
  BipartiteGraph g;
  g.sentence_count = sentence_count;
  std::map<std::pair<std::size_t, std::string>, std::size_t> index;
  for (const auto& ent : entities) {
    const double w = weights(ent.role);
    auto key = std::make_pair(ent.sentence_index, ent.surface);
    auto it = index.find(key);
    if (it == index.end()) {
      index.emplace(std::move(key), g.edges.size());
      g.edges.push_back({ent.sentence_index, ent.surface, w});
    } else {
      g.edges[it->second].weight = std::max(g.edges[it->second].weight, w);
    }
  }
  return g;
}

BipartiteGraph build_bipartite(const std::vector<TaggedSentence>& sentences, const RoleWeights& weights) {
  std::vector<Entity> entities;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    auto found = extract_entities(sentences[i], i);
    entities.insert(entities.end(), std::make_move_iterator(found.begin()), std::make_move_iterator(found.end()));
  }
  return build_bipartite(sentences.size(), entities, weights);
}

ProjectionGraph project(const BipartiteGraph& graph) {
  ProjectionGraph p;
  p.sentence_count = graph.sentence_count;
  const Eigen::MatrixXd w = graph.incidence();
  // shared(i, j) = sum_e w(i, e) * w(j, e)
  const Eigen::MatrixXd shared = w * w.transpose();
  const auto n = static_cast<Eigen::Index>(graph.sentence_count);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (shared(i, j) > 0.0)
        p.edges.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j),
                           shared(i, j) / static_cast<double>(j - i)});
    }
  }
  return p;
}

double relatedness_score(const ProjectionGraph& projection) {
  if (projection.sentence_count < 2) return 0.0;
  double total = 0.0;
  for (const auto& e : projection.edges) total += e.weight;
  return total / static_cast<double>(projection.sentence_count);
}

std::string dump_graph(const std::vector<Entity>& entities, const ProjectionGraph& projection, double score) {
  std::ostringstream out;
  for (const auto& e : entities)
    out << "  entity " << e.sentence_index << ' ' << to_string(e.role) << " \"" << e.surface << "\"\n";
  for (const auto& e : projection.edges) out << "  edge " << e.from << ' ' << e.to << ' ' << e.weight << '\n';
  out << "  score " << score << '\n';
  return out.str();
}

}  // namespace procx
