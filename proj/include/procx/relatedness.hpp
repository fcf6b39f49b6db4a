#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "procx/tagger.hpp"

namespace procx {

enum class Role { Subject, Object, Other };
std::string_view to_string(Role role);

/// Edge weight per grammatical role (linear scheme, subject highest).
struct RoleWeights {
  double subject = 3.0;
  double object = 2.0;
  double other = 1.0;

  double operator()(Role role) const noexcept {
    return role == Role::Subject ? subject : role == Role::Object ? object : other;
  }
};

struct Entity {
  std::string surface;  // lowercased noun phrase, determiners stripped
  Role role = Role::Other;
  std::size_t sentence_index = 0;
};

/// Maximal noun-headed runs (adjective/noun modifiers allowed) become entities.
/// Runs ending before the main verb are subjects; the first run after it is
/// the object unless a preposition governs it; everything else is Other.
/// Imperatives have no subject.
std::vector<Entity> extract_entities(const TaggedSentence& s, std::size_t sentence_index = 0);

struct BipartiteEdge {
  std::size_t sentence = 0;
  std::string entity;
  double weight = 0.0;
};

/// Sentence/entity incidence. One edge per (sentence, entity); repeated
/// occurrences keep the highest role weight.
struct BipartiteGraph {
  std::size_t sentence_count = 0;
  std::vector<BipartiteEdge> edges;

  /// Dense incidence matrix: rows are sentences, columns entities in order
  /// of first appearance.
  Eigen::MatrixXd incidence() const;
};

BipartiteGraph build_bipartite(const std::vector<TaggedSentence>& sentences, const RoleWeights& weights = {});
BipartiteGraph build_bipartite(std::size_t sentence_count, const std::vector<Entity>& entities,
                               const RoleWeights& weights = {});

struct ProjectionEdge {
  std::size_t from = 0;  // earlier sentence
  std::size_t to = 0;    // later sentence
  double weight = 0.0;
};

struct ProjectionGraph {
  std::size_t sentence_count = 0;
  std::vector<ProjectionEdge> edges;
};

/// Weighted one-mode projection onto sentences: for i < j sharing entities,
/// weight = sum over shared e of w(e,i) * w(e,j), divided by (j - i).
ProjectionGraph project(const BipartiteGraph& graph);

/// Average out-degree: total edge weight over sentence count (0 for fewer
/// than two sentences).
double relatedness_score(const ProjectionGraph& projection);

/// Human-readable listing used by `--dump-graphs`.
std::string dump_graph(const std::vector<Entity>& entities, const ProjectionGraph& projection, double score);

}  // namespace procx
