#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "procx/analysis.hpp"
#include "procx/chunker.hpp"
#include "procx/classifier.hpp"
#include "procx/doc_tree.hpp"

namespace procx {

struct Step {
  std::string step_id;
  std::string text;
  bool actionable = false;
  bool conditional = false;
  std::optional<std::string> parent_step_id;
  std::optional<std::string> child_procedure_id;

  bool operator==(const Step&) const = default;
};

struct Procedure {
  std::string sequence_id;
  std::string goal;
  std::vector<Step> steps;

  bool operator==(const Procedure&) const = default;
};

/// One procedure per chunk labeled procedure, in document order ("seq-1",
/// "seq-2", ...). Steps are the chunk's items; list items bring their nested
/// list items along as sub-steps ("2.1") pointing at the enclosing step.
/// Paragraph groups give one step per sentence. A step whose node dominates
/// a procedure chunk links to it through child_procedure_id.
std::vector<Procedure> extract(const std::vector<ChunkPrediction>& predictions, const ChunkSet& set,
                               const DocTree& tree, const std::vector<NodeAnnotation>& notes);

/// Throws DanglingLink when a step link does not resolve or the procedure
/// links contain a cycle.
void check_links(const std::vector<Procedure>& procedures);

/// JSON array, two-space indentation, fixed key order, no trailing newline.
std::string serialize(const std::vector<Procedure>& procedures);
std::vector<Procedure> parse_procedures(std::string_view text);

}  // namespace procx
