#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace procx {

using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;

enum class NodeKind { Title, Heading, Paragraph, ListBlock, ListItem, Figure };

std::string_view to_string(NodeKind kind);
std::optional<NodeKind> node_kind_from_string(std::string_view name);

struct DocNode {
  NodeId id = kNoNode;
  NodeKind kind = NodeKind::Paragraph;
  int level = 0;         // Heading only, 1-based
  bool ordered = false;  // ListBlock only
  std::string text;      // empty for ListBlock
  int depth = 0;
  std::vector<NodeId> children;
  bool associated_image = false;
};

/// Hierarchical document representation. Node ids are dense: `nodes[i].id == i`.
/// The parent index and preorder positions are computed on construction and
/// tolerate malformed input so that `validate_tree` can report on it.
class DocTree {
 public:
  DocTree() = default;
  DocTree(std::vector<DocNode> nodes, NodeId root, std::string source_name);

  const std::vector<DocNode>& nodes() const noexcept { return nodes_; }
  const DocNode& node(NodeId id) const { return nodes_.at(static_cast<std::size_t>(id)); }
  std::size_t size() const noexcept { return nodes_.size(); }
  NodeId root() const noexcept { return root_; }
  const std::string& source_name() const noexcept { return source_name_; }

  NodeId parent(NodeId id) const { return parents_.at(static_cast<std::size_t>(id)); }
  /// Position of the node in a preorder walk from the root; -1 if unreachable.
  int preorder(NodeId id) const { return preorder_.at(static_cast<std::size_t>(id)); }
  /// Node ids in preorder (document order).
  const std::vector<NodeId>& document_order() const noexcept { return order_; }

  /// Index of `id` within its parent's child list; -1 for the root.
  int sibling_index(NodeId id) const;
  NodeId previous_sibling(NodeId id) const;
  bool is_ancestor(NodeId ancestor, NodeId descendant) const;
  /// Nearest strict ancestor of kind Heading, or kNoNode.
  NodeId nearest_heading_ancestor(NodeId id) const;

 private:
  std::vector<DocNode> nodes_;
  NodeId root_ = kNoNode;
  std::string source_name_;
  std::vector<NodeId> parents_;
  std::vector<int> preorder_;
  std::vector<NodeId> order_;
};

struct Violation {
  NodeId node = kNoNode;
  std::string message;

  std::string to_string() const;
  bool operator==(const Violation&) const = default;
};

/// Checks every structural invariant of a document tree. Returns an empty list
/// iff the tree is well formed.
std::vector<Violation> validate_tree(const DocTree& tree);

/// Incremental builder used by the parsers. Assigns dense ids and depths.
class TreeBuilder {
 public:
  explicit TreeBuilder(std::string title, std::string source_name = {});

  NodeId root() const noexcept { return 0; }
  NodeId add(NodeId parent, DocNode node);
  DocNode& at(NodeId id) { return nodes_.at(static_cast<std::size_t>(id)); }
  const DocNode& at(NodeId id) const { return nodes_.at(static_cast<std::size_t>(id)); }

  DocTree build() &&;

 private:
  std::vector<DocNode> nodes_;
  std::string source_name_;
};

}  // namespace procx
