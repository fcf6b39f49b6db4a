#include "procx/doc_tree.hpp"

#include <array>
#include <utility>

namespace procx {

namespace {

constexpr std::array<std::pair<NodeKind, std::string_view>, 6> kKindNames{{
    {NodeKind::Title, "title"},
    {NodeKind::Heading, "heading"},
    {NodeKind::Paragraph, "paragraph"},
    {NodeKind::ListBlock, "list"},
    {NodeKind::ListItem, "item"},
    {NodeKind::Figure, "figure"},
}};

bool valid_id(const DocTree& tree, NodeId id) {
  return id >= 0 && static_cast<std::size_t>(id) < tree.size();
}

}  // namespace

std::string_view to_string(NodeKind kind) {
  for (const auto& [k, name] : kKindNames)
    if (k == kind) return name;
  return "unknown";
}

std::optional<NodeKind> node_kind_from_string(std::string_view name) {
  for (const auto& [k, n] : kKindNames)
    if (n == name) return k;
  return std::nullopt;
}

DocTree::DocTree(std::vector<DocNode> nodes, NodeId root, std::string source_name)
    : nodes_(std::move(nodes)), root_(root), source_name_(std::move(source_name)) {
  const auto n = nodes_.size();
  parents_.assign(n, kNoNode);
  preorder_.assign(n, -1);
  for (const auto& node : nodes_) {
    for (NodeId child : node.children) {
      if (child >= 0 && static_cast<std::size_t>(child) < n &&
          parents_[static_cast<std::size_t>(child)] == kNoNode && child != node.id)
        parents_[static_cast<std::size_t>(child)] = node.id;
    }
  }
  if (root_ < 0 || static_cast<std::size_t>(root_) >= n) return;
  // Iterative preorder; visited guard keeps cyclic input from looping.
  std::vector<NodeId> stack{root_};
  while (!stack.empty()) {
    NodeId id = stack.back();
    stack.pop_back();
    auto& slot = preorder_[static_cast<std::size_t>(id)];
    if (slot != -1) continue;
    slot = static_cast<int>(order_.size());
    order_.push_back(id);
    const auto& children = nodes_[static_cast<std::size_t>(id)].children;
    for (auto it = children.rbegin(); it != children.rend(); ++it)
      if (*it >= 0 && static_cast<std::size_t>(*it) < n) stack.push_back(*it);
  }
}

int DocTree::sibling_index(NodeId id) const {
  NodeId p = parent(id);
  if (p == kNoNode) return -1;
  const auto& siblings = node(p).children;
  for (std::size_t i = 0; i < siblings.size(); ++i)
    if (siblings[i] == id) return static_cast<int>(i);
  return -1;
}

NodeId DocTree::previous_sibling(NodeId id) const {
  int idx = sibling_index(id);
  if (idx <= 0) return kNoNode;
  return node(parent(id)).children[static_cast<std::size_t>(idx - 1)];
}

bool DocTree::is_ancestor(NodeId ancestor, NodeId descendant) const {
  for (NodeId cur = parent(descendant); cur != kNoNode; cur = parent(cur))
    if (cur == ancestor) return true;
  return false;
}

NodeId DocTree::nearest_heading_ancestor(NodeId id) const {
  for (NodeId cur = parent(id); cur != kNoNode; cur = parent(cur))
    if (node(cur).kind == NodeKind::Heading) return cur;
  return kNoNode;
}

std::string Violation::to_string() const {
  return "node " + std::to_string(node) + ": " + message;
}

std::vector<Violation> validate_tree(const DocTree& tree) {
  std::vector<Violation> out;
  const auto& nodes = tree.nodes();

  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].id != static_cast<NodeId>(i))
      out.push_back({static_cast<NodeId>(i), "id does not match position"});

  if (!valid_id(tree, tree.root())) {
    out.push_back({tree.root(), "no root title"});
    return out;
  }

  // Parent counts straight from the child lists, independent of the index.
  std::vector<int> parent_count(nodes.size(), 0);
  for (const auto& node : nodes) {
    for (NodeId child : node.children) {
      if (!valid_id(tree, child)) {
        out.push_back({node.id, "dangling child reference " + std::to_string(child)});
        continue;
      }
      ++parent_count[static_cast<std::size_t>(child)];
    }
  }

  const DocNode& root = tree.node(tree.root());
  if (root.kind != NodeKind::Title) out.push_back({root.id, "root is not a title"});
  if (root.depth != 0) out.push_back({root.id, "root depth is not 0"});
  if (parent_count[static_cast<std::size_t>(root.id)] != 0)
    out.push_back({root.id, "root has a parent"});

  for (const auto& node : nodes) {
    const auto count = parent_count[static_cast<std::size_t>(node.id)];
    if (node.id != root.id) {
      if (count == 0) out.push_back({node.id, "no parent"});
      if (node.kind == NodeKind::Title) out.push_back({node.id, "title below root"});
    }
    if (count > 1) out.push_back({node.id, "multiple parents"});
    if (node.depth < 0) out.push_back({node.id, "negative depth"});
    if (node.kind == NodeKind::Heading && node.level < 1)
      out.push_back({node.id, "heading level below 1"});
  }

  // Cycle detection: every node must be reached exactly once from the root.
  for (const auto& node : nodes)
    if (tree.preorder(node.id) == -1 && parent_count[static_cast<std::size_t>(node.id)] > 0)
      out.push_back({node.id, "unreachable from root (cycle)"});

  for (const auto& node : nodes) {
    for (NodeId child_id : node.children) {
      if (!valid_id(tree, child_id)) continue;
      const DocNode& child = tree.node(child_id);
      if (child.depth != node.depth + 1)
        out.push_back({child.id, "depth is not parent depth + 1"});
      if (child.kind == NodeKind::ListItem && node.kind != NodeKind::ListBlock)
        out.push_back({child.id, "list item outside a list block"});
      if (node.kind == NodeKind::ListBlock && child.kind != NodeKind::ListItem)
        out.push_back({child.id, "non-item child of a list block"});
    }
  }

  // Heading levels along each root-to-leaf path must never decrease.
  for (const auto& node : nodes) {
    if (node.kind != NodeKind::Heading || tree.preorder(node.id) == -1) continue;
    for (NodeId cur = tree.parent(node.id); cur != kNoNode; cur = tree.parent(cur)) {
      const DocNode& anc = tree.node(cur);
      if (anc.kind == NodeKind::Heading) {
        if (anc.level > node.level)
          out.push_back({node.id, "heading level " + std::to_string(node.level) +
                                      " below heading level " + std::to_string(anc.level)});
        break;
      }
      if (cur == tree.root()) break;
    }
  }
  return out;
}

TreeBuilder::TreeBuilder(std::string title, std::string source_name)
    : source_name_(std::move(source_name)) {
  DocNode root;
  root.id = 0;
  root.kind = NodeKind::Title;
  root.text = std::move(title);
  nodes_.push_back(std::move(root));
}

NodeId TreeBuilder::add(NodeId parent, DocNode node) {
  node.id = static_cast<NodeId>(nodes_.size());
  node.depth = at(parent).depth + 1;
  node.children.clear();
  nodes_.push_back(std::move(node));
  at(parent).children.push_back(nodes_.back().id);
  return nodes_.back().id;
}

DocTree TreeBuilder::build() && {
  return DocTree(std::move(nodes_), 0, std::move(source_name_));
}

}  // namespace procx
