#include "procx/chunker.hpp"

#include <algorithm>
#include <sstream>

#include "procx/csv.hpp"
#include "procx/text.hpp"

namespace procx {

std::string_view to_string(ChunkKind kind) {
  switch (kind) {
    case ChunkKind::List: return "list";
    case ChunkKind::HeadingGroup: return "headings";
    case ChunkKind::ParagraphGroup: return "paragraphs";
  }
  return "list";
}

const std::vector<int>& ChunkSet::children_of(NodeId node) const {
  static const std::vector<int> none;
  auto it = child_chunks.find(node);
  return it == child_chunks.end() ? none : it->second;
}

ChunkSet build_chunks(const DocTree& tree) {
  std::vector<Chunk> found;
  for (NodeId id : tree.document_order()) {
    const DocNode& n = tree.node(id);
    if (n.children.empty()) continue;
    if (n.kind == NodeKind::ListBlock) {
      Chunk c;
      c.kind = ChunkKind::List;
      c.items = n.children;
      c.parent = id;
      c.governing = tree.parent(id) == kNoNode ? id : tree.parent(id);
      found.push_back(std::move(c));
      continue;
    }
    Chunk paragraphs;
    paragraphs.kind = ChunkKind::ParagraphGroup;
    std::map<int, Chunk> headings;
    for (NodeId child : n.children) {
      const DocNode& cn = tree.node(child);
      if (cn.kind == NodeKind::Paragraph) {
        paragraphs.items.push_back(child);
      } else if (cn.kind == NodeKind::Heading) {
        Chunk& h = headings[cn.level];
        h.kind = ChunkKind::HeadingGroup;
        h.items.push_back(child);
      }
    }
    if (!paragraphs.items.empty()) found.push_back(std::move(paragraphs));
    for (auto& [level, h] : headings) found.push_back(std::move(h));
    for (auto it = found.rbegin(); it != found.rend() && it->parent == kNoNode; ++it) it->parent = it->governing = id;
  }

  std::stable_sort(found.begin(), found.end(), [&](const Chunk& a, const Chunk& b) {
    return tree.preorder(a.items.front()) < tree.preorder(b.items.front());
  });

  ChunkSet set;
  set.chunk_of_node.assign(tree.size(), -1);
  for (std::size_t i = 0; i < found.size(); ++i) {
    Chunk& c = found[i];
    c.id = static_cast<int>(i);
    c.depth = tree.node(c.items.front()).depth;
    c.context = chunk_context(c, tree);
    for (NodeId item : c.items) set.chunk_of_node[static_cast<std::size_t>(item)] = c.id;
    set.by_level[c.depth].push_back(c.id);
    set.child_chunks[c.governing].push_back(c.id);
  }
  set.chunks = std::move(found);
  return set;
}

std::string chunk_context(const Chunk& chunk, const DocTree& tree) {
  if (chunk.items.empty()) return {};
  const NodeId anchor = chunk.kind == ChunkKind::List ? chunk.parent : chunk.items.front();
  const NodeId prev = tree.previous_sibling(anchor);
  if (prev != kNoNode) {
    const DocNode& p = tree.node(prev);
    if ((p.kind == NodeKind::Paragraph || p.kind == NodeKind::Heading) && !trim(p.text).empty()) {
      const auto sentences = split_sentences(p.text);
      return sentences.empty() ? trim(p.text) : sentences.back();
    }
  }
  const NodeId governing = chunk.governing != kNoNode ? chunk.governing : tree.parent(anchor);
  if (governing == kNoNode || governing == anchor) return {};
  return trim(tree.node(governing).text);
}

int node_sentence_count(const DocNode& node) {
  switch (node.kind) {
    case NodeKind::Heading: return trim(node.text).empty() ? 0 : 1;
    case NodeKind::Paragraph:
    case NodeKind::ListItem: return static_cast<int>(split_sentences(node.text).size());
    default: return 0;
  }
}

int chunk_size(const Chunk& chunk, const DocTree& tree) {
  if (chunk.kind != ChunkKind::ParagraphGroup) return static_cast<int>(chunk.items.size());
  int total = 0;
  for (NodeId item : chunk.items) total += std::max(1, node_sentence_count(tree.node(item)));
  return total;
}

namespace {

int subtree_sentences(const DocTree& tree, NodeId id) {
  int total = node_sentence_count(tree.node(id));
  for (NodeId c : tree.node(id).children) total += subtree_sentences(tree, c);
  return total;
}

}  // namespace

double average_sibling_distance(const Chunk& chunk, const DocTree& tree) {
  if (chunk.items.size() < 2) return 0.0;
  const auto& siblings = tree.node(chunk.parent).children;
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < chunk.items.size(); ++k) {
    const NodeId a = chunk.items[k];
    const NodeId b = chunk.items[k + 1];
    int between = subtree_sentences(tree, a) - node_sentence_count(tree.node(a));
    const int ia = tree.sibling_index(a);
    const int ib = tree.sibling_index(b);
    for (int s = ia + 1; s < ib; ++s) between += subtree_sentences(tree, siblings[static_cast<std::size_t>(s)]);
    total += between;
  }
  return total / static_cast<double>(chunk.items.size() - 1);
}

std::string chunks_to_csv(const ChunkSet& set) {
  std::ostringstream out;
  out << "chunk_id,kind,depth,parent_node,item_count,context\n";
  for (const auto& c : set.chunks)
    out << csv_line({std::to_string(c.id), std::string(to_string(c.kind)), std::to_string(c.depth),
                     std::to_string(c.parent), std::to_string(c.items.size()), c.context})
        << '\n';
  return out.str();
}

std::vector<std::string> check_chunks(const ChunkSet& set, const DocTree& tree) {
  std::vector<std::string> problems;
  std::vector<int> seen(tree.size(), 0);
  for (std::size_t i = 0; i < set.chunks.size(); ++i) {
    const Chunk& c = set.chunks[i];
    const std::string tag = "chunk " + std::to_string(c.id) + ": ";
    if (c.id != static_cast<int>(i)) problems.push_back(tag + "id does not match position");
    if (c.items.empty()) {
      problems.push_back(tag + "no items");
      continue;
    }
    if (i > 0 && tree.preorder(set.chunks[i - 1].items.front()) > tree.preorder(c.items.front()))
      problems.push_back(tag + "out of document order");
    int last = -1;
    for (NodeId item : c.items) {
      ++seen[static_cast<std::size_t>(item)];
      const DocNode& n = tree.node(item);
      if (tree.parent(item) != c.parent) problems.push_back(tag + "item " + std::to_string(item) + " has another parent");
      if (n.depth != c.depth) problems.push_back(tag + "item " + std::to_string(item) + " at another depth");
      if (tree.preorder(item) <= last) problems.push_back(tag + "items out of order");
      last = tree.preorder(item);
      const DocNode& first = tree.node(c.items.front());
      switch (c.kind) {
        case ChunkKind::List:
          if (n.kind != NodeKind::ListItem) problems.push_back(tag + "non-item in list chunk");
          break;
        case ChunkKind::HeadingGroup:
          if (n.kind != NodeKind::Heading || n.level != first.level)
            problems.push_back(tag + "heading group mixes kinds or levels");
          break;
        case ChunkKind::ParagraphGroup:
          if (n.kind != NodeKind::Paragraph) problems.push_back(tag + "non-paragraph in paragraph group");
          break;
      }
    }
    if (c.kind == ChunkKind::List && tree.node(c.parent).children != c.items)
      problems.push_back(tag + "list chunk is not exactly its block's items");
    if (c.kind == ChunkKind::ParagraphGroup) {
      for (NodeId sib : tree.node(c.parent).children)
        if (tree.node(sib).kind == NodeKind::Paragraph &&
            std::find(c.items.begin(), c.items.end(), sib) == c.items.end())
          problems.push_back(tag + "paragraph " + std::to_string(sib) + " of the same parent left out");
    }
  }
  for (const DocNode& n : tree.nodes()) {
    const bool item = n.kind == NodeKind::ListItem || n.kind == NodeKind::Heading || n.kind == NodeKind::Paragraph;
    const int count = seen[static_cast<std::size_t>(n.id)];
    if (item && count != 1)
      problems.push_back("node " + std::to_string(n.id) + ": in " + std::to_string(count) + " chunks");
    if (!item && count != 0) problems.push_back("node " + std::to_string(n.id) + ": not a chunkable kind");
  }
  std::size_t level_total = 0;
  for (const auto& [depth, ids] : set.by_level) level_total += ids.size();
  if (level_total != set.chunks.size()) problems.push_back("by_level does not partition the chunks");
  return problems;
}

}  // namespace procx
