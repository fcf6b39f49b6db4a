#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "procx/doc_tree.hpp"

namespace procx {

enum class ChunkKind { List, HeadingGroup, ParagraphGroup };
std::string_view to_string(ChunkKind kind);

/// A candidate procedure: sibling nodes grouped by one of the three rules.
struct Chunk {
  int id = 0;
  ChunkKind kind = ChunkKind::List;
  std::vector<NodeId> items;  // document order
  int depth = 0;              // depth of the items
  std::string context;
  NodeId parent = kNoNode;  // common parent of the items (the ListBlock for lists)
  /// Node the chunk hangs off: the ListBlock's parent for lists, `parent`
  /// otherwise. Propagation links a chunk to the item it is governed by.
  NodeId governing = kNoNode;
};

struct ChunkSet {
  std::vector<Chunk> chunks;  // indexed by id, ordered by first item
  std::map<int, std::vector<int>> by_level;
  /// Chunks governed by each node (the immediately dominated level).
  std::map<NodeId, std::vector<int>> child_chunks;
  /// Owning chunk per node id, -1 for nodes that are never items.
  std::vector<int> chunk_of_node;

  const std::vector<int>& children_of(NodeId node) const;
};

/// Rule a: every ListBlock's items form a chunk. Rule b: headings of equal
/// level under one parent form a chunk. Rule c: all paragraphs under one
/// parent form a chunk. The Title is never an item.
ChunkSet build_chunks(const DocTree& tree);

/// Last sentence of the immediately preceding Paragraph/Heading sibling with
/// text; otherwise the governing node's text; otherwise "".
std::string chunk_context(const Chunk& chunk, const DocTree& tree);

/// Items for lists and heading groups, total sentences for paragraph groups
/// (a paragraph with no sentence counts once).
int chunk_size(const Chunk& chunk, const DocTree& tree);

/// Number of sentences a single node contributes: 1 for a heading with text,
/// the sentence count for paragraphs and list items, 0 otherwise.
int node_sentence_count(const DocNode& node);

/// Sentences strictly between consecutive items, averaged over the pairs:
/// the nested content under the earlier item plus any sibling nodes between
/// the two. 0 for single-item chunks.
double average_sibling_distance(const Chunk& chunk, const DocTree& tree);

/// CSV dump: chunk_id,kind,depth,parent_node,item_count,context
std::string chunks_to_csv(const ChunkSet& set);

/// Partition and shape violations; empty when the chunk set is consistent
/// with the tree.
std::vector<std::string> check_chunks(const ChunkSet& set, const DocTree& tree);

}  // namespace procx
