#include <gtest/gtest.h>

#include "procx/chunker.hpp"
#include "procx/markdown.hpp"
#include "support.hpp"

using namespace procx;

namespace {

const Chunk* find_kind(const ChunkSet& set, ChunkKind kind) {
  for (const auto& c : set.chunks)
    if (c.kind == kind) return &c;
  return nullptr;
}

}  // namespace

TEST(Chunker, EightStepHeadings) {
  std::string md = "# Guide\n## Installing\n";
  for (int i = 1; i <= 8; ++i) md += "### Step " + std::to_string(i) + "\n1. Do it.\n";
  const auto t = parse_markdown(md);
  const auto set = build_chunks(t);
  int groups = 0;
  for (const auto& c : set.chunks)
    if (c.kind == ChunkKind::HeadingGroup && c.items.size() == 8) ++groups;
  EXPECT_EQ(groups, 1);
  EXPECT_TRUE(check_chunks(set, t).empty());
}

TEST(Chunker, NestedListGivesTwoChunks) {
  const auto t = parse_markdown("# T\n1. a\n2. b\n   - b1\n   - b2\n3. c\n4. d\n");
  const auto set = build_chunks(t);
  ASSERT_EQ(set.chunks.size(), 2u);
  EXPECT_EQ(set.chunks[0].items.size(), 4u);
  EXPECT_EQ(set.chunks[1].items.size(), 2u);
  EXPECT_NE(set.chunks[0].depth, set.chunks[1].depth);
  EXPECT_EQ(set.chunks[1].governing, set.chunks[0].items[1]);
}

TEST(Chunker, TitleOnly) {
  EXPECT_TRUE(build_chunks(parse_markdown("# Only a title\n")).chunks.empty());
}

TEST(Chunker, Context) {
  auto t = parse_markdown("# T\n## H\nComplete the following steps:\n\n1. a\n2. b\n");
  auto set = build_chunks(t);
  const Chunk* list = find_kind(set, ChunkKind::List);
  ASSERT_TRUE(list);
  EXPECT_EQ(list->context, "Complete the following steps:");

  t = parse_markdown("# The title\n## A\n## B\n");
  set = build_chunks(t);
  EXPECT_EQ(find_kind(set, ChunkKind::HeadingGroup)->context, "The title");

  TreeBuilder b("");
  DocNode p;
  p.kind = NodeKind::Paragraph;
  p.text = "Alone.";
  b.add(b.root(), p);
  t = std::move(b).build();
  EXPECT_EQ(build_chunks(t).chunks.at(0).context, "");
}

TEST(Chunker, Size) {
  auto t = parse_markdown("# T\n- One.\n- Two. Three.\n- Four.\n");
  auto set = build_chunks(t);
  EXPECT_EQ(chunk_size(set.chunks[0], t), 3);

  t = parse_markdown("# T\nA one. A two.\n\nB one. B two.\n");
  set = build_chunks(t);
  ASSERT_EQ(set.chunks.size(), 1u);
  EXPECT_EQ(set.chunks[0].kind, ChunkKind::ParagraphGroup);
  EXPECT_EQ(chunk_size(set.chunks[0], t), 4);

  std::string md = "# T\n";
  for (int i = 0; i < 8; ++i) md += "## S" + std::to_string(i) + "\n";
  t = parse_markdown(md);
  EXPECT_EQ(chunk_size(build_chunks(t).chunks[0], t), 8);
}

TEST(Chunker, SiblingDistance) {
  // 4 sentences under the first heading, 6 under the second.
  const auto t = parse_markdown(
      "# T\n## A\nOne. Two. Three. Four.\n## B\nOne. Two. Three.\n\nFour. Five. Six.\n## C\nEnd.\n");
  const auto set = build_chunks(t);
  const Chunk* headings = find_kind(set, ChunkKind::HeadingGroup);
  ASSERT_TRUE(headings);
  EXPECT_DOUBLE_EQ(average_sibling_distance(*headings, t), 5.0);
}

TEST(Chunker, OrderedAndIndexed) {
  const auto t = testsupport::random_tree(3);
  const auto set = build_chunks(t);
  for (std::size_t i = 0; i < set.chunks.size(); ++i) {
    EXPECT_EQ(set.chunks[i].id, static_cast<int>(i));
    if (i) {
      EXPECT_LT(t.preorder(set.chunks[i - 1].items[0]), t.preorder(set.chunks[i].items[0]));
    }
  }
}

TEST(Chunker, PartitionFuzz) {
  for (std::uint64_t seed = 100; seed < 200; ++seed) {
    const auto t = testsupport::random_tree(seed);
    const auto v = check_chunks(build_chunks(t), t);
    ASSERT_TRUE(v.empty()) << "seed " << seed << ": " << v.front();
  }
}

TEST(Chunker, CsvDump) {
  const auto t = parse_markdown("# T\nSay \"hi\", then go:\n\n- a\n");
  const auto csv = chunks_to_csv(build_chunks(t));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "chunk_id,kind,depth,parent_node,item_count,context");
  EXPECT_NE(csv.find("\"Say \"\"hi\"\", then go:\""), std::string::npos);
}
