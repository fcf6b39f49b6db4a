#include <gtest/gtest.h>

#include "procx/error.hpp"
#include "procx/markdown.hpp"
#include "procx/sdjson.hpp"
#include "support.hpp"

using namespace procx;

namespace {

std::vector<NodeKind> kinds(const DocTree& t) {
  std::vector<NodeKind> out;
  for (NodeId id : t.document_order()) out.push_back(t.node(id).kind);
  return out;
}

}  // namespace

TEST(Sdjson, HeadingWithList) {
  const auto t = parse_sdjson(R"({"version":"sdjson/1","title":"T","elements":[
    {"type":"heading","level":1,"text":"H"},
    {"type":"list","ordered":true,"items":[{"text":"a"},{"text":"b"},{"text":"c"}]}]})");
  EXPECT_TRUE(validate_tree(t).empty());
  using K = NodeKind;
  EXPECT_EQ(kinds(t), (std::vector<K>{K::Title, K::Heading, K::ListBlock, K::ListItem, K::ListItem, K::ListItem}));
  std::vector<int> depths;
  for (NodeId id : t.document_order()) depths.push_back(t.node(id).depth);
  EXPECT_EQ(depths, (std::vector<int>{0, 1, 2, 3, 3, 3}));
}

TEST(Sdjson, NestedSublist) {
  const auto t = parse_sdjson(R"({"title":"T","elements":[{"type":"list","items":[
    {"text":"a"},{"text":"b","sublist":{"items":[{"text":"b1"},{"text":"b2"}]}}]}]})");
  EXPECT_TRUE(validate_tree(t).empty());
  const NodeId b = t.node(1).children[1];
  ASSERT_EQ(t.node(b).children.size(), 1u);
  const auto& nested = t.node(t.node(b).children[0]);
  EXPECT_EQ(nested.kind, NodeKind::ListBlock);
  EXPECT_EQ(nested.depth, t.node(b).depth + 1);
  EXPECT_EQ(nested.children.size(), 2u);
}

TEST(Sdjson, Errors) {
  try {
    parse_sdjson(R"({"elements":[]})");
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("no root title"), std::string::npos);
  }
  try {
    parse_sdjson(R"({"title":"T","elements":[{"type":"list","items":[{"txt":"a"}]}]})");
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.path(), "/elements/0/items/0/text");
  }
  EXPECT_THROW(parse_sdjson(R"({"title":"T","version":"sdjson/9","elements":[]})"), Error);
  EXPECT_THROW(parse_sdjson("{"), SchemaError);
}

TEST(Sdjson, RoundTrip) {
  // sdjson nests by outline position, so round trips are checked on trees in
  // outline form; Markdown output always is.
  testsupport::Dice dice(11);
  static const std::vector<std::string> lines = {"# A", "## B", "### C", "- x. Y z.", "  - y", "1. n",
                                                 "Text here. More text.", ""};
  for (int n = 0; n < 60; ++n) {
    std::string md;
    for (int i = dice.below(25); i > 0; --i) md += dice.pick(lines) + "\n";
    const auto t = parse_markdown(md, "untitled");
    const auto back = parse_sdjson(to_sdjson(t));
    ASSERT_EQ(back.size(), t.size()) << md;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const NodeId a = t.document_order()[i], b = back.document_order()[i];
      EXPECT_EQ(t.node(a).kind, back.node(b).kind);
      EXPECT_EQ(t.node(a).text, back.node(b).text);
      EXPECT_EQ(t.node(a).depth, back.node(b).depth);
    }
  }
}

TEST(TreeJson, RoundTripAndHierarchyError) {
  const auto t = testsupport::random_tree(5);
  EXPECT_EQ(tree_to_json(tree_from_json(tree_to_json(t))), tree_to_json(t));

  // Heading(3) under Heading(1) with a Heading(2) below it.
  const char* inverted = R"({"version":"doctree/1","source":"x","root":0,"nodes":[
    {"id":0,"kind":"title","text":"T","depth":0,"children":[1]},
    {"id":1,"kind":"heading","level":1,"text":"A","depth":1,"children":[2]},
    {"id":2,"kind":"heading","level":3,"text":"B","depth":2,"children":[3]},
    {"id":3,"kind":"heading","level":2,"text":"C","depth":3,"children":[]}]})";
  EXPECT_THROW(tree_from_json(inverted), HierarchyError);
}

TEST(Validate, ReportsViolations) {
  EXPECT_TRUE(validate_tree(testsupport::random_tree(1)).empty());

  std::vector<DocNode> nodes(3);
  nodes[0] = {0, NodeKind::Title, 0, false, "T", 0, {1, 2}, false};
  nodes[1] = {1, NodeKind::Paragraph, 0, false, "p", 1, {2}, false};
  nodes[2] = {2, NodeKind::Paragraph, 0, false, "q", 1, {}, false};
  const auto v = validate_tree(DocTree(nodes, 0, "bad"));
  bool multiple = false;
  for (const auto& x : v) multiple |= x.message == "multiple parents" && x.node == 2;
  EXPECT_TRUE(multiple);
}

TEST(Markdown, HeadingsAndParagraphs) {
  const auto t = parse_markdown("# T\n## Step 1\ntext\n## Step 2\ntext");
  EXPECT_EQ(t.node(t.root()).text, "T");
  const auto& root = t.node(t.root());
  ASSERT_EQ(root.children.size(), 2u);
  for (NodeId h : root.children) {
    EXPECT_EQ(t.node(h).kind, NodeKind::Heading);
    EXPECT_EQ(t.node(h).level, 2);
    ASSERT_EQ(t.node(h).children.size(), 1u);
    EXPECT_EQ(t.node(t.node(h).children[0]).kind, NodeKind::Paragraph);
  }
}

TEST(Markdown, ListsAndImages) {
  auto t = parse_markdown("1. a\n2. b", "doc");
  EXPECT_EQ(t.node(t.root()).text, "doc");
  ASSERT_EQ(t.node(t.root()).children.size(), 1u);
  const auto& block = t.node(t.node(t.root()).children[0]);
  EXPECT_EQ(block.kind, NodeKind::ListBlock);
  EXPECT_TRUE(block.ordered);
  EXPECT_EQ(block.children.size(), 2u);

  t = parse_markdown("# T\n- one ![img](x.png)\n- two\n  - two.a\n");
  const auto& list = t.node(t.node(t.root()).children[0]);
  EXPECT_TRUE(t.node(list.children[0]).associated_image);
  EXPECT_FALSE(t.node(list.children[1]).associated_image);
  EXPECT_EQ(t.node(t.node(list.children[1]).children[0]).kind, NodeKind::ListBlock);

  t = parse_markdown("# T\nSome text.\n\n![fig](f.png)\n");
  EXPECT_TRUE(t.node(t.node(t.root()).children[0]).associated_image);
}

TEST(Markdown, FuzzAlwaysValid) {
  testsupport::Dice dice(7);
  static const std::vector<std::string> lines = {"# A", "## B", "### C", "#### D", "- x", "  - y", "    - z", "1. n",
                                                 "text here.", "", "![i](p.png)", "\t- tab", "####### seven", "*"};
  for (int n = 0; n < 300; ++n) {
    std::string doc;
    const int count = dice.below(30);
    for (int i = 0; i < count; ++i) doc += dice.pick(lines) + "\n";
    const auto v = validate_tree(parse_markdown(doc));
    ASSERT_TRUE(v.empty()) << doc << "\n" << v.front().to_string();
  }
}
