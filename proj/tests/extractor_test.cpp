#include <gtest/gtest.h>

#include "procx/error.hpp"
#include "procx/markdown.hpp"
#include "procx/pipeline.hpp"

using namespace procx;

namespace {

struct Doc {
  DocumentAnalysis d;
  std::vector<Procedure> run(const std::vector<int>& procedure_chunks) const {
    std::vector<ChunkPrediction> p;
    for (const auto& c : d.chunks.chunks) {
      bool label = false;
      for (int id : procedure_chunks) label |= id == c.id;
      p.push_back({c.id, c.depth, label, 0.0, {}});
    }
    return extract(p, d.chunks, d.tree, d.notes);
  }
  int chunk(std::string_view prefix) const {
    for (const auto& c : d.chunks.chunks)
      if (d.tree.node(c.items.front()).text.rfind(prefix, 0) == 0) return c.id;
    return -1;
  }
};

Doc load(std::string_view md) {
  static const Resources r{RunConfig{}};
  return {analyze_document(parse_markdown(md), r)};
}

}  // namespace

TEST(Extract, FlatListUnderLeadIn) {
  const auto doc = load("# T\n## Setup\nComplete the following steps:\n\n1. Open it.\n2. If asked, click Yes.\n");
  const auto procs = doc.run({doc.chunk("Open it")});
  ASSERT_EQ(procs.size(), 1u);
  EXPECT_EQ(procs[0].sequence_id, "seq-1");
  EXPECT_EQ(procs[0].goal, "Complete the following steps:");
  ASSERT_EQ(procs[0].steps.size(), 2u);
  EXPECT_FALSE(procs[0].steps[0].parent_step_id);
  EXPECT_TRUE(procs[0].steps[0].actionable);
  EXPECT_TRUE(procs[0].steps[1].conditional);
}

TEST(Extract, NestedItemsAreSubSteps) {
  const auto doc = load("# T\n1. One.\n2. Two:\n   1. Two a.\n   2. Two b.\n3. Three.\n");
  const auto procs = doc.run({doc.chunk("One")});
  ASSERT_EQ(procs.size(), 1u);
  std::vector<std::string> ids, parents;
  for (const auto& s : procs[0].steps) {
    ids.push_back(s.step_id);
    parents.push_back(s.parent_step_id.value_or("-"));
  }
  EXPECT_EQ(ids, (std::vector<std::string>{"1", "2", "2.1", "2.2", "3"}));
  EXPECT_EQ(parents, (std::vector<std::string>{"-", "-", "2", "2", "-"}));
  EXPECT_FALSE(procs[0].steps[1].child_procedure_id);

  const auto both = doc.run({doc.chunk("One"), doc.chunk("Two a")});
  ASSERT_EQ(both.size(), 2u);
  EXPECT_EQ(both[0].steps[1].child_procedure_id, std::optional<std::string>("seq-2"));
}

TEST(Extract, HeadingStepsLinkToChildProcedures) {
  std::string md = "# Guide\n## Steps\n";
  for (int i = 1; i <= 8; ++i) md += "### Step " + std::to_string(i) + "\n1. Click Save.\n";
  const auto doc = load(md);
  std::vector<int> all;
  for (const auto& c : doc.d.chunks.chunks) all.push_back(c.id);
  const auto procs = doc.run(all);
  ASSERT_EQ(procs.size(), 10u);  // "Steps", the step headings and eight lists
  const auto& parent = procs[1];
  ASSERT_EQ(parent.steps.size(), 8u);
  EXPECT_EQ(parent.steps[7].text, "Step 8");
  ASSERT_TRUE(parent.steps[7].child_procedure_id);
  const auto& child = *parent.steps[7].child_procedure_id;
  bool found = false;
  for (const auto& p : procs)
    if (p.sequence_id == child) found = p.steps.front().text == "Click Save." && p.goal == "Step 8";
  EXPECT_TRUE(found);
}

TEST(Extract, ParagraphGroupStepsPerSentence) {
  const auto doc = load("# T\n## Fix\nOpen the file. Change the port. Save the file.\n");
  const auto procs = doc.run({doc.chunk("Open the file")});
  ASSERT_EQ(procs.size(), 1u);
  EXPECT_EQ(procs[0].goal, "Fix");
  EXPECT_EQ(procs[0].steps.size(), 3u);
  EXPECT_EQ(procs[0].steps[2].text, "Save the file.");
}

TEST(Extract, GoalFallsBackToTitle) {
  TreeBuilder b("The title");
  DocNode block;
  block.kind = NodeKind::ListBlock;
  const NodeId list = b.add(b.root(), block);
  DocNode item;
  item.kind = NodeKind::ListItem;
  item.text = "Click Save.";
  b.add(list, item);
  static const Resources r{RunConfig{}};
  const Doc doc{analyze_document(std::move(b).build(), r)};
  EXPECT_EQ(doc.run({0}).at(0).goal, "The title");
}

TEST(Serialize, Shapes) {
  EXPECT_EQ(serialize({}), "[]");
  Procedure p{"seq-1", "Do it", {{"1", "Click Save.", true, false, std::nullopt, std::nullopt}}};
  EXPECT_EQ(serialize({p}),
            "[\n  {\n    \"sequenceId\": \"seq-1\",\n    \"goal\": \"Do it\",\n    \"stepList\": [\n      {\n"
            "        \"stepId\": \"1\",\n        \"text\": \"Click Save.\",\n        \"actionable\": true,\n"
            "        \"conditional\": false\n      }\n    ]\n  }\n]");
  p.steps.push_back({"1.1", "Type \"x\".", false, true, "1", std::nullopt});
  EXPECT_EQ(parse_procedures(serialize({p})), std::vector<Procedure>{p});
}

TEST(Links, Dangling) {
  Procedure a{"seq-1", "g", {{"1", "x", true, false, std::nullopt, "seq-9"}}};
  EXPECT_THROW(check_links({a}), DanglingLink);
  a.steps[0].child_procedure_id = "seq-2";
  Procedure b{"seq-2", "g", {{"1", "y", true, false, std::nullopt, "seq-1"}}};
  EXPECT_THROW(check_links({a, b}), DanglingLink);
  b.steps[0].child_procedure_id.reset();
  EXPECT_NO_THROW(check_links({a, b}));
  b.steps.push_back({"2", "z", true, false, "7", std::nullopt});
  EXPECT_THROW(check_links({a, b}), DanglingLink);
}
