#include <gtest/gtest.h>

#include "procx/goals.hpp"
#include "procx/relatedness.hpp"
#include "support.hpp"

using namespace procx;

namespace {

std::vector<Entity> worked_example() {
  return {{"administrator", Role::Subject, 0}, {"console", Role::Object, 0},
          {"administrator", Role::Subject, 1}, {"network-tab", Role::Object, 1},
          {"console", Role::Subject, 2},       {"network-tab", Role::Object, 2}};
}

std::vector<std::pair<std::string, Role>> roles(std::string_view s) {
  std::vector<std::pair<std::string, Role>> out;
  for (const auto& e : extract_entities(tag_sentence(s))) out.emplace_back(e.surface, e.role);
  return out;
}

}  // namespace

TEST(Entities, Roles) {
  using P = std::pair<std::string, Role>;
  EXPECT_EQ(roles("The administrator opens the console."),
            (std::vector<P>{{"administrator", Role::Subject}, {"console", Role::Object}}));
  EXPECT_EQ(roles("Click Start."), (std::vector<P>{{"start", Role::Object}}));
  EXPECT_TRUE(roles("Restart it.").empty());
  const auto r = roles("Copy the file to the backup volume.");
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[1], (P{"backup volume", Role::Other}));
}

TEST(Bipartite, MaxWeightPerPair) {
  const auto g = build_bipartite(1, {{"server", Role::Subject, 0}, {"server", Role::Other, 0}});
  ASSERT_EQ(g.edges.size(), 1u);
  EXPECT_DOUBLE_EQ(g.edges[0].weight, 3.0);

  const auto w = build_bipartite(3, worked_example());
  EXPECT_EQ(w.edges.size(), 6u);
  const auto m = w.incidence();
  EXPECT_EQ(m.rows(), 3);
  EXPECT_EQ(m.cols(), 3);
}

TEST(Projection, WorkedExample) {
  const auto p = project(build_bipartite(3, worked_example()));
  ASSERT_EQ(p.edges.size(), 3u);
  std::map<std::pair<std::size_t, std::size_t>, double> w;
  for (const auto& e : p.edges) w[{e.from, e.to}] = e.weight;
  EXPECT_DOUBLE_EQ((w[{0, 1}]), 9.0);
  EXPECT_DOUBLE_EQ((w[{0, 2}]), 3.0);
  EXPECT_DOUBLE_EQ((w[{1, 2}]), 4.0);
  EXPECT_DOUBLE_EQ(relatedness_score(p), 16.0 / 3.0);
}

TEST(Projection, DegenerateCases) {
  EXPECT_TRUE(project(build_bipartite(1, {{"a", Role::Subject, 0}})).edges.empty());
  EXPECT_DOUBLE_EQ(relatedness_score(project(build_bipartite(1, {{"a", Role::Subject, 0}}))), 0.0);
  const auto none = project(build_bipartite(2, {{"a", Role::Subject, 0}, {"b", Role::Subject, 1}}));
  EXPECT_TRUE(none.edges.empty());
  EXPECT_DOUBLE_EQ(relatedness_score(none), 0.0);

  std::vector<Entity> shared;
  for (std::size_t s = 0; s < 2; ++s)
    for (std::string n : {"a", "b", "c"}) shared.push_back({n, Role::Subject, s});
  const auto k3 = project(build_bipartite(2, shared));
  ASSERT_EQ(k3.edges.size(), 1u);
  EXPECT_DOUBLE_EQ(k3.edges[0].weight, 27.0);
}

TEST(Projection, MatchesOracleOnRandomChunks) {
  testsupport::Dice dice(2024);
  const RoleWeights w{5.0, 2.5, 0.5};
  for (int n = 0; n < 200; ++n) {
    std::size_t sentences = 0;
    const auto entities = testsupport::random_entities(dice, sentences);
    const double got = relatedness_score(project(build_bipartite(sentences, entities, w)));
    EXPECT_NEAR(got, testsupport::brute_force_relatedness(sentences, entities, w), 1e-9);
  }
}

TEST(Projection, SentencePath) {
  const std::vector<TaggedSentence> s = {tag_sentence("The administrator opens the console."),
                                         tag_sentence("The administrator closes the console.")};
  // administrator 3*3 + console 2*2 over a gap of 1, averaged over 2 sentences.
  EXPECT_DOUBLE_EQ(relatedness_score(project(build_bipartite(s))), 6.5);
  const auto dump = dump_graph(extract_entities(s[0], 0), project(build_bipartite(s)), 6.5);
  EXPECT_NE(dump.find("edge 0 1 13"), std::string::npos);
}

TEST(Goals, Cues) {
  auto goal = [](std::string_view s) { return annotate_goal(tag_sentence(s), true); };
  EXPECT_EQ(goal("Creating a Service Instance"), (GoalAnnotation{true, GoalCue::GerundOpening}));
  EXPECT_EQ(goal("Method 1: Restart the service"), (GoalAnnotation{true, GoalCue::MethodPrefix}));
  EXPECT_EQ(goal("2.1.5 Linux Large Pages and Oracle Databases"), (GoalAnnotation{false, GoalCue::None}));
  EXPECT_EQ(goal("3.2 Installing the agent"), (GoalAnnotation{true, GoalCue::GerundOpening}));
  EXPECT_FALSE(annotate_goal(tag_sentence("Creating a Service Instance"), false).is_goal);
}

TEST(Goals, CueFile) {
  const auto cues = GoalCues::parse("# comment\ngerund_opening:off\nprefix:Option\n");
  EXPECT_FALSE(annotate_goal(tag_sentence("Creating a thing"), true, cues).is_goal);
  EXPECT_EQ(annotate_goal(tag_sentence("Option A: Use the wizard"), true, cues).cue, GoalCue::MethodPrefix);
  EXPECT_THROW(GoalCues::parse("gerund_opening:maybe\n"), std::exception);
}
