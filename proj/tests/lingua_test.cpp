#include <gtest/gtest.h>

#include "procx/detectors.hpp"
#include "procx/tagger.hpp"
#include "procx/text.hpp"
#include "support.hpp"

using namespace procx;

namespace {

TaggedSentence tagged(std::string_view s) { return tag_sentence(s); }

std::string condition_text(std::string_view s) {
  auto t = tagged(s);
  auto c = detect_conditional(t);
  return c ? span_text(t, c->condition) : "<none>";
}

}  // namespace

TEST(SplitSentences, Basics) {
  EXPECT_EQ(split_sentences("Click Start. Type cmd."), (std::vector<std::string>{"Click Start.", "Type cmd."}));
  EXPECT_EQ(split_sentences("Install v2.1.3 on the host.").size(), 1u);
  EXPECT_TRUE(split_sentences("").empty());
  EXPECT_EQ(split_sentences("Use a tool, e.g. Vim. Save it.").size(), 2u);
}

TEST(Tokenize, KeepsInternalPunctuation) {
  EXPECT_EQ(tokenize("Open x.png, then quit."),
            (std::vector<std::string>{"Open", "x.png", ",", "then", "quit", "."}));
  EXPECT_EQ(tokenize("Don't stop"), (std::vector<std::string>{"Do", "n't", "stop"}));
}

TEST(Tagger, LexiconAndSuffixes) {
  EXPECT_EQ(tagged("Click").tokens[0].tag, Tag::VB);
  EXPECT_EQ(pos_tag({"running"}).tokens[0].tag, Tag::VBG);
  EXPECT_EQ(pos_tag({"the"}).tokens[0].tag, Tag::DET);
  EXPECT_EQ(tagged("Step 3: Install the agent").tokens[0].tag, Tag::NOUN);
}

TEST(Tagger, TotalOnArbitraryBytes) {
  testsupport::Dice dice(99);
  for (int n = 0; n < 300; ++n) {
    std::string s;
    const int len = dice.below(40);
    for (int i = 0; i < len; ++i) s.push_back(static_cast<char>(dice.below(256)));
    const auto tokens = tokenize(s);
    const auto t = pos_tag(tokens);
    ASSERT_EQ(t.tokens.size(), tokens.size());
    for (const auto& tok : t.tokens) EXPECT_FALSE(to_string(tok.tag).empty());
  }
}

TEST(Imperative, AnchoredExamples) {
  EXPECT_TRUE(detect_imperative(tagged("Click Start, select ALL Programs")));
  EXPECT_FALSE(detect_imperative(tagged("The user enters the password")));
  EXPECT_TRUE(detect_imperative(tagged("Carefully restart the server.")));
  EXPECT_TRUE(detect_imperative(tagged("Please open the file.")));
  EXPECT_TRUE(detect_imperative(tagged("3. Type the command.")));
  EXPECT_FALSE(detect_imperative(tagged("You restart the server.")));
}

TEST(Conditional, Splits) {
  auto t = tagged("If the problem persists, restart the server.");
  auto c = detect_conditional(t);
  ASSERT_TRUE(c);
  EXPECT_EQ(span_text(t, c->condition), "If the problem persists");
  EXPECT_EQ(span_text(t, c->effect), "restart the server");
  EXPECT_TRUE(c->effect_imperative);

  t = tagged("Restart the server if the problem persists.");
  c = detect_conditional(t);
  ASSERT_TRUE(c);
  EXPECT_EQ(span_text(t, c->condition), "if the problem persists");
  EXPECT_EQ(span_text(t, c->effect), "Restart the server");
  EXPECT_TRUE(c->effect_imperative);

  EXPECT_EQ(condition_text("Click OK."), "<none>");
  EXPECT_EQ(condition_text("In case of doubt, call support."), "In case of doubt");
  EXPECT_EQ(condition_text("Unless told otherwise, keep the default."), "Unless told otherwise");
}

TEST(Conditional, NonImperativeEffect) {
  auto t = tagged("When the job ends, the log is closed.");
  auto c = detect_conditional(t);
  ASSERT_TRUE(c);
  EXPECT_FALSE(c->effect_imperative);
}

TEST(Profile, Examples) {
  EXPECT_EQ(profile(tagged("The service was restarted by the operator.")),
            (Profile{Tense::Past, Voice::Passive, Polarity::Positive}));
  EXPECT_EQ(profile(tagged("Do not delete the file.")).polarity, Polarity::Negative);
  EXPECT_EQ(profile(tagged("Type the command.")), (Profile{Tense::Present, Voice::Active, Polarity::Positive}));
}

TEST(Profile, Deterministic) {
  const auto a = profile(tagged("The operator stopped the service and the backup was started."));
  const auto b = profile(tagged("The operator stopped the service and the backup was started."));
  EXPECT_EQ(a, b);
}
