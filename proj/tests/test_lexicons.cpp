#include <gtest/gtest.h>

#include "support/fixtures.hpp"

using namespace stancekit;

namespace {

std::vector<Token> toks(const std::vector<std::string>& words) {
  std::vector<Token> out;
  int i = 1;
  for (const auto& w : words) out.push_back({i++, w, w, "WORD"});
  return out;
}

// Scored lexicon: +3 / -2 / 0 / absent; polarity: pos / neg / absent.
struct Cell {
  std::optional<int> scored;
  int polarity;  // +1, -1, 0 = unlisted
  int expected;
};

}  // namespace

TEST(CategoryLexicon, PrefixAndExactUnion) {
  const fixtures::ToyLexicons lx;
  EXPECT_EQ(lookup_categories("happiness", lx.category), (std::set<std::string>{"posemo"}));
  EXPECT_TRUE(lookup_categories("zebra", lx.category).empty());
  EXPECT_EQ(lookup_categories("mother", lx.category), (std::set<std::string>{"family", "social"}));

  CategoryLexicon lex({"negate", "posemo", "other"});
  lex.add("no*", {"other"});
  lex.add("not", {"negate"});
  lex.add("n*", {"posemo"});
  EXPECT_EQ(lex.lookup("not"), (std::set<std::string>{"negate", "other"}));  // exact + longest prefix
  EXPECT_EQ(lex.lookup("nab"), (std::set<std::string>{"posemo"}));
  EXPECT_EQ(lex.lookup("n"), (std::set<std::string>{"posemo"}));
  EXPECT_THROW(lex.add("x", {"undeclared"}), Error);
}

TEST(CategoryLexicon, NeverReturnsUndeclaredCategory) {
  const fixtures::ToyLexicons lx;
  const std::set<std::string> declared(lx.category.categories().begin(), lx.category.categories().end());
  std::mt19937_64 g(6);
  for (int i = 0; i < 2000; ++i)
    for (const auto& c : lookup_categories(fixtures::random_string(g, "abdghnoprstyl", 9), lx.category))
      ASSERT_TRUE(declared.contains(c)) << c;
}

TEST(CategoryLexicon, LoaderErrors) {
  fixtures::ScratchDir dir("catlex");
  text::write_file(dir / "a.txt", "// only comments\n");
  EXPECT_THROW(load_category_lexicon(dir / "a.txt"), Error);
  text::write_file(dir / "b.txt", "posemo\ngood\tnegemo\n");
  EXPECT_THROW(load_category_lexicon(dir / "b.txt"), Error);
  text::write_file(dir / "c.txt", "posemo\ngood posemo\n");
  EXPECT_THROW(load_category_lexicon(dir / "c.txt"), Error);
}

TEST(ScoredLexicon, RangeAndMultiword) {
  const fixtures::ToyLexicons lx;
  EXPECT_EQ(lx.scored.find("good"), 3);
  EXPECT_EQ(lx.scored.find("no fun"), std::nullopt);
  ScoredLexicon s;
  EXPECT_THROW(s.add("x", 6), Error);
  EXPECT_NO_THROW(s.add("x", -5));
}

TEST(PolarityLexicon, OverlapDropped) {
  const PolarityLexicon p({"a", "both"}, {"b", "both"});
  EXPECT_TRUE(p.positive("a"));
  EXPECT_FALSE(p.positive("both"));
  EXPECT_FALSE(p.negative("both"));
  const fixtures::ToyLexicons lx;
  EXPECT_TRUE(lx.polarity.positive("good"));
  EXPECT_TRUE(lx.polarity.negative("support"));
}

TEST(CombinedSentiment, TruthTable) {
  const std::vector<Cell> cells = {
      {3, 1, 2},   {3, -1, 0},  {3, 0, 1},  {-2, 1, 0}, {-2, -1, -2}, {-2, 0, -1},
      {0, 1, 1},   {0, -1, -1}, {0, 0, 0},  {std::nullopt, 1, 1},     {std::nullopt, -1, -1},
      {std::nullopt, 0, 0},
  };
  for (const auto& c : cells) {
    ScoredLexicon s;
    if (c.scored) s.add("w", *c.scored);
    WordSet pos, neg;
    if (c.polarity > 0) pos.insert("w");
    if (c.polarity < 0) neg.insert("w");
    EXPECT_EQ(combined_sentiment("w", s, PolarityLexicon(pos, neg)), c.expected)
        << "scored=" << (c.scored ? std::to_string(*c.scored) : "absent") << " polarity=" << c.polarity;
  }
}

TEST(CombinedSentiment, ToyLexiconWords) {
  const fixtures::ToyLexicons lx;
  EXPECT_EQ(combined_sentiment("good", lx.scored, lx.polarity), 2);
  EXPECT_EQ(combined_sentiment("support", lx.scored, lx.polarity), 0);  // +2 vs negative list
  EXPECT_EQ(combined_sentiment("happy", lx.scored, lx.polarity), 1);
  EXPECT_EQ(combined_sentiment("fine", lx.scored, lx.polarity), 1);
  EXPECT_EQ(combined_sentiment("sad", lx.scored, lx.polarity), -2);
  EXPECT_EQ(combined_sentiment("zebra", lx.scored, lx.polarity), 0);
}

TEST(CombinedSentiment, Antisymmetric) {
  for (int sc : {-4, -1, 0, 2, 5})
    for (int pol : {-1, 0, 1}) {
      ScoredLexicon s1, s2;
      s1.add("w", sc);
      s2.add("w", -sc);
      WordSet p1, n1;
      if (pol > 0) p1.insert("w");
      if (pol < 0) n1.insert("w");
      EXPECT_EQ(combined_sentiment("w", s1, PolarityLexicon(p1, n1)),
                -combined_sentiment("w", s2, PolarityLexicon(n1, p1)));
    }
}

TEST(Negation, WindowOfTwo) {
  const fixtures::ToyLexicons lx;
  EXPECT_EQ(apply_negation(2, 2, toks({"not", "good"}), lx.category), -2);
  EXPECT_EQ(apply_negation(2, 3, toks({"not", "very", "good"}), lx.category), -2);
  EXPECT_EQ(apply_negation(2, 4, toks({"not", "so", "very", "good"}), lx.category), 2);
  EXPECT_EQ(apply_negation(2, 1, toks({"good", "not"}), lx.category), 2);
  EXPECT_EQ(apply_negation(0, 2, toks({"not", "zebra"}), lx.category), 0);
  EXPECT_EQ(apply_negation(-1, 2, toks({"don't", "hate"}), lx.category), 1);
  EXPECT_EQ(apply_negation(1, 3, toks({"never", ",", "good"}), lx.category), -1);  // punctuation counts
}

TEST(Negation, Involution) {
  const fixtures::ToyLexicons lx;
  const auto t = toks({"never", "not", "good", "bad"});
  for (int s = -2; s <= 2; ++s)
    for (int pos = 1; pos <= 4; ++pos)
      EXPECT_EQ(apply_negation(apply_negation(s, pos, t, lx.category), pos, t, lx.category), s);
}
