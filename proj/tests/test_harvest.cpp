#include <gtest/gtest.h>

#include "support/fixtures.hpp"

using namespace stancekit;

namespace {

Tweet tw(std::string id, std::string text, std::string topic = "",
         TweetSource src = TweetSource::harvested) {
  return {std::move(id), std::move(text), std::move(topic), {}, src};
}

SeedRuleSet abortion_rules() {
  SeedRuleSet r;
  r.add("abortion", StanceLabel::favor, {"#ProChoice"});
  r.add("abortion", StanceLabel::favor, {"#StandWithPP"});
  r.add("abortion", StanceLabel::against, {"#ProLife"});
  r.add("climate", StanceLabel::favor, {"#ActOnClimate"});
  r.add("climate", StanceLabel::against, {"#Hoax", "climate"});
  return r;
}

double jaccard(const std::string& a, const std::string& b) {
  const auto x = unigram_set(a), y = unigram_set(b);
  std::vector<std::string> i;
  std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(i));
  const double u = static_cast<double>(x.size() + y.size() - i.size());
  return u == 0 ? 1.0 : static_cast<double>(i.size()) / u;
}

}  // namespace

TEST(SeedRules, StoredLowercaseAndValidated) {
  SeedRuleSet r;
  r.add("t", StanceLabel::favor, {"#YesAllWomen", " Feminism "});
  EXPECT_EQ(r.rules()[0].terms, (std::vector<std::string>{"#yesallwomen", "feminism"}));
  EXPECT_THROW(r.validate(), Error);  // no AGAINST rule
  r.add("t", StanceLabel::against, {"#antifeminism"});
  EXPECT_NO_THROW(r.validate());
  EXPECT_THROW(r.add("t", StanceLabel::none, {"x"}), Error);
  EXPECT_THROW(r.add("t", StanceLabel::favor, {}), Error);
  EXPECT_THROW(r.add("t", StanceLabel::favor, {"#"}), Error);
}

TEST(MatchRule, Conjunction) {
  const SeedRule hoax{"climate", StanceLabel::against, {"#hoax", "climate"}};
  EXPECT_TRUE(match_rule(tw("1", "Climate change is a #Hoax"), hoax));
  EXPECT_FALSE(match_rule(tw("2", "nothing relevant here"), hoax));
  EXPECT_FALSE(match_rule(tw("3", "#Hoax but no keyword"), hoax));
}

TEST(MatchRule, HashtagBoundary) {
  const SeedRule r{"climate", StanceLabel::against, {"#hoax"}};
  EXPECT_FALSE(match_rule(tw("1", "#hoaxes everywhere"), r));
  EXPECT_FALSE(match_rule(tw("2", "a hoax in words"), r));
  EXPECT_TRUE(match_rule(tw("3", "total #HOAX!"), r));
  EXPECT_TRUE(match_rule(tw("4", "so#hoax"), r));
}

TEST(MatchRule, BareKeywordMatchesHashtagBody) {
  const SeedRule r{"climate", StanceLabel::against, {"#hoax", "climate"}};
  EXPECT_TRUE(match_rule(tw("1", "#climate #hoax"), r));
  EXPECT_FALSE(match_rule(tw("2", "#climatechange #hoax"), r));
  EXPECT_FALSE(match_rule(tw("3", "climates #hoax"), r));
}

TEST(WeakLabel, SingleStanceLabeled) {
  const auto res = weak_label({tw("1", "Rally today #ProChoice")}, abortion_rules());
  ASSERT_EQ(res.labeled.size(), 1u);
  EXPECT_EQ(res.labeled[0].label, StanceLabel::favor);
  EXPECT_EQ(res.labeled[0].tweet.topic, "abortion");
  EXPECT_EQ(res.labeled[0].tweet.gold_stance, StanceLabel::favor);
}

TEST(WeakLabel, BothStancesExcluded) {
  const auto res = weak_label({tw("1", "#ProLife vs #ProChoice debate")}, abortion_rules());
  EXPECT_TRUE(res.labeled.empty());
  EXPECT_EQ(res.conflicted.size(), 1u);
  EXPECT_TRUE(res.unmatched.empty());
}

TEST(WeakLabel, NoMatchGoesToPool) {
  const auto res = weak_label({tw("1", "just lunch")}, abortion_rules());
  EXPECT_TRUE(res.labeled.empty());
  EXPECT_EQ(res.unmatched.size(), 1u);
}

TEST(WeakLabel, TopicRestrictsRules) {
  // Topic-tagged tweets only see their own topic's rules.
  const auto res = weak_label({tw("1", "#ProChoice #ActOnClimate", "climate")}, abortion_rules());
  ASSERT_EQ(res.labeled.size(), 1u);
  EXPECT_EQ(res.labeled[0].tweet.topic, "climate");
  // Untagged tweet claimed by two topics is ambiguous.
  const auto amb = weak_label({tw("2", "#ProChoice #ActOnClimate")}, abortion_rules());
  EXPECT_EQ(amb.conflicted.size(), 1u);
}

TEST(WeakLabel, NeverEmitsDualStanceTweet) {
  std::mt19937_64 g(1);
  const std::vector<std::string> parts = {"#prochoice", "#prolife", "#standwithpp", "word", "#hoax", "climate"};
  std::vector<Tweet> ts;
  for (int i = 0; i < 500; ++i) {
    std::string s;
    for (int k = 0; k < 4; ++k) s += parts[g() % parts.size()] + " ";
    ts.push_back(tw(std::to_string(i), s));
  }
  const auto rules = abortion_rules();
  const auto res = weak_label(ts, rules);
  for (const auto& lt : res.labeled) {
    bool f = false, a = false;
    for (const auto& r : rules.rules())
      if (r.topic == lt.tweet.topic && match_rule(lt.tweet, r))
        (r.stance == StanceLabel::favor ? f : a) = true;
    EXPECT_FALSE(f && a) << lt.tweet.text;
  }
  EXPECT_EQ(res.labeled.size() + res.unmatched.size() + res.conflicted.size(), ts.size());
}

TEST(FilterDuplicates, IdenticalSecondRemoved) {
  const auto out = filter_duplicates({tw("1", "same text here"), tw("2", "same text here")});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].id, "1");
}

TEST(FilterDuplicates, JaccardBoundary) {
  EXPECT_NEAR(jaccard("a b c d e", "a b c d f"), 4.0 / 6.0, 1e-12);
  EXPECT_EQ(filter_duplicates({tw("1", "a b c d e"), tw("2", "a b c d f")}).size(), 2u);
  EXPECT_NEAR(jaccard("a b c d e", "a b c d e f"), 5.0 / 6.0, 1e-12);
  const auto out = filter_duplicates({tw("1", "a b c d e"), tw("2", "a b c d e f")});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].id, "1");
  // Exactly 0.8 counts as a duplicate: |A∩B| = 4, |A∪B| = 5.
  EXPECT_EQ(filter_duplicates({tw("1", "a b c d"), tw("2", "a b c d e")}).size(), 1u);
  // Case-folded.
  EXPECT_EQ(filter_duplicates({tw("1", "A B C"), tw("2", "a b c")}).size(), 1u);
}

TEST(FilterDuplicates, IdempotentAndPairwiseBelowThreshold) {
  std::mt19937_64 g(17);
  std::vector<Tweet> ts;
  for (int i = 0; i < 400; ++i) ts.push_back(tw(std::to_string(i), fixtures::random_string(g, "abcde ", 12)));
  const auto once = filter_duplicates(ts);
  EXPECT_EQ(filter_duplicates(once), once);
  for (std::size_t i = 0; i < once.size(); ++i)
    for (std::size_t j = i + 1; j < once.size(); ++j)
      ASSERT_LT(jaccard(once[i].text, once[j].text), 0.8) << once[i].text << " | " << once[j].text;
  // A brute-force greedy pass agrees with the indexed one.
  std::vector<Tweet> brute;
  for (const auto& t : ts) {
    bool dup = false;
    for (const auto& k : brute) dup = dup || jaccard(t.text, k.text) >= 0.8;
    if (!dup) brute.push_back(t);
  }
  EXPECT_EQ(once, brute);
}

TEST(FilterMinDictionary, Boundary) {
  const WordSet dict = {"we", "are", "the", "world", "one"};
  const auto out = filter_min_dictionary(
      {tw("3", "we are the xyzzy"), tw("4", "we are the world"), tw("r", "one one one one"),
       tw("h", "#we #are #the #world http://we.are"), tw("p", "We, are. THE world!")},
      dict);
  std::vector<std::string> ids;
  for (const auto& t : out) ids.push_back(t.id);
  EXPECT_EQ(ids, (std::vector<std::string>{"4", "r", "p"}));
  EXPECT_THROW(filter_min_dictionary({}, {}), Error);
}

TEST(BalanceClasses, MinRule) {
  std::vector<LabeledTweet> labeled;
  for (int i = 0; i < 100; ++i) labeled.push_back({tw("f" + std::to_string(i), "f", "abortion"), StanceLabel::favor});
  for (int i = 0; i < 80; ++i) labeled.push_back({tw("a" + std::to_string(i), "a", "abortion"), StanceLabel::against});
  std::vector<Tweet> pool;
  for (int i = 0; i < 50; ++i) pool.push_back(tw("o" + std::to_string(i), "o", "climate"));
  for (int i = 0; i < 50; ++i) pool.push_back(tw("r" + std::to_string(i), "r", "", TweetSource::random_pool));
  BalanceConfig cfg;
  cfg.rng_seed = 4;
  const auto out = balance_classes(labeled, pool, cfg);
  std::array<int, 3> counts{};
  int other_topic = 0;
  for (const auto& t : out) {
    ++counts[label_index(*t.gold_stance)];
    EXPECT_EQ(t.topic, "abortion");
    if (t.gold_stance == StanceLabel::none && t.id[0] == 'o') ++other_topic;
  }
  EXPECT_EQ(counts, (std::array<int, 3>{80, 80, 80}));
  EXPECT_EQ(other_topic, 50);  // other topics exhausted before the random pool

  cfg.per_class_cap = 50;
  const auto capped = balance_classes(labeled, pool, cfg);
  counts = {};
  for (const auto& t : capped) ++counts[label_index(*t.gold_stance)];
  EXPECT_EQ(counts, (std::array<int, 3>{50, 50, 50}));

  EXPECT_EQ(balance_classes(labeled, pool, cfg), capped);
  cfg.rng_seed = 5;
  EXPECT_NE(balance_classes(labeled, pool, cfg), capped);
}

TEST(BalanceClasses, SourceOrderConfigurable) {
  std::vector<LabeledTweet> labeled = {{tw("f", "f", "x"), StanceLabel::favor},
                                       {tw("a", "a", "x"), StanceLabel::against}};
  std::vector<Tweet> pool = {tw("o", "o", "y"), tw("r", "r", "", TweetSource::random_pool)};
  BalanceConfig cfg;
  cfg.none_sources = {NoneSource::random_pool, NoneSource::other_topics};
  EXPECT_EQ(balance_classes(labeled, pool, cfg).back().id, "r");
  cfg.none_sources = {NoneSource::other_topics};
  EXPECT_EQ(balance_classes(labeled, pool, cfg).back().id, "o");
}

TEST(BalanceClasses, PoolDeficitIsError) {
  std::vector<LabeledTweet> labeled = {{tw("f1", "f", "x"), StanceLabel::favor},
                                       {tw("f2", "f", "x"), StanceLabel::favor},
                                       {tw("a1", "a", "x"), StanceLabel::against},
                                       {tw("a2", "a", "x"), StanceLabel::against}};
  try {
    balance_classes(labeled, {tw("o", "o", "y")}, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("deficit 1"), std::string::npos) << e.what();
  }
  EXPECT_THROW(balance_classes({labeled[0]}, {tw("o", "o", "y")}, {}), Error);
  // Same-topic tweets are never NONE candidates.
  EXPECT_THROW(balance_classes(labeled, {tw("s1", "s", "x"), tw("s2", "s", "x")}, {}), Error);
}

TEST(RuleReport, CountsAndSamples) {
  const auto rows = rule_report({tw("1", "#ProChoice"), tw("2", "#prochoice now"), tw("3", "#ProLife")},
                                abortion_rules(), 1);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0].matches, 2u);
  EXPECT_EQ(rows[0].sample_ids, (std::vector<std::string>{"1"}));
  EXPECT_EQ(rows[2].matches, 1u);
  EXPECT_EQ(rows[1].matches, 0u);
}
