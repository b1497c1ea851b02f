#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "support/fixtures.hpp"

using namespace stancekit;

TEST(Text, SplitKeepsEmptyFields) {
  const auto f = text::split("a\t\tb", '\t');
  ASSERT_EQ(f.size(), 3u);
  EXPECT_EQ(f[1], "");
  EXPECT_EQ(text::split_whitespace("  a  b\t c ").size(), 3u);
  EXPECT_TRUE(text::split_whitespace("   ").empty());
}

TEST(Text, TrimAndLower) {
  EXPECT_EQ(text::trim("  x y \t"), "x y");
  EXPECT_EQ(text::to_lower("ProLife #ABC"), "prolife #abc");
  EXPECT_EQ(text::to_lower("Ünïcode"), "Ünïcode");  // bytes >= 0x80 untouched
}

TEST(Text, ExactFormatRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 123456789.123456789, std::log(0.7)}) {
    double back = 0;
    ASSERT_TRUE(text::parse_double(text::format_exact(v), back));
    EXPECT_EQ(back, v);
  }
  EXPECT_EQ(text::format_fixed(0.5), "0.500000");
}

TEST(Text, ParseIntRejectsJunk) {
  int v = 0;
  EXPECT_TRUE(text::parse_int("42", v));
  EXPECT_EQ(v, 42);
  EXPECT_FALSE(text::parse_int("4x", v));
  EXPECT_FALSE(text::parse_int("", v));
}

TEST(Rng, SameSeedSameStream) {
  Rng a(7), b(7), c(8);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.below(1000);
    EXPECT_EQ(x, b.below(1000));
    differs = differs || x != c.below(1000);
  }
  EXPECT_TRUE(differs);
}

TEST(Rng, PermutationIsPermutation) {
  auto p = Rng(3).permutation(50);
  std::vector<std::size_t> sorted = p;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> iota(50);
  std::iota(iota.begin(), iota.end(), 0);
  EXPECT_EQ(sorted, iota);
  EXPECT_NE(p, iota);
}

TEST(Rng, BelowStaysInRange) {
  Rng r(11);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 500; ++i) {
    const auto x = r.below(5);
    ASSERT_LT(x, 5u);
    seen.insert(x);
  }
  EXPECT_EQ(seen.size(), 5u);
}

TEST(FeatureVector, StoresNoZerosAndRejectsNegatives) {
  FeatureVector fv;
  fv.add("u:a", 0);
  EXPECT_TRUE(fv.empty());
  fv.add("u:a");
  fv.add("u:a");
  EXPECT_EQ(fv.get("u:a"), 2);
  EXPECT_THROW(fv.add("u:b", -1), Error);
  fv.set("u:a", 0);
  EXPECT_FALSE(fv.contains("u:a"));
  EXPECT_EQ(feature_namespace("pmi:max:(0.9,1.0]"), "pmi");
}

TEST(Parallel, EveryIndexOnceInOwnSlot) {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += static_cast<int>(i); });
  for (std::size_t i = 0; i < hits.size(); ++i) ASSERT_EQ(hits[i], static_cast<int>(i));
}

TEST(Parallel, RethrowsWorkerException) {
  EXPECT_THROW(parallel_for(100,
                            [](std::size_t i) {
                              if (i == 37) throw Error(ErrorCode::validation, "boom");
                            }),
               Error);
}

TEST(Parallel, ThreadCapFromEnvironment) {
  ::setenv("STANCEKIT_THREADS", "1", 1);
  EXPECT_EQ(worker_count(), 1u);
  ::unsetenv("STANCEKIT_THREADS");
  EXPECT_GE(worker_count(), 1u);
}
