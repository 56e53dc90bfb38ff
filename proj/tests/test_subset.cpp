#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "cascade/subset.hpp"

using namespace cascade;

namespace {

// Lex-ordered m-subsets of [1..d] via recursion on sorted element lists.
void enumerate(int d, int m, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == m) {
    out.push_back(cur);
    return;
  }
  for (int x = start; x <= d; ++x) {
    cur.push_back(x);
    enumerate(d, m, x + 1, cur, out);
    cur.pop_back();
  }
}

std::uint64_t pascal(int l, int m) {
  if (m < 0 || m > l) return 0;
  std::vector<std::vector<std::uint64_t>> t(l + 1, std::vector<std::uint64_t>(l + 1, 0));
  for (int i = 0; i <= l; ++i) {
    t[i][0] = 1;
    for (int j = 1; j <= i; ++j) t[i][j] = t[i - 1][j - 1] + (j <= i - 1 ? t[i - 1][j] : 0);
  }
  return t[l][m];
}

}  // namespace

TEST(Subset, LexOrderD4M2) {
  auto s = subsets_lex(4, 2);
  std::vector<Subset> want = {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
  EXPECT_EQ(s, want);
}

TEST(Subset, LexOrderD6M4) {
  auto s = subsets_lex(6, 4);
  ASSERT_EQ(s.size(), 15u);
  EXPECT_EQ(s.front(), Subset({1, 2, 3, 4}));
  EXPECT_EQ(s.back(), Subset({3, 4, 5, 6}));
}

TEST(Subset, EmptySubset) {
  auto s = subsets_lex(5, 0);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_TRUE(s[0].empty());
  EXPECT_EQ(s[0].max(), kMinusInf);
  EXPECT_FALSE(3 <= s[0].max());
}

TEST(Subset, OversizeIsAnError) { EXPECT_THROW(subsets_lex(3, 4), std::invalid_argument); }

TEST(Subset, MatchesRecursiveOracle) {
  for (int d = 0; d <= 8; ++d)
    for (int m = 0; m <= d; ++m) {
      std::vector<std::vector<int>> want;
      std::vector<int> cur;
      enumerate(d, m, 1, cur, want);
      auto got = subsets_lex(d, m);
      ASSERT_EQ(got.size(), want.size());
      ASSERT_EQ(got.size(), pascal(d, m));
      for (std::size_t i = 0; i < got.size(); ++i) ASSERT_EQ(got[i].elements(), want[i]);
      EXPECT_TRUE(std::is_sorted(got.begin(), got.end()));
      EXPECT_EQ(std::adjacent_find(got.begin(), got.end()), got.end());
    }
}

TEST(Subset, RankUnrank) {
  EXPECT_EQ(subset_rank(6, {1, 2, 3, 4}), 0u);
  EXPECT_EQ(subset_unrank(6, 4, 14), Subset({3, 4, 5, 6}));
  auto all = subsets_lex(6, 4);
  EXPECT_EQ(subset_unrank(6, 4, 14), all[14]);
  for (int d = 0; d <= 8; ++d)
    for (int m = 0; m <= d; ++m) {
      const auto& idx = subset_index(d);
      for (std::size_t i = 0; i < binomial(d, m); ++i) {
        Subset s = subset_unrank(d, m, i);
        ASSERT_EQ(subset_rank(d, s), i);
        ASSERT_EQ(idx.rank(s), i);
      }
    }
  EXPECT_THROW(subset_unrank(6, 4, 15), std::out_of_range);
}

TEST(Subset, IndCount) {
  EXPECT_EQ(ind({2, 5, 6}, 5), 2);
  EXPECT_EQ(ind(Subset{}, 4), 0);
  EXPECT_EQ(ind(Subset{}, -7), 0);
  EXPECT_EQ(ind({1, 2, 3, 5, 6}, 6), 5);
  for (Subset s : subsets_lex(7, 3)) {
    EXPECT_EQ(ind(s, s.max()), s.size());
    EXPECT_EQ(ind(s, 0), 0);
    for (int x = 0; x <= 8; ++x) {
      int c = 0;
      for (int y : s.elements()) c += y <= x;
      ASSERT_EQ(ind(s, x), c);
    }
  }
}

TEST(Subset, Binomial) {
  EXPECT_EQ(binomial(6, 4), 15u);
  EXPECT_EQ(binomial(4, -1), 0u);
  EXPECT_EQ(binomial(7, 5), pascal(7, 5));
  EXPECT_EQ(binomial(7, 5), 21u);
  EXPECT_EQ(binomial(3, 5), 0u);
  for (int l = 0; l <= 20; ++l)
    for (int m = 0; m <= l; ++m) ASSERT_EQ(binomial(l, m), pascal(l, m));
}

// Swapping t <= max I for some x > max I moves a column later in lex order.
TEST(Subset, RecoveryColumnOrderProperty) {
  for (int d = 1; d <= 8; ++d)
    for (int m = 1; m <= d; ++m)
      for (Subset I : subsets_lex(d, m))
        for (int x = I.max() + 1; x <= d; ++x)
          for (int t : I.elements()) ASSERT_TRUE(I < I.with(x).without(t));
}

TEST(Subset, SetOperations) {
  Subset a{1, 3, 5}, b{3, 4};
  EXPECT_EQ(a | b, Subset({1, 3, 4, 5}));
  EXPECT_EQ(a & b, Subset({3}));
  EXPECT_EQ(a - b, Subset({1, 5}));
  EXPECT_EQ(Subset::interval(2, 4), Subset({2, 3, 4}));
  EXPECT_TRUE(Subset::interval(5, 4).empty());
  EXPECT_EQ(a.str(), "{1,3,5}");
  EXPECT_EQ(a.min(), 1);
  EXPECT_EQ(a.max(), 5);
}
