#include <gtest/gtest.h>

#include <random>
#include <set>

#include "cascade/cascade.hpp"
#include "cascade/params.hpp"

using namespace cascade;

namespace {

std::vector<Elem> random_file(std::size_t n, const Field& F, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::vector<Elem> v(n);
  for (auto& e : v) e = rng() % F.order();
  return v;
}

std::size_t col(int d, Subset I) { return subset_index(d).rank(I); }

}  // namespace

TEST(Cascade, InjectionPairsRoot) {
  std::vector<InjectionPair> want = {{5, {5}}, {6, {6}}, {5, {6}}, {5, {5, 6}}, {6, {5, 6}}};
  EXPECT_EQ(enumerate_injection_pairs(4, 4, 6), want);
  EXPECT_TRUE(enumerate_injection_pairs(1, 4, 6).empty());
  std::vector<InjectionPair> two = {{5, {5}}, {6, {6}}, {5, {6}}};
  EXPECT_EQ(enumerate_injection_pairs(2, 4, 6), two);
  EXPECT_TRUE(enumerate_injection_pairs(4, 4, 4).empty());
}

TEST(Cascade, InjectionPairsSatisfyConditions) {
  for (int d = 1; d <= 8; ++d)
    for (int k = 1; k <= d; ++k)
      for (int j = 1; j <= k; ++j) {
        auto pairs = enumerate_injection_pairs(j, k, d);
        std::set<std::pair<int, std::uint32_t>> seen;
        for (const auto& p : pairs) {
          ASSERT_TRUE(p.B.subset_of(Subset::interval(k + 1, d)));
          ASSERT_LT(p.B.size(), j);
          ASSERT_GT(p.x, k);
          ASSERT_LE(p.x, p.B.max());
          ASSERT_TRUE(seen.insert({p.x, p.B.bits()}).second);
        }
        // Children of mode m number (j-m-1) C(d-k+1, j-m).
        for (int m = 0; m < j; ++m) {
          std::size_t c = 0;
          for (const auto& p : pairs) c += child_mode(j, p.B) == m;
          ASSERT_EQ(c, (j - m - 1) * binomial(d - k + 1, j - m)) << d << k << j << m;
        }
      }
}

TEST(Cascade, ChildModeAndSignature) {
  EXPECT_EQ(child_mode(4, {6}), 2);
  EXPECT_EQ(child_mode(4, {5, 6}), 1);
  EXPECT_EQ(child_mode(2, {5}), 0);
  EXPECT_THROW(child_mode(1, {5}), std::invalid_argument);
  EXPECT_EQ(child_signature(Signature(6, 0), {6}), Signature(6, 2));
  EXPECT_EQ(child_signature(Signature(6, 0), {5, 6}), (Signature{2, 2, 2, 2, 2, 3}));
}

TEST(Cascade, SignatureOnlyMattersModTwo) {
  Field F = Field::prime(7);
  SegmentSpec a;
  a.d = 5;
  a.k = 3;
  a.mode = 2;
  a.sigma = {0, 1, 2, 3, 1};
  SegmentSpec b = a;
  for (auto& s : b.sigma) s += 2;
  auto vals = random_file(free_symbols(5, 3, 2).size(), F, 1);
  EXPECT_EQ(build_pre_injection(F, a, vals), build_pre_injection(F, b, vals));
}

TEST(Cascade, TreeRunningExample) {
  auto t = build_tree(4, 6, 4);
  ASSERT_EQ(t.size(), 15u);
  std::vector<int> modes;
  for (const auto& s : t.segments) modes.push_back(s.mode);
  std::vector<int> want = {4, 2, 2, 2, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0};
  EXPECT_EQ(modes, want);
  EXPECT_EQ(t.alpha, 81u);
  EXPECT_EQ(t.segments[0].sigma, Signature(6, 0));
  EXPECT_EQ(t.segments[2].sigma, Signature(6, 2));  // pair (6,{6})
  EXPECT_EQ(t.segments[5].sigma, (Signature{2, 2, 2, 2, 2, 3}));
  for (std::size_t i = 1; i < t.size(); ++i) {
    const auto& s = t.segments[i];
    EXPECT_EQ(s.mode, t[s.parent].mode - s.pair_B.size() - 1);
    EXPECT_EQ(t.child(s.parent, s.pair_x, s.pair_B), static_cast<int>(i));
  }
}

TEST(Cascade, TreeSmallCases) {
  auto mbr = build_tree(3, 5, 1);
  EXPECT_EQ(mbr.size(), 1u);
  EXPECT_EQ(mbr.segments[0].mode, 1);
  auto t = build_tree(3, 4, 2);
  auto ts = t_sequence(3, 4, 2);
  std::vector<BigInt> counts(3, 0);
  for (const auto& s : t.segments) counts[s.mode] += 1;
  EXPECT_EQ(counts, ts);
  EXPECT_THROW(build_tree(3, 4, 4), std::invalid_argument);
}

TEST(Cascade, InjectionMatrixExample) {
  Field F = Field::prime(11);
  auto t = build_tree(4, 6, 4);
  auto file = random_file(file_length(t), F, 3);
  auto sm = build_super_message(F, t, file);
  const SegmentSpec& root = t[0];
  Matrix D = injection_matrix(F, root, sm.pre[0], {6, {6}}, 2);
  // Position (4,{1,2}) carries +v_{6,{1,2,4,6}} (root signature is zero).
  EXPECT_EQ(D(3, col(6, {1, 2})), sm.pre[0](5, col(6, {1, 2, 4, 6})));
  const auto& cols = subset_index(6).of_size(2);
  for (std::size_t c = 0; c < cols.size(); ++c)
    if (!cols[c].disjoint(Subset{6}))
      for (int i = 1; i <= 6; ++i) EXPECT_EQ(D(i - 1, c), 0u);
  Matrix D5 = injection_matrix(F, root, sm.pre[0], {6, {5, 6}}, 1);
  for (std::size_t c = 0; c < D5.cols(); ++c)
    for (int i = 5; i <= 6; ++i) EXPECT_EQ(D5(i - 1, c), 0u);
  EXPECT_FALSE(D5.is_zero());
}

TEST(Cascade, SuperMessageShape) {
  Field F = Field::prime(11);
  auto t = build_tree(4, 6, 4);
  auto zero = build_super_message(F, t, std::vector<Elem>(file_length(t), 0));
  EXPECT_EQ(zero.M().cols(), 81u);
  EXPECT_TRUE(zero.M().is_zero());
  EXPECT_THROW(build_super_message(F, t, std::vector<Elem>(10, 0)), std::invalid_argument);
  EXPECT_THROW(build_super_message(F, t, std::vector<Elem>(325, 0)), std::invalid_argument);
}

TEST(Cascade, FileLayout) {
  auto t = build_tree(4, 6, 4);
  auto layout = file_symbol_layout(t);
  EXPECT_EQ(layout.size(), 324u);
  std::set<std::tuple<int, int, int, std::uint32_t>> seen;
  for (const auto& s : layout)
    EXPECT_TRUE(seen.insert({s.segment, s.symbol.kind, s.symbol.x, s.symbol.set.bits()}).second);
  for (int d = 1; d <= 8; ++d)
    for (int k = 1; k <= d; ++k)
      EXPECT_EQ(file_symbol_layout(build_tree(k, d, 1)).size(), static_cast<std::size_t>(k * (2 * d - k + 1) / 2));
}

TEST(Cascade, StructuralAuditsExhaustive) {
  Field F = Field::prime(11);
  for (int d = 1; d <= 6; ++d)
    for (int k = 1; k <= std::min(d, 4); ++k)
      for (int mu = 1; mu <= k; ++mu) {
        auto t = build_tree(k, d, mu);
        auto sm = build_super_message(F, t, random_file(file_length(t), F, d * 100 + k * 10 + mu));
        auto a = audit_super_message(F, sm);
        ASSERT_TRUE(a.parity) << k << d << mu;
        ASSERT_TRUE(a.admissible) << k << d << mu;
        ASSERT_TRUE(a.primary_complete) << k << d << mu;
        ASSERT_TRUE(a.mode0_bottom_zero) << k << d << mu;
        // Injected entries land on parity positions, never on symbols that are injected again.
        const auto& idx = subset_index(d);
        for (const auto& s : t.segments) {
          Matrix inj = mat_sub(F, sm.post[s.id], sm.pre[s.id]);
          const auto& cols = idx.of_size(s.mode);
          for (std::size_t c = 0; c < cols.size(); ++c)
            for (int i = 1; i <= d; ++i)
              if (inj(i - 1, c)) {
                ASSERT_GT(i, cols[c].max());
                Group g = classify_entry(i, cols[c], k);
                ASSERT_TRUE(g == Group::Upper || g == Group::P);
              }
        }
      }
}

TEST(Cascade, LinearityOfConstruction) {
  Field F = Field::prime(7);
  auto t = build_tree(3, 4, 2);
  auto a = random_file(file_length(t), F, 1), b = random_file(file_length(t), F, 2);
  std::vector<Elem> s(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) s[i] = F.add(a[i], b[i]);
  EXPECT_EQ(build_super_message(F, t, s).M(),
            mat_add(F, build_super_message(F, t, a).M(), build_super_message(F, t, b).M()));
}
