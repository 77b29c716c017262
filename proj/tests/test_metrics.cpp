#include "lscd/error.hpp"
#include "lscd/metrics.hpp"

#include "oracles.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

using namespace lscd;
using namespace lscd::metrics;

namespace {

RowMatrix rows(std::initializer_list<std::initializer_list<double>> values) {
  RowMatrix m(static_cast<Index>(values.size()), static_cast<Index>(values.begin()->size()));
  Index i = 0;
  for (const auto& r : values) {
    Index j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

std::span<const double> span_of(const std::vector<double>& v) { return v; }

const RowMatrix kA = rows({{1, 0}, {0, 1}});
const RowMatrix kB = rows({{1, 0}});

}  // namespace

TEST(CosineDistance, BasicCases) {
  const std::vector<double> e0{1, 0}, e1{0, 1}, neg{-1, 0};
  EXPECT_EQ(cosine_distance(span_of(e0), span_of(e0)), 0.0);
  EXPECT_DOUBLE_EQ(cosine_distance(span_of(e0), span_of(e1)), 1.0);
  EXPECT_DOUBLE_EQ(cosine_distance(span_of(e0), span_of(neg)), 2.0);
}

TEST(CosineDistance, ZeroVectorIsDomainError) {
  const std::vector<double> z{0, 0}, e0{1, 0};
  EXPECT_THROW(cosine_distance(span_of(z), span_of(e0)), DomainError);
}

TEST(CosineDistance, SymmetricAndScaleInvariant) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 50; ++t) {
    const RowMatrix m = test::random_matrix(2, 6, rng);
    const auto x = row_span(m, 0);
    const auto y = row_span(m, 1);
    EXPECT_EQ(cosine_distance(x, y), cosine_distance(y, x));
    const RowMatrix scaled = m.row(0) * 3.7;
    EXPECT_NEAR(cosine_distance(row_span(scaled, 0), y), cosine_distance(x, y), 1e-12);
    const double d = cosine_distance(x, y);
    EXPECT_GE(d, 0.0);
    EXPECT_LE(d, 2.0);
  }
}

TEST(DistanceMatrix, Examples) {
  const auto d1 = distance_matrix(rows({{1, 0}}), rows({{0, 1}}));
  EXPECT_DOUBLE_EQ(d1(0, 0), 1.0);
  const auto d2 = distance_matrix(kA, kB);
  EXPECT_EQ(d2(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(d2(1, 0), 1.0);
}

TEST(DistanceMatrix, DimensionMismatch) {
  EXPECT_THROW(distance_matrix(rows({{1, 0}}), rows({{1, 0, 0}})), ValidationError);
  EXPECT_THROW(apd(rows({{1, 0}}), rows({{1, 0, 0}})), ValidationError);
}

TEST(Apd, Examples) {
  EXPECT_DOUBLE_EQ(apd(rows({{1, 0}}), rows({{0, 1}})), 1.0);
  EXPECT_DOUBLE_EQ(apd(kA, kB), 0.5);
  std::mt19937_64 rng(2);
  const RowMatrix a = test::random_matrix(5, 4, rng);
  EXPECT_NEAR(apd(a, a), oracle::apd(a, a), 1e-12);
  EXPECT_GT(apd(a, a), 0.0);
}

TEST(Prt, Examples) {
  EXPECT_EQ(prt(kA, kA), 0.0);
  EXPECT_NEAR(prt(kA, kB), 1.0 - 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_EQ(prt(rows({{1, 1}}), rows({{2, 2}})), 0.0);
}

TEST(Prt, ZeroCentroidIsDomainError) {
  EXPECT_THROW(prt(rows({{1, 0}, {-1, 0}}), kB), DomainError);
}

TEST(Amd, Examples) {
  const auto self = amd_directional(kA, kA);
  EXPECT_EQ(self.a_to_b, 0.0);
  EXPECT_EQ(self.b_to_a, 0.0);
  const auto d = amd_directional(kA, kB);
  EXPECT_DOUBLE_EQ(d.a_to_b, 0.5);
  EXPECT_EQ(d.b_to_a, 0.0);
  EXPECT_DOUBLE_EQ(amd(kA, kB), 0.25);
}

TEST(Amd, MatchesRowAndColumnMinimaOfDistanceMatrix) {
  std::mt19937_64 rng(4);
  const RowMatrix a = test::random_matrix(6, 5, rng);
  const RowMatrix b = test::random_matrix(6, 5, rng);
  const auto [ab, ba] = oracle::amd_directional(a, b);
  const auto d = amd_directional(a, b);
  EXPECT_NEAR(d.a_to_b, ab, 1e-12);
  EXPECT_NEAR(d.b_to_a, ba, 1e-12);
  EXPECT_EQ(amd(a, b), (d.a_to_b + d.b_to_a) / 2.0);
}

TEST(Amd, NeverExceedsApd) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 200; ++t) {
    const RowMatrix a = test::random_matrix(1 + rng() % 7, 4, rng);
    const RowMatrix b = test::random_matrix(1 + rng() % 7, 4, rng);
    EXPECT_LE(amd(a, b), apd(a, b));
  }
}

TEST(Metrics, SymmetricInArguments) {
  std::mt19937_64 rng(8);
  const RowMatrix a = test::random_matrix(7, 5, rng);
  const RowMatrix b = test::random_matrix(7, 5, rng);
  EXPECT_EQ(apd(a, b), apd(b, a));
  EXPECT_EQ(amd(a, b), amd(b, a));
  EXPECT_EQ(prt(a, b), prt(b, a));
  EXPECT_EQ(samd_greedy(a, b, 1).score, samd_greedy(b, a, 1).score);
  EXPECT_NEAR(samd_hungarian(a, b, 1).score, samd_hungarian(b, a, 1).score, 1e-12);
}

TEST(SubsampleEqual, EqualSizesPassThrough) {
  std::mt19937_64 rng(9);
  const RowMatrix a = test::random_matrix(10, 3, rng);
  const RowMatrix b = test::random_matrix(10, 3, rng);
  const auto [sa, sb] = subsample_equal(a, b, 1);
  EXPECT_TRUE(sa == a);
  EXPECT_TRUE(sb == b);
}

TEST(SubsampleEqual, DeterministicWithoutReplacement) {
  std::mt19937_64 rng(10);
  const RowMatrix a = test::random_matrix(10, 3, rng);
  const RowMatrix b = test::random_matrix(4, 3, rng);
  const auto first = subsample_equal(a, b, 7);
  const auto second = subsample_equal(a, b, 7);
  EXPECT_TRUE(first.first == second.first);
  EXPECT_EQ(first.first.rows(), 4);
  EXPECT_TRUE(first.second == b);
  std::set<Index> used;
  for (Index i = 0; i < first.first.rows(); ++i) {
    Index match = -1;
    for (Index r = 0; r < a.rows(); ++r)
      if (a.row(r) == first.first.row(i)) match = r;
    ASSERT_GE(match, 0) << "sampled row is not a row of A";
    EXPECT_TRUE(used.insert(match).second) << "row drawn twice";
  }
  // Mirror case: B is the larger set.
  const auto mirrored = subsample_equal(b, a, 7);
  EXPECT_TRUE(mirrored.first == b);
  EXPECT_EQ(mirrored.second.rows(), 4);
}

TEST(SubsampleEqual, DifferentSeedsUsuallyDiffer) {
  std::mt19937_64 rng(12);
  const RowMatrix a = test::random_matrix(50, 3, rng);
  const RowMatrix b = test::random_matrix(5, 3, rng);
  int differing = 0;
  for (std::uint64_t s = 0; s < 10; ++s)
    if (!(subsample_equal(a, b, s).first == subsample_equal(a, b, s + 100).first)) ++differing;
  EXPECT_GE(differing, 8);
}

TEST(SamdGreedy, HandTracedExample) {
  const RowMatrix b = rows({{1, 0}, {std::sqrt(2.0) / 2, std::sqrt(2.0) / 2}});
  const auto r = samd_greedy(kA, b, 0);
  ASSERT_EQ(r.matching.pairs.size(), 2u);
  EXPECT_EQ(r.matching.pairs[0], std::make_pair(Index{0}, Index{0}));
  EXPECT_EQ(r.matching.pairs[1], std::make_pair(Index{1}, Index{1}));
  EXPECT_NEAR(r.score, (1.0 - std::sqrt(2.0) / 2.0) / 2.0, 1e-15);
}

TEST(SamdGreedy, SelfMatchingIsZeroAndPicksDiagonal) {
  std::mt19937_64 rng(13);
  const RowMatrix a = test::random_matrix(8, 5, rng);
  const auto r = samd_greedy(a, a, 0);
  EXPECT_EQ(r.score, 0.0);
  for (const auto& [i, j] : r.matching.pairs) EXPECT_EQ(i, j);
}

TEST(SamdGreedy, TieBreaksBySmallestRowThenColumn) {
  // All four distances equal: greedy must take (0,0) then (1,1).
  const RowMatrix a = rows({{1, 0}, {1, 0}});
  const RowMatrix b = rows({{0, 1}, {0, 1}});
  const auto r = samd_greedy(a, b, 0);
  EXPECT_EQ(r.matching.pairs[0], std::make_pair(Index{0}, Index{0}));
  EXPECT_EQ(r.matching.pairs[1], std::make_pair(Index{1}, Index{1}));
}

TEST(SamdGreedy, MatchingIsOneToOneOverSampledSize) {
  std::mt19937_64 rng(14);
  const RowMatrix a = test::random_matrix(9, 4, rng);
  const RowMatrix b = test::random_matrix(5, 4, rng);
  const auto r = samd_greedy(a, b, 3);
  ASSERT_EQ(r.matching.pairs.size(), 5u);
  std::set<Index> rows_used, cols_used;
  for (const auto& [i, j] : r.matching.pairs) {
    EXPECT_TRUE(rows_used.insert(i).second);
    EXPECT_TRUE(cols_used.insert(j).second);
  }
}

TEST(SamdGreedy, NeverBelowOptimalAssignment) {
  std::mt19937_64 rng(15);
  for (int t = 0; t < 300; ++t) {
    const Index n = 1 + static_cast<Index>(rng() % 6);
    const RowMatrix a = test::random_matrix(n, 3, rng);
    const RowMatrix b = test::random_matrix(n, 3, rng);
    const double optimum = oracle::min_assignment_mean(oracle::distances(a, b));
    EXPECT_GE(samd_greedy(a, b, 0).score, optimum - 1e-12);
  }
}

TEST(SamdHungarian, MatchesExhaustiveMinimum) {
  std::mt19937_64 rng(16);
  for (int t = 0; t < 300; ++t) {
    const Index n = 1 + static_cast<Index>(rng() % 6);
    const RowMatrix a = test::random_matrix(n, 1 + rng() % 8, rng);
    const RowMatrix b = test::random_matrix(n, a.cols(), rng);
    EXPECT_NEAR(samd_hungarian(a, b, 0).score, oracle::min_assignment_mean(oracle::distances(a, b)), 1e-12);
  }
}

TEST(SamdHungarian, SelfIsZero) {
  std::mt19937_64 rng(18);
  const RowMatrix a = test::random_matrix(12, 6, rng);
  EXPECT_EQ(samd_hungarian(a, a, 0).score, 0.0);
}

TEST(SamdHungarian, UsesSameSampleAsGreedy) {
  std::mt19937_64 rng(19);
  const RowMatrix a = test::random_matrix(12, 4, rng);
  const RowMatrix b = test::random_matrix(5, 4, rng);
  const auto [sa, sb] = subsample_equal(a, b, 21);
  EXPECT_NEAR(samd_hungarian(a, b, 21).score, oracle::min_assignment_mean(oracle::distances(sa, sb)), 1e-12);
}

TEST(Samd, OrderingAgainstAmdAndApd) {
  std::mt19937_64 rng(20);
  for (int t = 0; t < 300; ++t) {
    const Index n = 1 + static_cast<Index>(rng() % 8);
    const RowMatrix a = test::random_matrix(n, 4, rng);
    const RowMatrix b = test::random_matrix(n, 4, rng);
    const auto d = amd_directional(a, b);
    EXPECT_GE(samd_greedy(a, b, 0).score, std::max(d.a_to_b, d.b_to_a));
    EXPECT_LE(samd_hungarian(a, b, 0).score, apd(a, b));
  }
}

TEST(Samd, RepetitionsAverageConsecutiveSeeds) {
  std::mt19937_64 rng(22);
  const RowMatrix a = test::random_matrix(15, 4, rng);
  const RowMatrix b = test::random_matrix(6, 4, rng);
  const double expected =
      (samd_greedy(a, b, 40).score + samd_greedy(a, b, 41).score + samd_greedy(a, b, 42).score) / 3.0;
  EXPECT_NEAR(samd(a, b, 40, 3), expected, 1e-15);
  EXPECT_THROW(samd(a, b, 40, 0), ConfigError);
}

TEST(Metrics, PermutationInvariantExactly) {
  std::mt19937_64 rng(24);
  const RowMatrix a = test::random_matrix(9, 5, rng);
  const RowMatrix b = test::random_matrix(9, 5, rng);
  std::vector<Index> perm{3, 0, 8, 1, 7, 2, 6, 4, 5};
  const RowMatrix pa = a(perm, Eigen::all);
  EXPECT_EQ(apd(pa, b), apd(a, b));
  EXPECT_EQ(prt(pa, b), prt(a, b));
  EXPECT_EQ(amd(pa, b), amd(a, b));
  EXPECT_EQ(samd_greedy(pa, b, 0).score, samd_greedy(a, b, 0).score);
  EXPECT_NEAR(samd_hungarian(pa, b, 0).score, samd_hungarian(a, b, 0).score, 1e-12);
}

TEST(Metrics, ZeroRowIsDomainError) {
  RowMatrix a = kA;
  a.row(1).setZero();
  EXPECT_THROW(apd(a, kB), DomainError);
  EXPECT_THROW(samd_greedy(a, kB, 0), DomainError);
}
