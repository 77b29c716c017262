#include "lscd/error.hpp"
#include "lscd/hubness.hpp"
#include "lscd/metrics.hpp"

#include "oracles.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace lscd;
using namespace lscd::hubness;

namespace {

// Four period-1 usages around e0 and five period-2 usages of which only e0
// is close to any of them.
RowMatrix hub_a() {
  RowMatrix a(4, 4);
  a << 1, 0.1, 0, 0,
       1, -0.1, 0, 0,
       1, 0, 0.1, 0,
       1, 0, -0.1, 0;
  return a;
}

RowMatrix hub_b() {
  RowMatrix b(5, 4);
  b << 1, 0, 0, 0,
       0, 0, 0, 1,
       0, 0, 0, -1,
       -1, 0, 0, 0,
       0, 1, 0, 0;
  return b;
}

}  // namespace

TEST(NnAssignment, IdentityOnDistinctRows) {
  std::mt19937_64 rng(1);
  const RowMatrix a = test::random_matrix(7, 5, rng);
  const auto nn = nn_assignment(a, a);
  for (Index i = 0; i < 7; ++i) EXPECT_EQ(nn[i], i);
}

TEST(NnAssignment, BothRowsPickFirstTarget) {
  RowMatrix a(2, 2), b(2, 2);
  a << 1, 0, 0.9, 0.1;
  b << 1, 0, 0, 1;
  EXPECT_EQ(nn_assignment(a, b), (std::vector<Index>{0, 0}));
}

TEST(NnAssignment, MatchesRowArgminOfDistances) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 20; ++t) {
    const RowMatrix a = test::random_matrix(6, 6, rng);
    const RowMatrix b = test::random_matrix(6, 6, rng);
    EXPECT_EQ(nn_assignment(a, b), oracle::row_argmin(oracle::distances(a, b)));
  }
}

TEST(NnAssignment, DimensionMismatch) {
  EXPECT_THROW(nn_assignment(RowMatrix::Ones(2, 3), RowMatrix::Ones(2, 4)), ValidationError);
}

TEST(OccurrenceStats, ClosedForms) {
  const std::vector<Index> single_hub{0, 0, 0, 0};
  auto s = occurrence_stats(single_hub, 5);
  EXPECT_EQ(s.dominant, 1.0);
  EXPECT_EQ(s.unused, 4.0 / 5.0);
  EXPECT_EQ(s.load, 4.0);

  const std::vector<Index> identity{0, 1, 2, 3, 4, 5};
  s = occurrence_stats(identity, 6);
  EXPECT_EQ(s.dominant, 1.0 / 6.0);
  EXPECT_EQ(s.unused, 0.0);
  EXPECT_EQ(s.load, 1.0);

  const std::vector<Index> even{0, 0, 1, 1, 2, 2};
  s = occurrence_stats(even, 6);
  EXPECT_EQ(s.dominant, 2.0 / 6.0);
  EXPECT_EQ(s.unused, 0.5);
  EXPECT_EQ(s.load, 2.0);
}

TEST(DirectionalHubness, SingleHubBothDirections) {
  const auto fwd = directional_hubness(hub_a(), hub_b());
  EXPECT_EQ(fwd.dominant, 1.0);
  EXPECT_EQ(fwd.unused, 0.8);
  EXPECT_EQ(fwd.load, 4.0);
  // Every period-2 usage is equidistant from the four period-1 usages or
  // closest to the first one, so all five queries land on row 0.
  const auto rev = directional_hubness(hub_b(), hub_a());
  EXPECT_EQ(rev.dominant, 1.0);
  EXPECT_EQ(rev.unused, 0.75);
  EXPECT_EQ(rev.load, 5.0);
}

TEST(HubnessReport, MeanOfDirections) {
  const auto r = hubness_report(hub_a(), hub_b());
  EXPECT_EQ(r.dominant_share, 1.0);
  EXPECT_EQ(r.unused_share, (0.8 + 0.75) / 2.0);
  EXPECT_EQ(r.avg_load, 4.5);
  const auto swapped = hubness_report(hub_b(), hub_a());
  EXPECT_EQ(swapped.dominant_share, r.dominant_share);
  EXPECT_EQ(swapped.unused_share, r.unused_share);
  EXPECT_EQ(swapped.avg_load, r.avg_load);
}

TEST(HubnessReport, IdentityPair) {
  std::mt19937_64 rng(3);
  const RowMatrix a = test::random_matrix(8, 5, rng);
  const auto r = hubness_report(a, a);
  EXPECT_EQ(r.dominant_share, 1.0 / 8.0);
  EXPECT_EQ(r.unused_share, 0.0);
  EXPECT_EQ(r.avg_load, 1.0);
}

TEST(HubnessReport, Bounds) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 100; ++t) {
    const RowMatrix a = test::random_matrix(1 + rng() % 10, 4, rng);
    const RowMatrix b = test::random_matrix(1 + rng() % 10, 4, rng);
    const auto d = directional_hubness(a, b);
    EXPECT_GE(d.dominant, 0.0);
    EXPECT_LE(d.dominant, 1.0);
    EXPECT_LE(d.unused, 1.0 - 1.0 / static_cast<double>(b.rows()) + 1e-15);
    EXPECT_GE(d.load, 1.0);
    const double count = d.dominant * static_cast<double>(a.rows());
    EXPECT_NEAR(count, std::round(count), 1e-12);
  }
}
