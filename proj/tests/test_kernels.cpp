#include "lscd/exact_sum.hpp"
#include "lscd/kernels.hpp"

#include "oracles.hpp"
#include "support.hpp"

#include <gtest/gtest.h>
#include <omp.h>

#include <algorithm>
#include <random>

using namespace lscd;

TEST(ExactSum, OrderIndependent) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  std::vector<double> xs(5000);
  for (auto& x : xs) x = u(rng) * std::pow(10.0, static_cast<int>(rng() % 20) - 10);
  const double forward = exact_sum(xs);
  for (int trial = 0; trial < 5; ++trial) {
    std::shuffle(xs.begin(), xs.end(), rng);
    EXPECT_EQ(exact_sum(xs), forward);
  }
}

TEST(ExactSum, CancellationIsExact) {
  ExactSum s;
  for (double x : {1e100, 1.0, -1e100, 1e-100}) s.add(x);
  EXPECT_EQ(s.value(), 1.0 + 1e-100);
  ExactSum t;
  for (int i = 0; i < 10; ++i) t.add(0.1);
  EXPECT_EQ(t.value(), 1.0);  // naive summation gives 0.9999999999999999
}

TEST(ExactSum, MergeMatchesSingleAccumulator) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  ExactSum all, left, right;
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng);
    all.add(x);
    (i % 3 ? left : right).add(x);
  }
  left.merge(right);
  EXPECT_EQ(left.value(), all.value());
}

TEST(Kernels, SerialDistanceMatrixMatchesBruteForce) {
  std::mt19937_64 rng(5);
  const RowMatrix a = test::random_matrix(5, 7, rng);
  const RowMatrix b = test::random_matrix(7, 7, rng);
  const auto d = kernels::serial::distance_matrix(a, b);
  const auto ref = oracle::distances(a, b);
  for (Index i = 0; i < 5; ++i)
    for (Index j = 0; j < 7; ++j) EXPECT_NEAR(d(i, j), ref[i][j], 1e-12);
}

TEST(Kernels, ParallelMatchesSerialBitForBitAtAnyThreadCount) {
  std::mt19937_64 rng(17);
  const RowMatrix a = test::random_matrix(137, 24, rng);
  const RowMatrix b = test::random_matrix(91, 24, rng);
  const auto ref = kernels::serial::cross_stats(a, b);
  const auto ref_d = kernels::serial::distance_matrix(a, b);
  for (int threads : {1, 2, 3, 8}) {
    omp_set_num_threads(threads);
    const auto s = kernels::parallel::cross_stats(a, b);
    EXPECT_EQ(s.sum, ref.sum) << threads;
    EXPECT_EQ(s.row_min, ref.row_min);
    EXPECT_EQ(s.row_argmin, ref.row_argmin);
    EXPECT_EQ(s.col_min, ref.col_min);
    EXPECT_EQ(s.col_argmin, ref.col_argmin);
    EXPECT_TRUE(kernels::parallel::distance_matrix(a, b) == ref_d);
  }
  omp_set_num_threads(omp_get_num_procs());
}

TEST(Kernels, ColumnArgminTiesResolveToSmallestRowAcrossThreads) {
  // Every row of A is identical, so every column minimum is a tie over all rows.
  RowMatrix a = RowMatrix::Ones(64, 3);
  RowMatrix b(2, 3);
  b << 1, 2, 3, -1, 0, 4;
  for (int threads : {1, 4, 16}) {
    omp_set_num_threads(threads);
    const auto s = kernels::parallel::cross_stats(a, b);
    EXPECT_EQ(s.col_argmin[0], 0);
    EXPECT_EQ(s.col_argmin[1], 0);
  }
  omp_set_num_threads(omp_get_num_procs());
}

TEST(Kernels, SelfDistanceIsExactlyZero) {
  std::mt19937_64 rng(23);
  const RowMatrix a = test::random_matrix(40, 13, rng);
  const auto d = kernels::parallel::distance_matrix(a, a);
  for (Index i = 0; i < a.rows(); ++i) EXPECT_EQ(d(i, i), 0.0);
}
