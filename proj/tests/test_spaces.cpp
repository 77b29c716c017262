#include "lscd/error.hpp"
#include "lscd/metrics.hpp"
#include "lscd/spaces.hpp"

#include "oracles.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace lscd;
using namespace lscd::spaces;

namespace {

io::DefinitionSet make_defs(const RowMatrix& e) {
  io::DefinitionSet d;
  d.word = "w";
  for (Index i = 0; i < e.rows(); ++i) d.texts.push_back("sense " + std::to_string(i));
  d.embeddings = e;
  return d;
}

}  // namespace

TEST(StressSchedule, Examples) {
  EXPECT_EQ(stress_schedule(1024, 4), (std::vector<int>{512, 256, 128, 64, 32, 16, 8, 4}));
  EXPECT_EQ(stress_schedule(768, 4), (std::vector<int>{384, 192, 96, 48, 24, 12, 6}));
  EXPECT_TRUE(stress_schedule(4, 4).empty());
  EXPECT_EQ(stress_schedule(64), (std::vector<int>{32, 16, 8, 4}));
  EXPECT_THROW(stress_schedule(3, 4), ConfigError);
  EXPECT_THROW(stress_schedule(16, 0), ConfigError);
}

TEST(DefinitionSpace, SelfCoordinateIsZero) {
  std::mt19937_64 rng(1);
  const RowMatrix z = test::random_matrix(3, 5, rng);
  const RowMatrix v = z.row(0);
  const RowMatrix c = definition_coordinates(v, z);
  EXPECT_EQ(c(0, 0), 0.0);
  EXPECT_GT(c(0, 1), 0.0);
  EXPECT_GT(c(0, 2), 0.0);
}

TEST(DefinitionSpace, OrthogonalUsageGivesAllOnes) {
  RowMatrix z(3, 4);
  z << 1, 0, 0, 0, 0, 1, 0, 0, 1, 1, 0, 0;
  RowMatrix v(1, 4);
  v << 0, 0, 2, -1;
  const RowMatrix c = definition_coordinates(v, z);
  for (Index k = 0; k < 3; ++k) EXPECT_DOUBLE_EQ(c(0, k), 1.0);
}

TEST(DefinitionSpace, CoordinatesAreCosineDistances) {
  std::mt19937_64 rng(2);
  const RowMatrix z = test::random_matrix(4, 6, rng);
  const RowMatrix a = test::random_matrix(5, 6, rng);
  const RowMatrix b = test::random_matrix(3, 6, rng);
  const auto p = project_definition_space(a, b, make_defs(z));
  ASSERT_EQ(p.dimension(), 4);
  for (Index i = 0; i < a.rows(); ++i)
    for (Index k = 0; k < 4; ++k)
      EXPECT_NEAR(p.a(i, k), oracle::cosine_distance(oracle::row(a, i), oracle::row(z, k)), 1e-12);
  for (Index i = 0; i < b.rows(); ++i)
    for (Index k = 0; k < 4; ++k)
      EXPECT_NEAR(p.b(i, k), oracle::cosine_distance(oracle::row(b, i), oracle::row(z, k)), 1e-12);
}

TEST(Pca, RankOneDataKeepsEuclideanDistances) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  const RowMatrix dir = test::random_matrix(1, 8, rng);
  const RowMatrix mean = test::random_matrix(1, 8, rng);
  RowMatrix a(6, 8), b(5, 8);
  for (Index i = 0; i < 6; ++i) a.row(i) = mean + normal(rng) * dir;
  for (Index i = 0; i < 5; ++i) b.row(i) = mean + normal(rng) * dir;
  const auto p = fit_pca(a, b, 1);
  ASSERT_EQ(p.dimension(), 1);
  EXPECT_LT(oracle::euclidean_distortion(vstack(a, b), vstack(p.a, p.b)), 1e-9);
  EXPECT_THROW(fit_pca(a, b, 2), DomainError);
}

TEST(Pca, RankShortfallMessageNamesMaximum) {
  RowMatrix a(2, 3), b(1, 3);
  a << 1, 0, 0, 2, 0, 0;
  b << 3, 0, 0;
  try {
    fit_pca(a, b, 3);
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("maximum 1"), std::string::npos) << e.what();
  }
}

TEST(Pca, FullRankIsAnIsometryAfterCentring) {
  std::mt19937_64 rng(4);
  const RowMatrix a = test::random_matrix(10, 6, rng);
  const RowMatrix b = test::random_matrix(9, 6, rng);
  const auto p = fit_pca(a, b, 6);
  EXPECT_LT(oracle::euclidean_distortion(vstack(a, b), vstack(p.a, p.b)), 1e-9);
}

TEST(Pca, ComponentsOrderedByVariance) {
  std::mt19937_64 rng(5);
  RowMatrix x = test::random_matrix(40, 5, rng);
  for (Index j = 0; j < 5; ++j) x.col(j) *= static_cast<double>(5 - j);
  const auto model = fit_pca_model(x, 5);
  for (Index c = 1; c < 5; ++c) EXPECT_GE(model.explained_variance(c - 1), model.explained_variance(c));
  // Loadings are orthonormal.
  const RowMatrix gram = model.loadings.transpose() * model.loadings;
  EXPECT_LT((gram - RowMatrix::Identity(5, 5)).cwiseAbs().maxCoeff(), 1e-12);
  // Variance of the projected training data matches the reported values.
  const RowMatrix proj = model.transform(x);
  for (Index c = 0; c < 5; ++c) {
    const double var = proj.col(c).squaredNorm() / 39.0;
    EXPECT_NEAR(var, model.explained_variance(c), 1e-9 * model.explained_variance(0));
  }
}

TEST(Pca, IdenticalUsagesAreDegenerate) {
  RowMatrix a = RowMatrix::Ones(4, 3);
  EXPECT_THROW(fit_pca(a, a, 1), DomainError);
}

TEST(Pca, Deterministic) {
  std::mt19937_64 rng(6);
  const RowMatrix a = test::random_matrix(12, 7, rng);
  const RowMatrix b = test::random_matrix(8, 7, rng);
  const auto p1 = fit_pca(a, b, 3);
  const auto p2 = fit_pca(a, b, 3);
  EXPECT_TRUE(p1.a == p2.a);
  EXPECT_TRUE(p1.b == p2.b);
}

TEST(RandomDims, FullSelectionKeepsCosineDistances) {
  std::mt19937_64 rng(7);
  const RowMatrix a = test::random_matrix(5, 9, rng);
  const RowMatrix b = test::random_matrix(4, 9, rng);
  const auto dims = random_dimensions(9, 9, 3);
  for (Index j = 0; j < 9; ++j) EXPECT_EQ(dims[j], j);
  const auto p = select_random_dims(a, b, 9, 3);
  EXPECT_TRUE(p.a == a);
  EXPECT_TRUE(p.b == b);
  EXPECT_TRUE(metrics::distance_matrix(p.a, p.b) == metrics::distance_matrix(a, b));
}

TEST(RandomDims, DeterministicAndAscending) {
  const auto d1 = random_dimensions(100, 10, 99);
  EXPECT_EQ(d1, random_dimensions(100, 10, 99));
  EXPECT_NE(d1, random_dimensions(100, 10, 100));
  EXPECT_TRUE(std::is_sorted(d1.begin(), d1.end()));
  EXPECT_EQ(std::adjacent_find(d1.begin(), d1.end()), d1.end());
  EXPECT_THROW(random_dimensions(4, 5, 0), ConfigError);
}

TEST(RandomDims, SingleCoordinateCollapsesDistances) {
  RowMatrix a(2, 3), b(2, 3);
  a << 1, 2, 3, 1, -5, 0.5;
  b << 1, 7, -1, 1, 0.1, 9;
  // Every vector has the same positive first coordinate; pick the seed that selects it.
  std::uint64_t seed = 0;
  while (random_dimensions(3, 1, seed)[0] != 0) ++seed;
  const auto p = select_random_dims(a, b, 1, seed);
  EXPECT_TRUE((metrics::distance_matrix(p.a, p.b).array() == 0.0).all());
}

TEST(ApplySpace, FullIsIdentity) {
  std::mt19937_64 rng(8);
  const RowMatrix a = test::random_matrix(4, 5, rng);
  const RowMatrix b = test::random_matrix(3, 5, rng);
  const auto p = apply_space(a, b, {Space::FULL, 0, 0});
  EXPECT_TRUE(p.a == a);
  EXPECT_TRUE(p.b == b);
}

TEST(ApplySpace, DefinitionShapesAndErrors) {
  std::mt19937_64 rng(9);
  const RowMatrix a = test::random_matrix(4, 5, rng);
  const RowMatrix b = test::random_matrix(3, 5, rng);
  const auto defs = make_defs(test::random_matrix(3, 5, rng));
  EXPECT_EQ(apply_space(a, b, {Space::DEF, 0, 0}, &defs).dimension(), 3);
  EXPECT_THROW(apply_space(a, b, {Space::DEF, 0, 0}), ConfigError);
  EXPECT_EQ(apply_space(a, b, {Space::PCA, static_cast<int>(defs.size()), 0}).dimension(), defs.size());
  EXPECT_EQ(apply_space(a, b, {Space::RAND, 2, 1}).dimension(), 2);
}

TEST(ApplySpace, ZeroProjectedRowIsDomainError) {
  RowMatrix a(2, 3), b(1, 3);
  a << 0, 0, 1, 1, 0, 0;
  b << 1, 1, 0;
  std::uint64_t seed = 0;
  while (random_dimensions(3, 2, seed) != std::vector<Index>{0, 1}) ++seed;
  EXPECT_THROW(apply_space(a, b, {Space::RAND, 2, seed}), DomainError);
}

TEST(ResolveSpace, RequestChecks) {
  EXPECT_THROW(check_request({Space::DEF, std::nullopt, 0, std::nullopt}), ConfigError);
  EXPECT_THROW(check_request({Space::PCA, std::nullopt, 0, std::nullopt}), ConfigError);
  EXPECT_NO_THROW(check_request({Space::PCA, 4, 0, std::nullopt}));
  EXPECT_THROW(check_request({Space::RAND, 0, 0, std::nullopt}), ConfigError);
}

TEST(ResolveSpace, RandSeedDependsOnWordNotOrder) {
  std::mt19937_64 rng(10);
  const RowMatrix a = test::random_matrix(4, 32, rng);
  const RowMatrix b = test::random_matrix(4, 32, rng);
  const SpaceRequest req{Space::RAND, 8, 5, std::nullopt};
  const auto x1 = resolve_space(req, "alpha", a, b);
  const auto y = resolve_space(req, "beta", a, b);
  const auto x2 = resolve_space(req, "alpha", a, b);
  EXPECT_TRUE(x1.a == x2.a);
  EXPECT_FALSE(x1.a == y.a);
  EXPECT_THROW(resolve_space({Space::RAND, 64, 5, std::nullopt}, "alpha", a, b), DomainError);
}

TEST(ResolveSpace, MissingDefinitionsIsDomainError) {
  test::TempDir dir("resolve_defs");
  std::mt19937_64 rng(11);
  const RowMatrix a = test::random_matrix(4, 6, rng);
  const SpaceRequest req{Space::DEF, std::nullopt, 0, dir.path()};
  EXPECT_THROW(resolve_space(req, "nowhere", a, a), DomainError);
}

TEST(Normalize, UnitRowsAndZeroRowsKept) {
  RowMatrix m(3, 2);
  m << 3, 4, 0, 0, -2, 0;
  const RowMatrix n = normalize_rows(m);
  EXPECT_DOUBLE_EQ(n(0, 0), 0.6);
  EXPECT_DOUBLE_EQ(n(0, 1), 0.8);
  EXPECT_EQ(n(1, 0), 0.0);
  EXPECT_EQ(n(2, 0), -1.0);
}

TEST(Normalize, ResolveSpaceMakesPrtScaleInvariant) {
  RowMatrix a(2, 2), b(1, 2), a_scaled(2, 2);
  a << 1, 0, 0, 1;
  b << 1, 0;
  a_scaled << 10, 0, 0, 1;
  const SpaceRequest unit;
  SpaceRequest raw;
  raw.normalize = false;
  const auto p1 = resolve_space(unit, "w", a, b);
  const auto p2 = resolve_space(unit, "w", a_scaled, b);
  EXPECT_EQ(metrics::prt(p1.a, p1.b), metrics::prt(p2.a, p2.b));
  // On raw vectors the centroid follows the rescaled usage.
  const auto r2 = resolve_space(raw, "w", a_scaled, b);
  EXPECT_TRUE(r2.a == a_scaled);
  EXPECT_LT(metrics::prt(r2.a, r2.b), metrics::prt(p1.a, p1.b));
}
