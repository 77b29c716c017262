#include "lscd/metrics.hpp"

#include "lscd/assignment.hpp"
#include "lscd/error.hpp"
#include "lscd/exact_sum.hpp"
#include "lscd/kernels.hpp"
#include "lscd/random.hpp"

#include <string>

namespace lscd::metrics {

namespace {

void check_pair(const RowMatrix& a, const RowMatrix& b) {
  if (a.cols() != b.cols())
    throw ValidationError("dimension mismatch: " + std::to_string(a.cols()) + " vs " + std::to_string(b.cols()));
  if (a.rows() < 1 || b.rows() < 1) throw ValidationError("usage sets must be nonempty");
  if (a.cols() < 1) throw ValidationError("dimension must be >= 1");
}

void check_nonzero(const RowMatrix& m, const char* which) {
  for (Index i = 0; i < m.rows(); ++i)
    if ((m.row(i).array() == 0.0).all())
      throw DomainError(std::string("zero vector at row ") + std::to_string(i) + " of " + which +
                        " (cosine undefined)");
}

void check_inputs(const RowMatrix& a, const RowMatrix& b) {
  check_pair(a, b);
  check_nonzero(a, "A");
  check_nonzero(b, "B");
}

RowMatrix select_rows(const RowMatrix& m, const std::vector<std::size_t>& rows) {
  RowMatrix out(static_cast<Index>(rows.size()), m.cols());
  for (std::size_t k = 0; k < rows.size(); ++k) out.row(static_cast<Index>(k)) = m.row(static_cast<Index>(rows[k]));
  return out;
}

SamdResult score_matching(const RowMatrix& dist, const std::vector<Index>& col_of_row,
                          const std::vector<Index>& row_order) {
  SamdResult r;
  ExactSum acc;
  for (Index i : row_order) {
    const Index j = col_of_row[i];
    r.matching.pairs.emplace_back(i, j);
    acc.add(dist(i, j));
  }
  r.score = acc.value() / static_cast<double>(dist.rows());
  return r;
}

}  // namespace

double cosine_distance(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ValidationError("cosine_distance: dimension mismatch");
  const double xx = dot(x, x);
  const double yy = dot(y, y);
  if (xx == 0.0 || yy == 0.0) throw DomainError("cosine distance undefined for a zero vector");
  return kernels::cosine_from_parts(dot(x, y), xx, yy);
}

RowMatrix distance_matrix(const RowMatrix& a, const RowMatrix& b) {
  check_inputs(a, b);
  return kernels::parallel::distance_matrix(a, b);
}

PairSummary pair_summary(const RowMatrix& a, const RowMatrix& b) {
  check_inputs(a, b);
  const auto stats = kernels::parallel::cross_stats(a, b);
  PairSummary s;
  s.apd = stats.sum / (static_cast<double>(a.rows()) * static_cast<double>(b.rows()));
  s.amd = {exact_mean(stats.row_min), exact_mean(stats.col_min)};
  return s;
}

double apd(const RowMatrix& a, const RowMatrix& b) { return pair_summary(a, b).apd; }

double prt(const RowMatrix& a, const RowMatrix& b) {
  check_pair(a, b);
  const Eigen::RowVectorXd ca = kernels::column_means(a);
  const Eigen::RowVectorXd cb = kernels::column_means(b);
  if ((ca.array() == 0.0).all() || (cb.array() == 0.0).all())
    throw DomainError("PRT undefined: zero centroid");
  return kernels::cosine_distance_unchecked({ca.data(), static_cast<std::size_t>(ca.size())},
                                            {cb.data(), static_cast<std::size_t>(cb.size())});
}

DirectionalAMD amd_directional(const RowMatrix& a, const RowMatrix& b) { return pair_summary(a, b).amd; }

double amd(const RowMatrix& a, const RowMatrix& b) { return amd_directional(a, b).symmetric(); }

std::pair<RowMatrix, RowMatrix> subsample_equal(const RowMatrix& a, const RowMatrix& b, std::uint64_t seed) {
  if (a.rows() < 1 || b.rows() < 1) throw ValidationError("subsample_equal: empty usage set");
  if (a.rows() == b.rows()) return {a, b};
  Rng rng(seed);
  if (a.rows() > b.rows())
    return {select_rows(a, sample_indices(a.rows(), b.rows(), rng)), b};
  return {a, select_rows(b, sample_indices(b.rows(), a.rows(), rng))};
}

SamdResult samd_greedy(const RowMatrix& a, const RowMatrix& b, std::uint64_t seed) {
  check_inputs(a, b);
  const auto [sa, sb] = subsample_equal(a, b, seed);
  const RowMatrix dist = kernels::parallel::distance_matrix(sa, sb);
  std::vector<Index> order;
  const auto cols = assignment::greedy(dist, &order);
  return score_matching(dist, cols, order);
}

SamdResult samd_hungarian(const RowMatrix& a, const RowMatrix& b, std::uint64_t seed) {
  check_inputs(a, b);
  const auto [sa, sb] = subsample_equal(a, b, seed);
  const RowMatrix dist = kernels::parallel::distance_matrix(sa, sb);
  const auto cols = assignment::hungarian(dist);
  std::vector<Index> order(cols.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<Index>(i);
  return score_matching(dist, cols, order);
}

double samd(const RowMatrix& a, const RowMatrix& b, std::uint64_t seed, int repetitions,
            MatchingAlgorithm algorithm) {
  if (repetitions < 1) throw ConfigError("repetitions must be >= 1");
  ExactSum acc;
  for (int r = 0; r < repetitions; ++r) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(r);
    acc.add(algorithm == MatchingAlgorithm::Greedy ? samd_greedy(a, b, s).score : samd_hungarian(a, b, s).score);
  }
  return acc.value() / repetitions;
}

}  // namespace lscd::metrics
