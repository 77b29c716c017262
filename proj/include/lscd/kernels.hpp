#pragma once

// Pairwise cosine-distance kernels. Each kernel exists twice: a plain serial
// reference that calls cosine_distance() per pair, and an OpenMP version
// that precomputes norms and splits rows of A across threads. Both produce
// bit-identical results for any thread count: per-pair distances are
// computed by the same arithmetic, minima are order-free, and sums go
// through ExactSum.

#include "lscd/matrix.hpp"

#include <cmath>
#include <span>
#include <vector>

namespace lscd::kernels {

/// 1 - cos(x, y) from precomputed parts, clamped to [0, 2].
inline double cosine_from_parts(double xy, double xx, double yy) {
  const double c = xy / std::sqrt(xx * yy);
  const double d = 1.0 - c;
  return d < 0.0 ? 0.0 : (d > 2.0 ? 2.0 : d);
}

/// No zero check; callers validate rows first.
inline double cosine_distance_unchecked(std::span<const double> x, std::span<const double> y) {
  return cosine_from_parts(dot(x, y), dot(x, x), dot(y, y));
}

/// Aggregates over the |A| x |B| cross-distance matrix that every metric
/// except PRT and SAMD needs, computed without materialising the matrix.
struct CrossStats {
  double sum = 0.0;                 ///< exactly rounded sum of all distances
  std::vector<double> row_min;      ///< nndist(a_i, B)
  std::vector<Index> row_argmin;    ///< smallest j attaining row_min
  std::vector<double> col_min;      ///< nndist(b_j, A)
  std::vector<Index> col_argmin;    ///< smallest i attaining col_min
};

std::vector<double> squared_norms(const RowMatrix& m);

namespace serial {
RowMatrix distance_matrix(const RowMatrix& a, const RowMatrix& b);
CrossStats cross_stats(const RowMatrix& a, const RowMatrix& b);
}  // namespace serial

namespace parallel {
RowMatrix distance_matrix(const RowMatrix& a, const RowMatrix& b);
CrossStats cross_stats(const RowMatrix& a, const RowMatrix& b);
}  // namespace parallel

/// Per-column mean with exactly rounded sums.
Eigen::RowVectorXd column_means(const RowMatrix& m);

}  // namespace lscd::kernels
