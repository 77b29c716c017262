#include "lscd/kernels.hpp"

#include "lscd/exact_sum.hpp"

#include <omp.h>

#include <limits>

namespace lscd::kernels {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

CrossStats empty_stats(Index rows, Index cols) {
  CrossStats s;
  s.row_min.assign(rows, kInf);
  s.row_argmin.assign(rows, 0);
  s.col_min.assign(cols, kInf);
  s.col_argmin.assign(cols, 0);
  return s;
}

}  // namespace

std::vector<double> squared_norms(const RowMatrix& m) {
  std::vector<double> out(m.rows());
  for (Index i = 0; i < m.rows(); ++i) out[i] = dot(row_span(m, i), row_span(m, i));
  return out;
}

Eigen::RowVectorXd column_means(const RowMatrix& m) {
  Eigen::RowVectorXd mean(m.cols());
  for (Index j = 0; j < m.cols(); ++j) {
    ExactSum acc;
    for (Index i = 0; i < m.rows(); ++i) acc.add(m(i, j));
    mean(j) = acc.value() / static_cast<double>(m.rows());
  }
  return mean;
}

namespace serial {

RowMatrix distance_matrix(const RowMatrix& a, const RowMatrix& b) {
  RowMatrix d(a.rows(), b.rows());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < b.rows(); ++j) d(i, j) = cosine_distance_unchecked(row_span(a, i), row_span(b, j));
  return d;
}

CrossStats cross_stats(const RowMatrix& a, const RowMatrix& b) {
  CrossStats s = empty_stats(a.rows(), b.rows());
  ExactSum total;
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < b.rows(); ++j) {
      const double d = cosine_distance_unchecked(row_span(a, i), row_span(b, j));
      total.add(d);
      if (d < s.row_min[i]) {
        s.row_min[i] = d;
        s.row_argmin[i] = j;
      }
      if (d < s.col_min[j]) {
        s.col_min[j] = d;
        s.col_argmin[j] = i;
      }
    }
  }
  s.sum = total.value();
  return s;
}

}  // namespace serial

namespace parallel {

RowMatrix distance_matrix(const RowMatrix& a, const RowMatrix& b) {
  const auto na = squared_norms(a);
  const auto nb = squared_norms(b);
  RowMatrix d(a.rows(), b.rows());
  const Index rows = a.rows();
  const Index cols = b.rows();
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < rows; ++i) {
    const auto x = row_span(a, i);
    for (Index j = 0; j < cols; ++j) d(i, j) = cosine_from_parts(dot(x, row_span(b, j)), na[i], nb[j]);
  }
  return d;
}

CrossStats cross_stats(const RowMatrix& a, const RowMatrix& b) {
  const auto na = squared_norms(a);
  const auto nb = squared_norms(b);
  const Index rows = a.rows();
  const Index cols = b.rows();
  CrossStats s = empty_stats(rows, cols);
  ExactSum total;

#pragma omp parallel
  {
    std::vector<double> col_min(cols, kInf);
    std::vector<Index> col_arg(cols, 0);
    ExactSum local;

#pragma omp for schedule(static) nowait
    for (Index i = 0; i < rows; ++i) {
      const auto x = row_span(a, i);
      double best = kInf;
      Index best_j = 0;
      for (Index j = 0; j < cols; ++j) {
        const double d = cosine_from_parts(dot(x, row_span(b, j)), na[i], nb[j]);
        local.add(d);
        if (d < best) {
          best = d;
          best_j = j;
        }
        // Rows are visited in increasing i within a thread, so strict < keeps the smallest i.
        if (d < col_min[j]) {
          col_min[j] = d;
          col_arg[j] = i;
        }
      }
      s.row_min[i] = best;
      s.row_argmin[i] = best_j;
    }

#pragma omp critical(lscd_cross_stats_merge)
    {
      total.merge(local);
      for (Index j = 0; j < cols; ++j) {
        if (col_min[j] < s.col_min[j] || (col_min[j] == s.col_min[j] && col_arg[j] < s.col_argmin[j])) {
          s.col_min[j] = col_min[j];
          s.col_argmin[j] = col_arg[j];
        }
      }
    }
  }
  s.sum = total.value();
  return s;
}

}  // namespace parallel

}  // namespace lscd::kernels
