#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <span>

namespace lscd {

/// Row-major dense matrix; one usage (or definition) vector per row.
/// Stored values originate from float32 files and widen exactly to double.
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using Index = Eigen::Index;

inline std::span<const double> row_span(const RowMatrix& m, Index i) {
  return {m.data() + i * m.cols(), static_cast<std::size_t>(m.cols())};
}

/// Plain sequential dot product. Every cosine in the engine goes through
/// this one function so that dot(x, x) and the squared norm of x agree bit
/// for bit, which makes the self-distance exactly zero.
inline double dot(std::span<const double> x, std::span<const double> y) {
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

/// Stacks `top` over `bottom`; column counts must agree.
inline RowMatrix vstack(const RowMatrix& top, const RowMatrix& bottom) {
  RowMatrix out(top.rows() + bottom.rows(), top.cols());
  out.topRows(top.rows()) = top;
  out.bottomRows(bottom.rows()) = bottom;
  return out;
}

}  // namespace lscd
