#include "lscd/assignment.hpp"

#include "lscd/error.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>

namespace lscd::assignment {

std::vector<Index> hungarian(const RowMatrix& cost) {
  const Index n = cost.rows();
  const Index m = cost.cols();
  if (n > m) throw ConfigError("hungarian: more rows than columns");
  if (n == 0) return {};

  constexpr double kInf = std::numeric_limits<double>::infinity();
  // 1-based arrays; column 0 is the virtual start of each augmenting path.
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<Index> owner(m + 1, 0), way(m + 1, 0);

  for (Index i = 1; i <= n; ++i) {
    owner[0] = i;
    Index j0 = 0;
    std::vector<double> minv(m + 1, kInf);
    std::vector<char> used(m + 1, 0);
    do {
      used[j0] = 1;
      const Index i0 = owner[j0];
      double delta = kInf;
      Index j1 = 0;
      for (Index j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (Index j = 0; j <= m; ++j) {
        if (used[j]) {
          u[owner[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (owner[j0] != 0);
    do {
      const Index j1 = way[j0];
      owner[j0] = owner[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<Index> col_of_row(n, -1);
  for (Index j = 1; j <= m; ++j)
    if (owner[j] != 0) col_of_row[owner[j] - 1] = j - 1;
  return col_of_row;
}

std::vector<Index> greedy(const RowMatrix& cost, std::vector<Index>* order) {
  const Index n = cost.rows();
  if (cost.cols() != n) throw ConfigError("greedy matching needs a square matrix");
  // Linear index i*n + j orders pairs by (row, column), which is the tie-break.
  std::vector<std::uint64_t> idx(static_cast<std::size_t>(n) * n);
  std::iota(idx.begin(), idx.end(), std::uint64_t{0});
  const double* d = cost.data();
  std::sort(idx.begin(), idx.end(), [d](std::uint64_t x, std::uint64_t y) {
    return d[x] < d[y] || (d[x] == d[y] && x < y);
  });

  std::vector<Index> col_of_row(n, -1);
  std::vector<char> col_taken(n, 0);
  if (order) order->clear();
  Index matched = 0;
  for (std::uint64_t k : idx) {
    const auto i = static_cast<Index>(k / n);
    const auto j = static_cast<Index>(k % n);
    if (col_of_row[i] >= 0 || col_taken[j]) continue;
    col_of_row[i] = j;
    col_taken[j] = 1;
    if (order) order->push_back(i);
    if (++matched == n) break;
  }
  return col_of_row;
}

}  // namespace lscd::assignment
