#pragma once

#include "lscd/matrix.hpp"

#include <vector>

namespace lscd::assignment {

/// Minimum-cost assignment of every row to a distinct column (rows <= cols)
/// by the O(n^2 m) shortest-augmenting-path Hungarian method with dual
/// potentials. Returns the column chosen for each row.
std::vector<Index> hungarian(const RowMatrix& cost);

/// Greedy one-to-one matching on a square matrix: repeatedly takes the
/// smallest remaining entry, ties broken by smallest row then smallest
/// column, and deletes its row and column. Returns the column for each row
/// and fills `order` (if non-null) with the rows in selection order.
std::vector<Index> greedy(const RowMatrix& cost, std::vector<Index>* order = nullptr);

}  // namespace lscd::assignment
