#pragma once

#include "lscd/matrix.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace lscd::hubness {

/// Entry i is the index of a_i's nearest neighbour in B (smallest index on ties).
std::vector<Index> nn_assignment(const RowMatrix& a, const RowMatrix& b);

struct DirectionalHubness {
  double dominant = 0.0;  ///< share of queries whose neighbour is the most frequent one
  double unused = 0.0;    ///< share of targets never chosen as a neighbour
  double load = 0.0;      ///< queries per distinct neighbour used
};

/// Statistics of an assignment of queries to `n_targets` possible neighbours.
DirectionalHubness occurrence_stats(std::span<const Index> assignment, Index n_targets);

DirectionalHubness directional_hubness(const RowMatrix& a, const RowMatrix& b);

struct HubnessStats {
  double dominant_share = 0.0;
  double unused_share = 0.0;
  double avg_load = 0.0;
};

/// Component-wise mean of both directions.
HubnessStats hubness_report(const RowMatrix& a, const RowMatrix& b);

struct HubnessRow {
  std::string word;
  std::string space;
  HubnessStats stats;
};

/// `word,space,dominant_share,unused_share,avg_load`
void write_hubness_csv(const std::vector<HubnessRow>& rows, const std::filesystem::path& path);

}  // namespace lscd::hubness
