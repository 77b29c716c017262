#include "lscd/hubness.hpp"

#include "lscd/corpus_io.hpp"
#include "lscd/error.hpp"
#include "lscd/kernels.hpp"

#include <algorithm>
#include <fstream>

namespace lscd::hubness {

namespace {

void check(const RowMatrix& a, const RowMatrix& b) {
  if (a.cols() != b.cols()) throw ValidationError("dimension mismatch");
  if (a.rows() < 1 || b.rows() < 1) throw ValidationError("usage sets must be nonempty");
}

}  // namespace

std::vector<Index> nn_assignment(const RowMatrix& a, const RowMatrix& b) {
  check(a, b);
  return kernels::parallel::cross_stats(a, b).row_argmin;
}

DirectionalHubness occurrence_stats(std::span<const Index> assignment, Index n_targets) {
  if (assignment.empty() || n_targets < 1) throw ValidationError("hubness needs queries and targets");
  std::vector<Index> counts(n_targets, 0);
  for (Index j : assignment) {
    if (j < 0 || j >= n_targets) throw ValidationError("neighbour index out of range");
    ++counts[j];
  }
  const Index top = *std::max_element(counts.begin(), counts.end());
  const auto used = static_cast<Index>(std::count_if(counts.begin(), counts.end(), [](Index c) { return c > 0; }));
  const auto queries = static_cast<double>(assignment.size());
  return {static_cast<double>(top) / queries,
          static_cast<double>(n_targets - used) / static_cast<double>(n_targets),
          queries / static_cast<double>(used)};
}

DirectionalHubness directional_hubness(const RowMatrix& a, const RowMatrix& b) {
  return occurrence_stats(nn_assignment(a, b), b.rows());
}

HubnessStats hubness_report(const RowMatrix& a, const RowMatrix& b) {
  check(a, b);
  const auto stats = kernels::parallel::cross_stats(a, b);
  const auto forward = occurrence_stats(stats.row_argmin, b.rows());
  const auto backward = occurrence_stats(stats.col_argmin, a.rows());
  return {(forward.dominant + backward.dominant) / 2.0, (forward.unused + backward.unused) / 2.0,
          (forward.load + backward.load) / 2.0};
}

void write_hubness_csv(const std::vector<HubnessRow>& rows, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << "word,space,dominant_share,unused_share,avg_load\n";
  for (const auto& r : rows)
    out << io::csv_field(r.word) << ',' << r.space << ',' << io::format_real(r.stats.dominant_share) << ','
        << io::format_real(r.stats.unused_share) << ',' << io::format_real(r.stats.avg_load) << '\n';
}

}  // namespace lscd::hubness
