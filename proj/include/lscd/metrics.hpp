#pragma once

#include "lscd/matrix.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace lscd::metrics {

/// delta(x, y) = 1 - cos(x, y), in [0, 2]. Throws DomainError on a zero vector.
double cosine_distance(std::span<const double> x, std::span<const double> y);

/// |A| x |B| matrix of cosine distances.
RowMatrix distance_matrix(const RowMatrix& a, const RowMatrix& b);

/// Average pairwise distance over all cross-period pairs.
double apd(const RowMatrix& a, const RowMatrix& b);

/// Cosine distance between the two period centroids.
double prt(const RowMatrix& a, const RowMatrix& b);

struct DirectionalAMD {
  double a_to_b = 0.0;  ///< mean over a of nndist(a, B)
  double b_to_a = 0.0;  ///< mean over b of nndist(b, A)

  [[nodiscard]] double symmetric() const { return (a_to_b + b_to_a) / 2.0; }
};

DirectionalAMD amd_directional(const RowMatrix& a, const RowMatrix& b);
double amd(const RowMatrix& a, const RowMatrix& b);

/// APD and both AMD directions from a single pass over the cross distances.
struct PairSummary {
  double apd = 0.0;
  DirectionalAMD amd;
};

PairSummary pair_summary(const RowMatrix& a, const RowMatrix& b);

/// Samples the larger set down to the size of the smaller one, uniformly
/// without replacement; kept rows stay in their original order. Sets of
/// equal size are returned unchanged and consume no randomness.
std::pair<RowMatrix, RowMatrix> subsample_equal(const RowMatrix& a, const RowMatrix& b, std::uint64_t seed);

/// One-to-one correspondence: pairs[k] = (row in A', row in B').
struct Matching {
  std::vector<std::pair<Index, Index>> pairs;
};

struct SamdResult {
  double score = 0.0;
  Matching matching;
};

/// SAMD with greedy matching (smallest remaining distance first; ties by
/// row then column). Pairs are listed in selection order.
SamdResult samd_greedy(const RowMatrix& a, const RowMatrix& b, std::uint64_t seed);

/// SAMD with the optimal (minimum-mean) one-to-one matching. Pairs are
/// listed by row.
SamdResult samd_hungarian(const RowMatrix& a, const RowMatrix& b, std::uint64_t seed);

enum class MatchingAlgorithm { Greedy, Hungarian };

/// Mean SAMD over `repetitions` samples drawn with seeds seed, seed+1, ...
double samd(const RowMatrix& a, const RowMatrix& b, std::uint64_t seed, int repetitions = 1,
            MatchingAlgorithm algorithm = MatchingAlgorithm::Greedy);

}  // namespace lscd::metrics
