#pragma once

#include "lscd/corpus_io.hpp"
#include "lscd/matrix.hpp"
#include "lscd/types.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace lscd::spaces {

/// Target representation space. `k` is ignored for FULL and DEF (DEF takes
/// its dimension from the definition count); `seed` is used by RAND only.
struct SpaceConfig {
  Space kind = Space::FULL;
  int k = 0;
  std::uint64_t seed = 0;
};

/// Both periods of one word mapped by the same fitted transform.
struct ProjectedPair {
  RowMatrix a;
  RowMatrix b;
  SpaceConfig space;

  [[nodiscard]] Index dimension() const { return a.cols(); }
};

/// Row v -> (delta(v, z_1), ..., delta(v, z_K)).
RowMatrix definition_coordinates(const RowMatrix& usages, const RowMatrix& definitions);

ProjectedPair project_definition_space(const RowMatrix& a, const RowMatrix& b, const io::DefinitionSet& defs);

/// Mean-centred PCA fitted on a stacked usage matrix.
struct PcaModel {
  Eigen::RowVectorXd mean;
  RowMatrix loadings;                   ///< D x k; column c is component c
  Eigen::VectorXd explained_variance;   ///< k values, non-increasing
  Index rank = 0;                       ///< numerical rank of the centred data

  [[nodiscard]] RowMatrix transform(const RowMatrix& x) const;
};

/// Throws DomainError when k exceeds the numerical rank (message carries
/// the achievable maximum) or when all rows are identical.
PcaModel fit_pca_model(const RowMatrix& stacked, int k);

ProjectedPair fit_pca(const RowMatrix& a, const RowMatrix& b, int k);

/// Ascending-order indices of the k retained coordinates.
std::vector<Index> random_dimensions(Index dimension, int k, std::uint64_t seed);

ProjectedPair select_random_dims(const RowMatrix& a, const RowMatrix& b, int k, std::uint64_t seed);

/// [D/2, D/4, ...] with integer halving, keeping values >= floor.
std::vector<int> stress_schedule(int dimension, int floor = 4);

/// Dispatches on config.kind. `defs` must be non-null exactly for DEF.
/// Projected rows that come out all-zero raise DomainError, since cosine
/// metrics cannot be evaluated on them.
ProjectedPair apply_space(const RowMatrix& a, const RowMatrix& b, const SpaceConfig& config,
                          const io::DefinitionSet* defs = nullptr);

/// Each row divided by its L2 norm; zero rows stay zero.
RowMatrix normalize_rows(const RowMatrix& m);

/// How a run picks the space for each word.
struct SpaceRequest {
  Space kind = Space::FULL;
  /// Target dimension for PCA/RAND; nullopt means the word's definition count.
  std::optional<int> fixed_k;
  std::uint64_t master_seed = 0;
  /// Directory holding <word>/definitions.{txt,emb}.
  std::optional<std::filesystem::path> defs_dir;
  /// Scale every usage vector to unit length before the transform.
  bool normalize = true;
};

/// Throws ConfigError when the request cannot work for any word (DEF, or a
/// per-word k, without a definitions directory).
void check_request(const SpaceRequest& request);

/// Per-word space: optionally normalises the usages, derives the RAND seed
/// from (master seed, word, k), loads definitions when needed and applies
/// the transform. Word-specific
/// failures (missing definitions, rank too low) raise DomainError.
ProjectedPair resolve_space(const SpaceRequest& request, const std::string& word, const RowMatrix& a,
                            const RowMatrix& b);

}  // namespace lscd::spaces
