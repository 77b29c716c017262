#include "lscd/spaces.hpp"

#include "lscd/error.hpp"
#include "lscd/kernels.hpp"
#include "lscd/metrics.hpp"
#include "lscd/random.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <limits>
#include <string>

namespace lscd::spaces {

namespace {

void check_dims(const RowMatrix& a, const RowMatrix& b) {
  if (a.cols() != b.cols()) throw ValidationError("usage sets have different dimensions");
}

void check_no_zero_rows(const RowMatrix& m, const char* period, Space space) {
  for (Index i = 0; i < m.rows(); ++i)
    if ((m.row(i).array() == 0.0).all())
      throw DomainError(std::string("projection into ") + std::string(to_string(space)) + " maps row " +
                        std::to_string(i) + " of " + period + " to the zero vector");
}

}  // namespace

RowMatrix definition_coordinates(const RowMatrix& usages, const RowMatrix& definitions) {
  if (usages.cols() != definitions.cols())
    throw ValidationError("usage dimension " + std::to_string(usages.cols()) + " does not match definition dimension " +
                          std::to_string(definitions.cols()));
  if (definitions.rows() < 1) throw ValidationError("K must be >= 1");
  return metrics::distance_matrix(usages, definitions);
}

ProjectedPair project_definition_space(const RowMatrix& a, const RowMatrix& b, const io::DefinitionSet& defs) {
  check_dims(a, b);
  if (defs.texts.size() != static_cast<std::size_t>(defs.embeddings.rows()))
    throw ValidationError("definition texts and embeddings are misaligned");
  ProjectedPair out{definition_coordinates(a, defs.embeddings), definition_coordinates(b, defs.embeddings),
                    {Space::DEF, static_cast<int>(defs.embeddings.rows()), 0}};
  return out;
}

RowMatrix PcaModel::transform(const RowMatrix& x) const {
  return (x.rowwise() - mean) * loadings;
}

PcaModel fit_pca_model(const RowMatrix& stacked, int k) {
  const Index n = stacked.rows();
  const Index d = stacked.cols();
  if (k < 1) throw ConfigError("PCA needs k >= 1");
  if (n < 2) throw DomainError("PCA needs at least 2 usages");

  PcaModel model;
  model.mean = kernels::column_means(stacked);
  const Eigen::MatrixXd centred = stacked.rowwise() - model.mean;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(centred, Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();

  const double tol = sv.size() > 0 ? sv(0) * static_cast<double>(std::max(n, d)) * std::numeric_limits<double>::epsilon()
                                   : 0.0;
  model.rank = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol) ++model.rank;
  if (model.rank == 0) throw DomainError("PCA undefined: all usages are identical");
  if (k > model.rank)
    throw DomainError("PCA k=" + std::to_string(k) + " exceeds the achievable maximum " + std::to_string(model.rank));

  model.loadings = svd.matrixV().leftCols(k);
  for (Index c = 0; c < k; ++c) {
    Index arg = 0;
    for (Index r = 1; r < d; ++r)
      if (std::abs(model.loadings(r, c)) > std::abs(model.loadings(arg, c))) arg = r;
    if (model.loadings(arg, c) < 0.0) model.loadings.col(c) *= -1.0;
  }
  model.explained_variance = sv.head(k).array().square() / static_cast<double>(n - 1);
  return model;
}

ProjectedPair fit_pca(const RowMatrix& a, const RowMatrix& b, int k) {
  check_dims(a, b);
  const PcaModel model = fit_pca_model(vstack(a, b), k);
  return {model.transform(a), model.transform(b), {Space::PCA, k, 0}};
}

std::vector<Index> random_dimensions(Index dimension, int k, std::uint64_t seed) {
  if (k < 1 || k > dimension)
    throw ConfigError("random dimension selection needs 1 <= k <= D (k=" + std::to_string(k) +
                      ", D=" + std::to_string(dimension) + ")");
  Rng rng(seed);
  const auto picked = sample_indices(static_cast<std::size_t>(dimension), static_cast<std::size_t>(k), rng);
  return {picked.begin(), picked.end()};
}

ProjectedPair select_random_dims(const RowMatrix& a, const RowMatrix& b, int k, std::uint64_t seed) {
  check_dims(a, b);
  const auto dims = random_dimensions(a.cols(), k, seed);
  return {a(Eigen::all, dims), b(Eigen::all, dims), {Space::RAND, k, seed}};
}

std::vector<int> stress_schedule(int dimension, int floor) {
  if (floor < 1 || dimension < floor)
    throw ConfigError("stress schedule needs D >= floor >= 1 (D=" + std::to_string(dimension) +
                      ", floor=" + std::to_string(floor) + ")");
  std::vector<int> out;
  for (int k = dimension / 2; k >= floor; k /= 2) out.push_back(k);
  return out;
}

ProjectedPair apply_space(const RowMatrix& a, const RowMatrix& b, const SpaceConfig& config,
                          const io::DefinitionSet* defs) {
  if ((config.kind == Space::DEF) != (defs != nullptr))
    throw ConfigError(config.kind == Space::DEF ? "DEF space requires a definition set"
                                                : "a definition set is only used by the DEF space");
  ProjectedPair out;
  switch (config.kind) {
    case Space::FULL:
      check_dims(a, b);
      return {a, b, {Space::FULL, static_cast<int>(a.cols()), 0}};
    case Space::DEF:
      out = project_definition_space(a, b, *defs);
      break;
    case Space::PCA:
      out = fit_pca(a, b, config.k);
      break;
    case Space::RAND:
      out = select_random_dims(a, b, config.k, config.seed);
      break;
  }
  check_no_zero_rows(out.a, "period 1", config.kind);
  check_no_zero_rows(out.b, "period 2", config.kind);
  return out;
}

}  // namespace lscd::spaces

namespace lscd::spaces {

void check_request(const SpaceRequest& request) {
  if (request.kind == Space::DEF && !request.defs_dir)
    throw ConfigError("DEF space requires a definitions directory (--defs)");
  if ((request.kind == Space::PCA || request.kind == Space::RAND) && !request.fixed_k && !request.defs_dir)
    throw ConfigError(std::string(to_string(request.kind)) +
                      " with per-word k needs a definitions directory (--defs) or a fixed --k");
  if (request.fixed_k && *request.fixed_k < 1) throw ConfigError("k must be >= 1");
}

RowMatrix normalize_rows(const RowMatrix& m) {
  RowMatrix out = m;
  for (Index i = 0; i < out.rows(); ++i) {
    const auto r = row_span(m, i);
    const double n = std::sqrt(dot(r, r));
    if (n > 0.0) out.row(i) /= n;
  }
  return out;
}

ProjectedPair resolve_space(const SpaceRequest& request, const std::string& word, const RowMatrix& raw_a,
                            const RowMatrix& raw_b) {
  check_request(request);
  const RowMatrix a = request.normalize ? normalize_rows(raw_a) : raw_a;
  const RowMatrix b = request.normalize ? normalize_rows(raw_b) : raw_b;
  if (request.kind == Space::FULL) return apply_space(a, b, {Space::FULL, static_cast<int>(a.cols()), 0});

  std::optional<io::DefinitionSet> defs;
  if (request.kind == Space::DEF || !request.fixed_k) {
    if (!io::has_definition_set(*request.defs_dir, word))
      throw DomainError("no definitions for word '" + word + "'");
    defs = io::load_definition_set(*request.defs_dir, word, a.cols());
  }
  if (request.kind == Space::DEF) return apply_space(a, b, {Space::DEF, static_cast<int>(defs->size()), 0}, &*defs);

  const int k = request.fixed_k ? *request.fixed_k : static_cast<int>(defs->size());
  if (request.kind == Space::RAND && k > a.cols())
    throw DomainError("RAND k=" + std::to_string(k) + " exceeds dimension " + std::to_string(a.cols()));
  SpaceConfig config{request.kind, k, 0};
  if (request.kind == Space::RAND) config.seed = rand_dims_seed(request.master_seed, word, k);
  return apply_space(a, b, config);
}

}  // namespace lscd::spaces
