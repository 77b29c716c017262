#include "lscd/interpret.hpp"

#include "lscd/error.hpp"
#include "lscd/parallel.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace lscd::interpret {

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::NARROWING:
      return "NARROWING";
    case Direction::BROADENING:
      return "BROADENING";
    case Direction::BALANCED:
      return "BALANCED";
  }
  return "?";
}

AsymmetryRecord make_asymmetry_record(std::string word, const metrics::DirectionalAMD& amd, double epsilon) {
  if (epsilon < 0.0) throw ConfigError("balance threshold must be >= 0");
  AsymmetryRecord r;
  r.word = std::move(word);
  r.amd_1to2 = amd.a_to_b;
  r.amd_2to1 = amd.b_to_a;
  const double diff = amd.a_to_b - amd.b_to_a;
  r.asymmetry = std::abs(diff);
  if (diff > epsilon)
    r.direction = Direction::NARROWING;
  else if (diff < -epsilon)
    r.direction = Direction::BROADENING;
  else
    r.direction = Direction::BALANCED;
  return r;
}

void sort_by_asymmetry(std::vector<AsymmetryRecord>& records) {
  std::sort(records.begin(), records.end(), [](const AsymmetryRecord& x, const AsymmetryRecord& y) {
    if (x.asymmetry != y.asymmetry) return x.asymmetry > y.asymmetry;
    return x.word < y.word;
  });
}

std::vector<AsymmetryRecord> asymmetry_ranking(const io::EmbeddingStore& store, const spaces::SpaceRequest& space,
                                               double epsilon, int jobs, std::vector<std::string>* skipped) {
  spaces::check_request(space);
  auto words = store.words();
  std::sort(words.begin(), words.end());
  std::vector<std::optional<AsymmetryRecord>> records(words.size());
  std::vector<std::string> reasons(words.size());

  parallel_for_each_index(words.size(), jobs, [&](std::size_t w) {
    try {
      const auto [a, b] = store.load_pair(words[w]);
      const auto projected = spaces::resolve_space(space, words[w], a.vectors, b.vectors);
      records[w] = make_asymmetry_record(words[w], metrics::amd_directional(projected.a, projected.b), epsilon);
    } catch (const DomainError& e) {
      reasons[w] = e.what();
    }
  });

  std::vector<AsymmetryRecord> out;
  for (std::size_t w = 0; w < words.size(); ++w) {
    if (records[w])
      out.push_back(std::move(*records[w]));
    else if (skipped)
      skipped->push_back(words[w] + ": " + reasons[w]);
  }
  sort_by_asymmetry(out);
  return out;
}

void write_asymmetry_csv(const std::vector<AsymmetryRecord>& records, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << "word,amd_1to2,amd_2to1,asymmetry,direction\n";
  for (const auto& r : records)
    out << io::csv_field(r.word) << ',' << io::format_real(r.amd_1to2) << ',' << io::format_real(r.amd_2to1) << ','
        << io::format_real(r.asymmetry) << ',' << to_string(r.direction) << '\n';
}

LdaDirection lda_direction(const RowMatrix& a_def, const RowMatrix& b_def, const LdaOptions& options) {
  const Index k = a_def.cols();
  if (k < 1) throw ValidationError("LDA needs K >= 1 definition dimensions");
  if (b_def.cols() != k) throw ValidationError("LDA: periods have different dimensions");
  if (a_def.rows() < 2 || b_def.rows() < 2) throw ValidationError("LDA needs at least 2 usages per period");

  const Eigen::RowVectorXd mu1 = a_def.colwise().mean();
  const Eigen::RowVectorXd mu2 = b_def.colwise().mean();
  const Eigen::VectorXd diff = (mu2 - mu1).transpose();
  if ((diff.array() == 0.0).all()) throw DomainError("LDA undefined: both periods have the same mean");

  const Eigen::MatrixXd c1 = a_def.rowwise() - mu1;
  const Eigen::MatrixXd c2 = b_def.rowwise() - mu2;
  Eigen::MatrixXd scatter = c1.transpose() * c1 + c2.transpose() * c2;

  LdaDirection out;
  out.lambda = options.lambda.value_or(1e-3 * scatter.trace() / static_cast<double>(k));
  if (out.lambda < 0.0) throw ConfigError("LDA regularisation must be >= 0");
  scatter.diagonal().array() += out.lambda;

  if (out.lambda == 0.0) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(scatter);
    if (!lu.isInvertible())
      throw DomainError("LDA within-class scatter is singular; use a positive regularisation (--lda-lambda)");
    out.weights = lu.solve(diff);
  } else {
    Eigen::LDLT<Eigen::MatrixXd> ldlt(scatter);
    if (ldlt.info() != Eigen::Success) throw DomainError("LDA solve failed");
    out.weights = ldlt.solve(diff);
  }
  const double norm = out.weights.norm();
  if (!std::isfinite(norm) || norm == 0.0) throw DomainError("LDA produced no discriminant direction");
  out.weights /= norm;
  if (out.weights.dot(diff) < 0.0) out.weights = -out.weights;
  return out;
}

DiscriminativeDefinitions top_discriminative_definitions(const LdaDirection& direction, const io::DefinitionSet& defs,
                                                         int m) {
  const auto k = static_cast<int>(direction.weights.size());
  if (k != static_cast<int>(defs.texts.size()))
    throw ValidationError("LDA weights do not match the number of definitions");
  if (m < 1 || m > k) throw ConfigError("m must satisfy 1 <= m <= K (m=" + std::to_string(m) + ", K=" + std::to_string(k) + ")");
  if ((direction.weights.array() == 0.0).all()) throw DomainError("all LDA weights are zero");

  std::vector<Index> order(k);
  std::iota(order.begin(), order.end(), Index{0});
  const auto& w = direction.weights;
  std::stable_sort(order.begin(), order.end(), [&](Index x, Index y) { return w(x) > w(y); });

  DiscriminativeDefinitions out;
  for (Index i : order) {
    if (static_cast<int>(out.later.size()) == m || w(i) <= 0.0) break;
    out.later.push_back({i, defs.texts[i], w(i)});
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (static_cast<int>(out.earlier.size()) == m || w(*it) >= 0.0) break;
    out.earlier.push_back({*it, defs.texts[*it], w(*it)});
  }
  return out;
}

std::string format_lda_report(const std::string& word, const LdaDirection& direction, const io::DefinitionSet& defs,
                              const DiscriminativeDefinitions& top) {
  std::ostringstream out;
  out << "word: " << word << "\n";
  out << "lambda: " << io::format_real(direction.lambda) << "\n";
  out << "weights (positive = later period):\n";
  for (Index i = 0; i < direction.weights.size(); ++i)
    out << "  [" << i << "] " << io::format_real(direction.weights(i)) << "\t" << defs.texts[i] << "\n";
  out << "earlier-associated:\n";
  for (const auto& d : top.earlier) out << "  " << io::format_real(d.weight) << "\t" << d.text << "\n";
  out << "later-associated:\n";
  for (const auto& d : top.later) out << "  " << io::format_real(d.weight) << "\t" << d.text << "\n";
  return out.str();
}

}  // namespace lscd::interpret
