#pragma once

#include "lscd/corpus_io.hpp"
#include "lscd/matrix.hpp"
#include "lscd/metrics.hpp"
#include "lscd/spaces.hpp"

#include <Eigen/Core>

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lscd::interpret {

/// NARROWING: period-1 usages poorly matched in period 2 (AMD 1->2 larger).
/// BROADENING: new period-2 usages (AMD 2->1 larger).
enum class Direction { NARROWING, BROADENING, BALANCED };

std::string_view to_string(Direction d);

struct AsymmetryRecord {
  std::string word;
  double amd_1to2 = 0.0;
  double amd_2to1 = 0.0;
  double asymmetry = 0.0;  ///< |amd_1to2 - amd_2to1|
  Direction direction = Direction::BALANCED;
};

/// Labels by the sign of amd_1to2 - amd_2to1; differences within
/// `epsilon` are BALANCED.
AsymmetryRecord make_asymmetry_record(std::string word, const metrics::DirectionalAMD& amd, double epsilon = 0.0);

/// Descending asymmetry, ties by word.
void sort_by_asymmetry(std::vector<AsymmetryRecord>& records);

/// Directional AMD for every word of the store in the requested space,
/// sorted by asymmetry. Words whose space cannot be built are appended to
/// `skipped` (word: reason) when given.
std::vector<AsymmetryRecord> asymmetry_ranking(const io::EmbeddingStore& store, const spaces::SpaceRequest& space,
                                               double epsilon = 0.0, int jobs = 1,
                                               std::vector<std::string>* skipped = nullptr);

/// `word,amd_1to2,amd_2to1,asymmetry,direction`
void write_asymmetry_csv(const std::vector<AsymmetryRecord>& records, const std::filesystem::path& path);

struct LdaOptions {
  /// Ridge added to the within-class scatter. nullopt: 1e-3 * trace(S_w) / K.
  std::optional<double> lambda;
};

/// Two-class Fisher discriminant over definition dimensions, unit length,
/// oriented so that positive weights point towards period 2.
struct LdaDirection {
  Eigen::VectorXd weights;
  double lambda = 0.0;
};

LdaDirection lda_direction(const RowMatrix& a_def, const RowMatrix& b_def, const LdaOptions& options = {});

struct WeightedDefinition {
  Index index = 0;
  std::string text;
  double weight = 0.0;
};

struct DiscriminativeDefinitions {
  std::vector<WeightedDefinition> earlier;  ///< most negative weights first
  std::vector<WeightedDefinition> later;    ///< most positive weights first
};

DiscriminativeDefinitions top_discriminative_definitions(const LdaDirection& direction, const io::DefinitionSet& defs,
                                                         int m);

/// Plain-text block: header line, then every definition with its signed
/// weight, then the selected earlier/later definitions.
std::string format_lda_report(const std::string& word, const LdaDirection& direction, const io::DefinitionSet& defs,
                              const DiscriminativeDefinitions& top);

}  // namespace lscd::interpret
