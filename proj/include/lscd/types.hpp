#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace lscd {

enum class Metric { APD, PRT, AMD, AMD_1to2, AMD_2to1, SAMD, SAMD_HUNGARIAN };
enum class Space { FULL, DEF, PCA, RAND };

std::string_view to_string(Metric m);
std::string_view to_string(Space s);

/// Case-insensitive; returns nullopt for unknown names.
std::optional<Metric> parse_metric(std::string_view name);
std::optional<Space> parse_space(std::string_view name);

struct ScoreRow {
  /// Dimension of the space the score was computed in.
  int k = 0;
  double score = 0.0;

  friend bool operator==(const ScoreRow&, const ScoreRow&) = default;
};

/// Per-word change scores of one (metric, space, seed) run. Rows are keyed
/// by word, so iteration order is lexicographic.
struct ChangeScoreTable {
  Metric metric = Metric::APD;
  Space space = Space::FULL;
  std::uint64_t seed = 0;
  int repetitions = 1;
  std::map<std::string, ScoreRow> rows;
};

/// word -> graded change score.
struct GoldScores {
  std::map<std::string, double> entries;
};

}  // namespace lscd
