#pragma once

#include "lscd/corpus_io.hpp"
#include "lscd/eval.hpp"
#include "lscd/hubness.hpp"
#include "lscd/interpret.hpp"
#include "lscd/metrics.hpp"
#include "lscd/spaces.hpp"
#include "lscd/synth.hpp"
#include "lscd/types.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lscd::pipeline {

namespace fs = std::filesystem;

/// One invocation of `score`, `stress` or `hubness`. Every (metric, space)
/// combination is expanded into an independent run.
struct RunSpec {
  fs::path store;
  std::vector<Metric> metrics{Metric::APD, Metric::PRT, Metric::AMD, Metric::SAMD};
  std::vector<Space> spaces{Space::FULL};
  /// nullopt: each word's definition count.
  std::optional<int> fixed_k;
  std::uint64_t seed = 0;
  int repetitions = 1;
  int jobs = 1;
  std::optional<fs::path> defs_dir;
  /// Unit-normalise usage vectors before building spaces.
  bool normalize = true;
  fs::path out_dir = ".";
};

/// Requested metric values for one projected word. SAMD uses
/// `sample_seed`, sample_seed+1, ... for its repetitions.
std::map<Metric, double> compute_metrics(const spaces::ProjectedPair& pair, const std::vector<Metric>& metrics,
                                         std::uint64_t sample_seed, int repetitions);

/// Tables for every requested metric in one space. Words that cannot be
/// projected or scored (DomainError) are skipped and reported in `skipped`
/// as "word: reason", in lexicographic word order.
std::vector<ChangeScoreTable> score_space(const io::EmbeddingStore& store, const spaces::SpaceRequest& space,
                                          const std::vector<Metric>& metrics, int repetitions, int jobs,
                                          std::vector<std::string>* skipped = nullptr);

/// `<METRIC>_<SPACE>[_k<k>|_kdefs]_s<seed>.csv`
std::string results_file_name(Metric metric, Space space, std::optional<int> fixed_k, std::uint64_t seed);

/// Writes one results CSV per (metric, space); returns their paths.
std::vector<fs::path> cmd_score(const RunSpec& spec, std::ostream& log);

struct EvaluateOutcome {
  std::vector<eval::EvalResult> results;
  std::vector<eval::AggregateRow> summary;
  bool all_ok = true;
};

/// Evaluates each results file against gold. Files that fail get a row
/// with rho = nan and all_ok is cleared. Writes `evaluation.csv` and, with
/// a non-empty group_by, `summary.csv` into out_dir.
EvaluateOutcome cmd_evaluate(const std::vector<fs::path>& results, const fs::path& gold,
                             const std::vector<std::string>& group_by, const fs::path& out_dir, std::ostream& log);

struct StressRow {
  Metric metric = Metric::APD;
  Space space = Space::PCA;
  int k = 0;
  std::uint64_t seed = 0;
  double rho = 0.0;  ///< nan when the scores are constant or too few words survive
  int n_words = 0;
};

/// For each k of stress_schedule(D, floor), PCA and RAND arms, every
/// requested metric: Spearman against gold. Writes `stress.csv`.
std::vector<StressRow> cmd_stress(const RunSpec& spec, const fs::path& gold, std::ostream& log, int floor = 4);

/// Per-word hubness for every requested space; writes `hubness.csv` and
/// `hubness_summary.csv` (mean and population std across words).
std::vector<hubness::HubnessRow> cmd_hubness(const RunSpec& spec, std::ostream& log);

struct ExplainSpec {
  fs::path store;
  std::optional<fs::path> defs_dir;
  std::optional<std::string> word;  ///< nullopt: every word
  int m = 1;
  Space space = Space::FULL;        ///< space for the directional AMD
  std::optional<int> fixed_k;
  std::uint64_t seed = 0;
  double epsilon = 0.0;
  interpret::LdaOptions lda;
  bool normalize = true;
  int jobs = 1;
  fs::path out_dir = ".";
};

/// With a word: prints its asymmetry record and (given definitions) its
/// LDA report to `out`. Without: writes `asymmetry.csv` and, given
/// definitions, `lda_report.txt`.
void cmd_explain(const ExplainSpec& spec, std::ostream& out, std::ostream& log);

struct ValidationSummary {
  int words = 0;
  long long vectors = 0;
  int definition_sets = 0;
  std::vector<std::string> warnings;
};

/// Fully loads every matrix (and definition set, if a directory is given).
/// Invariant violations throw; softer findings become warnings.
ValidationSummary cmd_validate_store(const fs::path& store, const std::optional<fs::path>& defs_dir);

}  // namespace lscd::pipeline
