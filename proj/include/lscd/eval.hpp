#pragma once

#include "lscd/types.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace lscd::eval {

/// Ascending fractional ranks starting at 1; ties share the mean position.
std::vector<double> rank_with_ties(std::span<const double> xs);

/// Pearson correlation of the fractional-rank vectors. Needs n >= 3 and at
/// least two distinct values per side (DomainError otherwise).
double spearman(std::span<const double> xs, std::span<const double> ys);

struct EvalResult {
  std::string run;  ///< label, usually the results file stem
  Metric metric = Metric::APD;
  Space space = Space::FULL;
  int k = 0;        ///< shared k of all rows, 0 if it varies per word
  std::uint64_t seed = 0;
  double rho = 0.0;
  int n_words = 0;
  std::vector<std::string> missing_from_gold;   ///< scored but not in gold
  std::vector<std::string> missing_from_table;  ///< in gold but not scored
};

/// Spearman over the words present in both table and gold, visited in
/// lexicographic order. Throws ValidationError if fewer than 3 words overlap.
EvalResult evaluate_run(const ChangeScoreTable& table, const GoldScores& gold, std::string run = {});

struct AggregateRow {
  std::vector<std::string> keys;    ///< group-by key names
  std::vector<std::string> values;  ///< matching values
  double mean_rho = 0.0;
  double std_rho = 0.0;             ///< population standard deviation
  int n_runs = 0;
};

/// Valid keys: run, metric, space, k, seed. Groups come out sorted by value.
std::vector<AggregateRow> aggregate(const std::vector<EvalResult>& results, const std::vector<std::string>& group_by);

/// Value of a group-by key for one result; ConfigError naming an unknown key.
std::string key_value(const EvalResult& r, const std::string& key);

/// `run,metric,space,k,seed,rho,n_words`
void write_eval_csv(const std::vector<EvalResult>& results, const std::filesystem::path& path);
/// `<keys...>,mean_rho,std_rho,n_runs`
void write_summary_csv(const std::vector<AggregateRow>& rows, const std::filesystem::path& path);

}  // namespace lscd::eval
