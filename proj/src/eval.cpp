#include "lscd/eval.hpp"

#include "lscd/corpus_io.hpp"
#include "lscd/error.hpp"
#include "lscd/exact_sum.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>

namespace lscd::eval {

std::vector<double> rank_with_ties(std::span<const double> xs) {
  if (xs.empty()) throw ValidationError("cannot rank an empty list");
  for (double x : xs)
    if (!std::isfinite(x)) throw ValidationError("cannot rank non-finite values");
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return xs[i] < xs[j]; });
  std::vector<double> ranks(xs.size());
  for (std::size_t start = 0; start < order.size();) {
    std::size_t end = start + 1;
    while (end < order.size() && xs[order[end]] == xs[order[start]]) ++end;
    // Positions start+1 .. end share their mean.
    const double shared = (static_cast<double>(start + 1) + static_cast<double>(end)) / 2.0;
    for (std::size_t p = start; p < end; ++p) ranks[order[p]] = shared;
    start = end;
  }
  return ranks;
}

double spearman(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size())
    throw ValidationError("spearman: length mismatch (" + std::to_string(xs.size()) + " vs " +
                          std::to_string(ys.size()) + ")");
  if (xs.size() < 3) throw ValidationError("spearman needs at least 3 paired values");
  const auto rx = rank_with_ties(xs);
  const auto ry = rank_with_ties(ys);
  const double n = static_cast<double>(rx.size());
  const double mx = exact_sum(rx) / n;
  const double my = exact_sum(ry) / n;
  ExactSum sxy, sxx, syy;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    const double dx = rx[i] - mx;
    const double dy = ry[i] - my;
    sxy.add(dx * dy);
    sxx.add(dx * dx);
    syy.add(dy * dy);
  }
  if (sxx.value() == 0.0 || syy.value() == 0.0)
    throw DomainError("spearman undefined: one of the lists is constant");
  const double rho = sxy.value() / std::sqrt(sxx.value() * syy.value());
  return std::clamp(rho, -1.0, 1.0);
}

EvalResult evaluate_run(const ChangeScoreTable& table, const GoldScores& gold, std::string run) {
  EvalResult r;
  r.run = std::move(run);
  r.metric = table.metric;
  r.space = table.space;
  r.seed = table.seed;
  std::vector<double> predicted, expected;
  bool first = true;
  bool uniform_k = true;
  for (const auto& [word, row] : table.rows) {
    if (first) {
      r.k = row.k;
      first = false;
    } else if (row.k != r.k) {
      uniform_k = false;
    }
    const auto it = gold.entries.find(word);
    if (it == gold.entries.end()) {
      r.missing_from_gold.push_back(word);
      continue;
    }
    predicted.push_back(row.score);
    expected.push_back(it->second);
  }
  if (!uniform_k) r.k = 0;
  for (const auto& [word, score] : gold.entries)
    if (!table.rows.contains(word)) r.missing_from_table.push_back(word);
  r.n_words = static_cast<int>(predicted.size());
  if (r.n_words < 3)
    throw ValidationError("only " + std::to_string(r.n_words) + " words shared between scores and gold (need >= 3)");
  r.rho = spearman(predicted, expected);
  return r;
}

std::string key_value(const EvalResult& r, const std::string& key) {
  if (key == "run") return r.run;
  if (key == "metric") return std::string(to_string(r.metric));
  if (key == "space") return std::string(to_string(r.space));
  if (key == "k") return std::to_string(r.k);
  if (key == "seed") return std::to_string(r.seed);
  throw ConfigError("unknown grouping key '" + key + "' (valid: run, metric, space, k, seed)");
}

std::vector<AggregateRow> aggregate(const std::vector<EvalResult>& results, const std::vector<std::string>& group_by) {
  if (results.empty()) throw ValidationError("nothing to aggregate");
  std::map<std::vector<std::string>, std::vector<double>> groups;
  for (const auto& r : results) {
    std::vector<std::string> values;
    for (const auto& key : group_by) values.push_back(key_value(r, key));
    groups[values].push_back(r.rho);
  }
  std::vector<AggregateRow> out;
  for (const auto& [values, rhos] : groups) {
    AggregateRow row;
    row.keys = group_by;
    row.values = values;
    row.n_runs = static_cast<int>(rhos.size());
    row.mean_rho = exact_mean(rhos);
    ExactSum ss;
    for (double x : rhos) ss.add((x - row.mean_rho) * (x - row.mean_rho));
    row.std_rho = std::sqrt(ss.value() / static_cast<double>(rhos.size()));
    out.push_back(std::move(row));
  }
  return out;
}

void write_eval_csv(const std::vector<EvalResult>& results, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << "run,metric,space,k,seed,rho,n_words\n";
  for (const auto& r : results) {
    out << io::csv_field(r.run) << ',' << to_string(r.metric) << ',' << to_string(r.space) << ',' << r.k << ','
        << r.seed << ',' << io::format_real(r.rho) << ',' << r.n_words << '\n';
  }
}

void write_summary_csv(const std::vector<AggregateRow>& rows, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  if (!rows.empty())
    for (const auto& key : rows.front().keys) out << key << ',';
  out << "mean_rho,std_rho,n_runs\n";
  for (const auto& row : rows) {
    for (const auto& v : row.values) out << io::csv_field(v) << ',';
    out << io::format_real(row.mean_rho) << ',' << io::format_real(row.std_rho) << ',' << row.n_runs << '\n';
  }
}

}  // namespace lscd::eval
