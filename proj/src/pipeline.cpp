#include "lscd/pipeline.hpp"

#include "lscd/error.hpp"
#include "lscd/exact_sum.hpp"
#include "lscd/hubness.hpp"
#include "lscd/parallel.hpp"
#include "lscd/random.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>

namespace lscd::pipeline {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<std::string> sorted_words(const io::EmbeddingStore& store) {
  auto words = store.words();
  std::sort(words.begin(), words.end());
  return words;
}

spaces::SpaceRequest request_for(const RunSpec& spec, Space space) {
  spaces::SpaceRequest r;
  r.kind = space;
  r.fixed_k = spec.fixed_k;
  r.master_seed = spec.seed;
  r.defs_dir = spec.defs_dir;
  r.normalize = spec.normalize;
  return r;
}

void check_spec(const RunSpec& spec) {
  if (spec.metrics.empty()) throw ConfigError("no metrics requested");
  if (spec.spaces.empty()) throw ConfigError("no spaces requested");
  if (spec.repetitions < 1) throw ConfigError("--repetitions must be >= 1");
  if (spec.jobs < 1) throw ConfigError("--jobs must be >= 1");
  for (Space s : spec.spaces) spaces::check_request(request_for(spec, s));
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

}  // namespace

std::map<Metric, double> compute_metrics(const spaces::ProjectedPair& pair, const std::vector<Metric>& metrics,
                                         std::uint64_t sample_seed, int repetitions) {
  std::map<Metric, double> out;
  std::optional<metrics::PairSummary> summary;
  auto get_summary = [&]() -> const metrics::PairSummary& {
    if (!summary) summary = metrics::pair_summary(pair.a, pair.b);
    return *summary;
  };
  for (Metric m : metrics) {
    switch (m) {
      case Metric::APD:
        out[m] = get_summary().apd;
        break;
      case Metric::PRT:
        out[m] = metrics::prt(pair.a, pair.b);
        break;
      case Metric::AMD:
        out[m] = get_summary().amd.symmetric();
        break;
      case Metric::AMD_1to2:
        out[m] = get_summary().amd.a_to_b;
        break;
      case Metric::AMD_2to1:
        out[m] = get_summary().amd.b_to_a;
        break;
      case Metric::SAMD:
        out[m] = metrics::samd(pair.a, pair.b, sample_seed, repetitions, metrics::MatchingAlgorithm::Greedy);
        break;
      case Metric::SAMD_HUNGARIAN:
        out[m] = metrics::samd(pair.a, pair.b, sample_seed, repetitions, metrics::MatchingAlgorithm::Hungarian);
        break;
    }
  }
  return out;
}

std::vector<ChangeScoreTable> score_space(const io::EmbeddingStore& store, const spaces::SpaceRequest& space,
                                          const std::vector<Metric>& metrics, int repetitions, int jobs,
                                          std::vector<std::string>* skipped) {
  spaces::check_request(space);
  const auto words = sorted_words(store);
  struct WordResult {
    int k = 0;
    std::map<Metric, double> values;
    std::string skip_reason;
  };
  std::vector<WordResult> results(words.size());

  parallel_for_each_index(words.size(), jobs, [&](std::size_t w) {
    try {
      const auto [a, b] = store.load_pair(words[w]);
      const auto projected = spaces::resolve_space(space, words[w], a.vectors, b.vectors);
      results[w].k = static_cast<int>(projected.dimension());
      results[w].values = compute_metrics(projected, metrics, sample_seed(space.master_seed, words[w]), repetitions);
    } catch (const DomainError& e) {
      results[w].skip_reason = e.what();
    }
  });

  std::vector<ChangeScoreTable> tables;
  for (Metric m : metrics) {
    ChangeScoreTable t;
    t.metric = m;
    t.space = space.kind;
    t.seed = space.master_seed;
    t.repetitions = repetitions;
    for (std::size_t w = 0; w < words.size(); ++w)
      if (results[w].skip_reason.empty()) t.rows.emplace(words[w], ScoreRow{results[w].k, results[w].values.at(m)});
    tables.push_back(std::move(t));
  }
  if (skipped)
    for (std::size_t w = 0; w < words.size(); ++w)
      if (!results[w].skip_reason.empty()) skipped->push_back(words[w] + ": " + results[w].skip_reason);
  return tables;
}

std::string results_file_name(Metric metric, Space space, std::optional<int> fixed_k, std::uint64_t seed) {
  std::string name = std::string(to_string(metric)) + "_" + std::string(to_string(space));
  if (space == Space::PCA || space == Space::RAND) name += fixed_k ? "_k" + std::to_string(*fixed_k) : "_kdefs";
  return name + "_s" + std::to_string(seed) + ".csv";
}

std::vector<fs::path> cmd_score(const RunSpec& spec, std::ostream& log) {
  check_spec(spec);
  const auto store = io::EmbeddingStore::open(spec.store);
  ensure_dir(spec.out_dir);
  std::vector<fs::path> written;
  for (Space space : spec.spaces) {
    std::vector<std::string> skipped;
    const auto tables = score_space(store, request_for(spec, space), spec.metrics, spec.repetitions, spec.jobs, &skipped);
    for (const auto& s : skipped) log << "warning: skipped " << s << " [" << to_string(space) << "]\n";
    for (const auto& t : tables) {
      const auto path = spec.out_dir / results_file_name(t.metric, space, spec.fixed_k, spec.seed);
      io::write_results(t, path);
      written.push_back(path);
    }
  }
  return written;
}

EvaluateOutcome cmd_evaluate(const std::vector<fs::path>& results, const fs::path& gold_path,
                             const std::vector<std::string>& group_by, const fs::path& out_dir, std::ostream& log) {
  if (results.empty()) throw ConfigError("no results files given");
  const auto gold = io::load_gold_scores(gold_path);
  // Reject unknown keys before doing any work.
  for (const auto& key : group_by) (void)eval::key_value(eval::EvalResult{}, key);

  EvaluateOutcome outcome;
  std::vector<eval::EvalResult> ok;
  for (const auto& path : results) {
    eval::EvalResult r;
    r.run = path.stem().string();
    try {
      const auto table = io::read_results(path);
      r.metric = table.metric;
      r.space = table.space;
      r.seed = table.seed;
      for (const auto& [word, row] : table.rows)
        if (gold.entries.contains(word)) ++r.n_words;
      r = eval::evaluate_run(table, gold, path.stem().string());
      if (!r.missing_from_gold.empty())
        log << "warning: " << path.string() << ": " << r.missing_from_gold.size() << " scored words missing from gold\n";
      if (!r.missing_from_table.empty())
        log << "warning: " << path.string() << ": " << r.missing_from_table.size()
            << " gold words missing from scores; n_words=" << r.n_words << "\n";
      ok.push_back(r);
    } catch (const Error& e) {
      log << "error: " << path.string() << ": " << e.what() << "\n";
      r.rho = kNaN;
      outcome.all_ok = false;
    }
    outcome.results.push_back(std::move(r));
  }
  ensure_dir(out_dir);
  eval::write_eval_csv(outcome.results, out_dir / "evaluation.csv");
  if (!group_by.empty() && !ok.empty()) {
    outcome.summary = eval::aggregate(ok, group_by);
    eval::write_summary_csv(outcome.summary, out_dir / "summary.csv");
  }
  return outcome;
}

std::vector<StressRow> cmd_stress(const RunSpec& spec, const fs::path& gold_path, std::ostream& log, int floor) {
  check_spec(spec);
  const auto store = io::EmbeddingStore::open(spec.store);
  const auto gold = io::load_gold_scores(gold_path);
  const auto schedule = spaces::stress_schedule(static_cast<int>(store.dimension()), floor);
  if (schedule.empty()) log << "warning: dimension " << store.dimension() << " leaves an empty stress schedule\n";

  std::vector<StressRow> rows;
  for (int k : schedule) {
    for (Space space : {Space::PCA, Space::RAND}) {
      spaces::SpaceRequest request{space, k, spec.seed, spec.defs_dir, spec.normalize};
      std::vector<std::string> skipped;
      const auto tables = score_space(store, request, spec.metrics, spec.repetitions, spec.jobs, &skipped);
      for (const auto& s : skipped) log << "warning: skipped " << s << " [" << to_string(space) << " k=" << k << "]\n";
      for (const auto& t : tables) {
        StressRow row{t.metric, space, k, spec.seed, kNaN, 0};
        for (const auto& [word, r] : t.rows)
          if (gold.entries.contains(word)) ++row.n_words;
        try {
          row.rho = eval::evaluate_run(t, gold).rho;
        } catch (const Error& e) {
          log << "warning: " << to_string(t.metric) << " " << to_string(space) << " k=" << k << ": " << e.what() << "\n";
        }
        rows.push_back(row);
      }
    }
  }

  ensure_dir(spec.out_dir);
  auto out = open_out(spec.out_dir / "stress.csv");
  out << "metric,space,k,seed,rho,n_words\n";
  for (const auto& r : rows)
    out << to_string(r.metric) << ',' << to_string(r.space) << ',' << r.k << ',' << r.seed << ','
        << io::format_real(r.rho) << ',' << r.n_words << '\n';
  return rows;
}

std::vector<hubness::HubnessRow> cmd_hubness(const RunSpec& spec, std::ostream& log) {
  check_spec(spec);
  const auto store = io::EmbeddingStore::open(spec.store);
  const auto words = sorted_words(store);
  std::vector<hubness::HubnessRow> rows;
  ensure_dir(spec.out_dir);
  auto summary = open_out(spec.out_dir / "hubness_summary.csv");
  summary << "space,n_words,dominant_mean,dominant_std,unused_mean,unused_std,load_mean,load_std\n";

  for (Space space : spec.spaces) {
    const auto request = request_for(spec, space);
    std::vector<std::optional<hubness::HubnessStats>> stats(words.size());
    std::vector<std::string> reasons(words.size());
    parallel_for_each_index(words.size(), spec.jobs, [&](std::size_t w) {
      try {
        const auto [a, b] = store.load_pair(words[w]);
        const auto projected = spaces::resolve_space(request, words[w], a.vectors, b.vectors);
        stats[w] = hubness::hubness_report(projected.a, projected.b);
      } catch (const DomainError& e) {
        reasons[w] = e.what();
      }
    });

    std::vector<double> dominant, unused, load;
    for (std::size_t w = 0; w < words.size(); ++w) {
      if (!stats[w]) {
        log << "warning: skipped " << words[w] << ": " << reasons[w] << " [" << to_string(space) << "]\n";
        continue;
      }
      rows.push_back({words[w], std::string(to_string(space)), *stats[w]});
      dominant.push_back(stats[w]->dominant_share);
      unused.push_back(stats[w]->unused_share);
      load.push_back(stats[w]->avg_load);
    }
    auto mean_std = [](const std::vector<double>& xs) -> std::pair<double, double> {
      if (xs.empty()) return {kNaN, kNaN};
      const double mean = exact_mean(xs);
      ExactSum ss;
      for (double x : xs) ss.add((x - mean) * (x - mean));
      return {mean, std::sqrt(ss.value() / static_cast<double>(xs.size()))};
    };
    summary << to_string(space) << ',' << dominant.size();
    for (const auto* xs : {&dominant, &unused, &load}) {
      const auto [m, s] = mean_std(*xs);
      summary << ',' << io::format_real(m) << ',' << io::format_real(s);
    }
    summary << '\n';
  }
  hubness::write_hubness_csv(rows, spec.out_dir / "hubness.csv");
  return rows;
}

namespace {

std::string format_record(const interpret::AsymmetryRecord& r) {
  return "word: " + r.word + "\namd_1to2: " + io::format_real(r.amd_1to2) + "\namd_2to1: " + io::format_real(r.amd_2to1) +
         "\nasymmetry: " + io::format_real(r.asymmetry) + "\ndirection: " + std::string(interpret::to_string(r.direction)) +
         "\n";
}

std::string lda_block(const std::string& word, const RowMatrix& a, const RowMatrix& b, const io::DefinitionSet& defs,
                      int m, const interpret::LdaOptions& options) {
  const auto projected = spaces::project_definition_space(a, b, defs);
  const auto direction = interpret::lda_direction(projected.a, projected.b, options);
  const auto top = interpret::top_discriminative_definitions(direction, defs, m);
  return interpret::format_lda_report(word, direction, defs, top);
}

}  // namespace

void cmd_explain(const ExplainSpec& spec, std::ostream& out, std::ostream& log) {
  if (spec.m < 1) throw ConfigError("--m must be >= 1");
  const auto store = io::EmbeddingStore::open(spec.store);
  spaces::SpaceRequest request{spec.space, spec.fixed_k, spec.seed, spec.defs_dir, spec.normalize};
  spaces::check_request(request);

  if (spec.word) {
    const std::string& word = *spec.word;
    if (!store.contains(word)) throw ConfigError("word '" + word + "' is not in the store");
    std::optional<io::DefinitionSet> defs;
    if (spec.defs_dir && io::has_definition_set(*spec.defs_dir, word)) {
      defs = io::load_definition_set(*spec.defs_dir, word, store.dimension());
      if (spec.m > defs->size())
        throw ConfigError("--m " + std::to_string(spec.m) + " exceeds the " + std::to_string(defs->size()) +
                          " definitions of '" + word + "'");
    }
    const auto [a, b] = store.load_pair(word);
    const auto projected = spaces::resolve_space(request, word, a.vectors, b.vectors);
    out << format_record(
        interpret::make_asymmetry_record(word, metrics::amd_directional(projected.a, projected.b), spec.epsilon));
    if (defs)
      out << lda_block(word, a.vectors, b.vectors, *defs, spec.m, spec.lda);
    else
      log << "note: no definitions for '" << word << "'; LDA report skipped\n";
    return;
  }

  std::vector<std::string> skipped;
  const auto records = interpret::asymmetry_ranking(store, request, spec.epsilon, spec.jobs, &skipped);
  for (const auto& s : skipped) log << "warning: skipped " << s << "\n";
  ensure_dir(spec.out_dir);
  interpret::write_asymmetry_csv(records, spec.out_dir / "asymmetry.csv");
  if (!spec.defs_dir) return;

  const auto words = sorted_words(store);
  std::vector<std::string> blocks(words.size());
  parallel_for_each_index(words.size(), spec.jobs, [&](std::size_t w) {
    if (!io::has_definition_set(*spec.defs_dir, words[w])) {
      blocks[w] = "word: " + words[w] + "\nskipped: no definitions\n";
      return;
    }
    try {
      const auto defs = io::load_definition_set(*spec.defs_dir, words[w], store.dimension());
      const auto [a, b] = store.load_pair(words[w]);
      blocks[w] = lda_block(words[w], a.vectors, b.vectors, defs, std::min<int>(spec.m, defs.size()), spec.lda);
    } catch (const DomainError& e) {
      blocks[w] = "word: " + words[w] + "\nskipped: " + e.what() + "\n";
    } catch (const ValidationError& e) {
      blocks[w] = "word: " + words[w] + "\nskipped: " + e.what() + "\n";
    }
  });
  auto report = open_out(spec.out_dir / "lda_report.txt");
  for (std::size_t w = 0; w < blocks.size(); ++w) report << (w ? "\n" : "") << blocks[w];
}

ValidationSummary cmd_validate_store(const fs::path& store_path, const std::optional<fs::path>& defs_dir) {
  const auto store = io::EmbeddingStore::open(store_path);
  ValidationSummary summary;
  for (const auto& word : sorted_words(store)) {
    const auto [a, b] = store.load_pair(word);
    ++summary.words;
    summary.vectors += a.vectors.rows() + b.vectors.rows();
    for (const auto* set : {&a, &b})
      if (set->vectors.rows() == 1)
        summary.warnings.push_back(word + ": period " + std::to_string(set->period) + " has a single usage");
    const RowMatrix stacked = vstack(a.vectors, b.vectors);
    if ((stacked.rowwise() - stacked.row(0)).cwiseAbs().maxCoeff() == 0.0)
      summary.warnings.push_back(word + ": all usages identical (PCA undefined)");
    if (defs_dir) {
      if (!io::has_definition_set(*defs_dir, word)) {
        summary.warnings.push_back(word + ": no definitions");
        continue;
      }
      (void)io::load_definition_set(*defs_dir, word, store.dimension());
      ++summary.definition_sets;
    }
  }
  return summary;
}

}  // namespace lscd::pipeline
