// lscd: command-line front end for the semantic-change metric engine.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage or configuration error.

#include "lscd/error.hpp"
#include "lscd/pipeline.hpp"
#include "lscd/synth.hpp"

#include "CLI11.hpp"

#include <omp.h>

#include <charconv>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using lscd::ConfigError;
namespace pipeline = lscd::pipeline;

std::vector<lscd::Metric> parse_metrics(const std::vector<std::string>& names) {
  std::vector<lscd::Metric> out;
  for (const auto& n : names) {
    const auto m = lscd::parse_metric(n);
    if (!m) throw ConfigError("unknown metric '" + n + "'");
    out.push_back(*m);
  }
  return out;
}

std::vector<lscd::Space> parse_spaces(const std::vector<std::string>& names) {
  std::vector<lscd::Space> out;
  for (const auto& n : names) {
    const auto s = lscd::parse_space(n);
    if (!s) throw ConfigError("unknown space '" + n + "'");
    out.push_back(*s);
  }
  return out;
}

/// "defs" -> per-word definition count; otherwise a positive integer.
std::optional<int> parse_k(const std::string& text) {
  if (text == "defs") return std::nullopt;
  int k = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), k);
  if (ec != std::errc{} || ptr != text.data() + text.size() || k < 1)
    throw ConfigError("--k must be 'defs' or a positive integer, got '" + text + "'");
  return k;
}

std::optional<std::filesystem::path> optional_path(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return std::filesystem::path(s);
}

struct RunFlags {
  std::string store;
  std::vector<std::string> metrics{"APD", "PRT", "AMD", "SAMD"};
  std::vector<std::string> spaces{"FULL"};
  std::string k = "defs";
  std::string defs;
  std::uint64_t seed = 0;
  int repetitions = 1;
  int jobs = 1;
  bool raw = false;
  std::string out = ".";

  void attach(CLI::App* cmd, bool with_spaces, bool with_metrics) {
    cmd->add_option("--store", store, "Embedding store directory")->required();
    if (with_metrics)
      cmd->add_option("--metric", metrics, "APD, PRT, AMD, AMD_1to2, AMD_2to1, SAMD, SAMD_HUNGARIAN")->delimiter(',');
    if (with_spaces) {
      cmd->add_option("--space", spaces, "FULL, DEF, PCA, RAND")->delimiter(',');
      cmd->add_option("--k", k, "Target dimension for PCA/RAND: 'defs' or an integer");
    }
    cmd->add_option("--defs", defs, "Directory with <word>/definitions.{txt,emb}");
    cmd->add_option("--seed", seed, "Master seed");
    cmd->add_option("--repetitions", repetitions, "SAMD samples averaged per word");
    cmd->add_option("--jobs", jobs, "Worker threads across words");
    cmd->add_flag("--no-normalize", raw, "Use usage vectors as stored instead of unit length");
    cmd->add_option("--out", out, "Output directory");
  }

  [[nodiscard]] pipeline::RunSpec spec() const {
    pipeline::RunSpec s;
    s.store = store;
    s.metrics = parse_metrics(metrics);
    s.spaces = parse_spaces(spaces);
    s.fixed_k = parse_k(k);
    s.seed = seed;
    s.repetitions = repetitions;
    s.jobs = jobs;
    s.defs_dir = optional_path(defs);
    s.normalize = !raw;
    s.out_dir = out;
    return s;
  }
};

}  // namespace

int main(int argc, char** argv) {
  omp_set_max_active_levels(1);

  CLI::App app{"Graded lexical semantic change scores from usage embeddings"};
  app.require_subcommand(1);

  RunFlags score_flags;
  auto* score = app.add_subcommand("score", "Per-word change scores, one CSV per (metric, space)");
  score_flags.attach(score, true, true);

  std::vector<std::string> eval_files;
  std::string eval_gold;
  std::vector<std::string> eval_group_by;
  std::string eval_out = ".";
  auto* evaluate = app.add_subcommand("evaluate", "Spearman correlation of results files against gold");
  evaluate->add_option("results", eval_files, "Results CSV files")->required();
  evaluate->add_option("--gold", eval_gold, "Gold TSV (word<TAB>score)")->required();
  evaluate->add_option("--group-by", eval_group_by, "Aggregate over keys: run, metric, space, k, seed")->delimiter(',');
  evaluate->add_option("--out", eval_out, "Output directory");

  RunFlags stress_flags;
  std::string stress_gold;
  int stress_floor = 4;
  auto* stress = app.add_subcommand("stress", "Spearman under repeated halving of the dimension (PCA and RAND)");
  stress_flags.attach(stress, false, true);
  stress->add_option("--gold", stress_gold, "Gold TSV")->required();
  stress->add_option("--floor", stress_floor, "Smallest dimension kept");

  RunFlags hub_flags;
  auto* hub = app.add_subcommand("hubness", "Nearest-neighbour hubness statistics per word");
  hub_flags.attach(hub, true, false);

  pipeline::ExplainSpec explain_spec;
  std::string explain_store, explain_defs, explain_word, explain_space = "FULL", explain_k = "defs", explain_out = ".";
  double lda_lambda = -1.0;
  auto* explain = app.add_subcommand("explain", "Directional AMD asymmetry and LDA definition report");
  explain->add_option("--store", explain_store, "Embedding store directory")->required();
  explain->add_option("--defs", explain_defs, "Directory with <word>/definitions.{txt,emb}");
  explain->add_option("--word", explain_word, "Single word to explain (default: all words)");
  explain->add_option("--m", explain_spec.m, "Definitions listed per side");
  explain->add_option("--space", explain_space, "Space for the directional AMD");
  explain->add_option("--k", explain_k, "Target dimension for PCA/RAND");
  explain->add_option("--seed", explain_spec.seed, "Master seed");
  explain->add_option("--epsilon", explain_spec.epsilon, "Balance threshold for direction labels");
  explain->add_option("--lda-lambda", lda_lambda, "LDA ridge (default 1e-3 * trace(S_w) / K)");
  explain->add_option("--jobs", explain_spec.jobs, "Worker threads");
  bool explain_raw = false;
  explain->add_flag("--no-normalize", explain_raw, "Use usage vectors as stored instead of unit length");
  explain->add_option("--out", explain_out, "Output directory (all-words mode)");

  lscd::synth::StoreSpec synth_spec;
  std::string synth_out;
  auto* synth = app.add_subcommand("synth", "Write a synthetic store with definitions and gold.tsv");
  synth->add_option("--kind", synth_spec.kind, "shift, emergence, disappearance, stable, identical, hub, mixed");
  synth->add_option("--words", synth_spec.words, "Number of words");
  synth->add_option("--dim", synth_spec.dimension, "Embedding dimension");
  synth->add_option("--n1", synth_spec.n1, "Typical usages in period 1");
  synth->add_option("--n2", synth_spec.n2, "Typical usages in period 2");
  synth->add_option("--spread", synth_spec.spread, "Per-coordinate noise");
  synth->add_option("--definitions", synth_spec.definitions, "Definitions per word");
  synth->add_option("--seed", synth_spec.seed, "Master seed");
  synth->add_option("--out", synth_out, "Store directory")->required();

  std::string validate_store, validate_defs;
  auto* validate = app.add_subcommand("validate-store", "Load and check every matrix of a store");
  validate->add_option("--store", validate_store, "Embedding store directory")->required();
  validate->add_option("--defs", validate_defs, "Definitions directory to check as well");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (score->parsed()) {
      for (const auto& p : pipeline::cmd_score(score_flags.spec(), std::cerr)) std::cout << p.string() << "\n";
    } else if (evaluate->parsed()) {
      std::vector<std::filesystem::path> files(eval_files.begin(), eval_files.end());
      const auto outcome = pipeline::cmd_evaluate(files, eval_gold, eval_group_by, eval_out, std::cerr);
      for (const auto& r : outcome.results)
        std::cout << r.run << "\trho=" << lscd::io::format_real(r.rho) << "\tn_words=" << r.n_words << "\n";
      if (!outcome.all_ok) return 1;
    } else if (stress->parsed()) {
      const auto rows = pipeline::cmd_stress(stress_flags.spec(), stress_gold, std::cerr, stress_floor);
      std::cout << rows.size() << " stress rows written to " << (std::filesystem::path(stress_flags.out) / "stress.csv").string()
                << "\n";
    } else if (hub->parsed()) {
      auto spec = hub_flags.spec();
      const auto rows = pipeline::cmd_hubness(spec, std::cerr);
      std::cout << rows.size() << " hubness rows written to " << (spec.out_dir / "hubness.csv").string() << "\n";
    } else if (explain->parsed()) {
      explain_spec.store = explain_store;
      explain_spec.defs_dir = optional_path(explain_defs);
      if (!explain_word.empty()) explain_spec.word = explain_word;
      const auto space = lscd::parse_space(explain_space);
      if (!space) throw ConfigError("unknown space '" + explain_space + "'");
      explain_spec.space = *space;
      explain_spec.fixed_k = parse_k(explain_k);
      if (lda_lambda >= 0.0) explain_spec.lda.lambda = lda_lambda;
      explain_spec.normalize = !explain_raw;
      explain_spec.out_dir = explain_out;
      pipeline::cmd_explain(explain_spec, std::cout, std::cerr);
    } else if (synth->parsed()) {
      lscd::synth::write_synthetic_store(synth_spec, synth_out);
      std::cout << "wrote " << synth_spec.words << " words to " << synth_out << "\n";
    } else if (validate->parsed()) {
      const auto summary = pipeline::cmd_validate_store(validate_store, optional_path(validate_defs));
      for (const auto& w : summary.warnings) std::cerr << "warning: " << w << "\n";
      std::cout << "ok: " << summary.words << " words, " << summary.vectors << " vectors, " << summary.definition_sets
                << " definition sets, " << summary.warnings.size() << " warnings\n";
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
