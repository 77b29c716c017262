#pragma once

#include "lscd/matrix.hpp"
#include "lscd/types.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace lscd::io {

namespace fs = std::filesystem;

/// Row counts of one word as recorded in the manifest.
struct WordEntry {
  std::string word;
  std::uint32_t n1 = 0;
  std::uint32_t n2 = 0;
};

struct StoreManifest {
  std::string encoder_name;
  std::uint32_t dimension = 0;
  std::string language;
  std::vector<WordEntry> words;
};

/// Usage vectors of one target word in one period (period is 1 or 2).
struct UsageEmbeddingSet {
  std::string word;
  int period = 1;
  RowMatrix vectors;
};

/// K definition texts aligned with the rows of their embedding matrix.
struct DefinitionSet {
  std::string word;
  std::vector<std::string> texts;
  RowMatrix embeddings;

  [[nodiscard]] Index size() const { return embeddings.rows(); }
};

// --- binary matrix files -------------------------------------------------
//
// Layout: "EMB1", u32 LE rows, u32 LE cols, rows*cols float32 LE, row-major.

struct EmbHeader {
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
};

EmbHeader read_emb_header(const fs::path& path);
RowMatrix read_emb(const fs::path& path);
/// Values are narrowed to float32. Values that came from a float32 file
/// are written back bit-exactly.
void write_emb(const fs::path& path, const RowMatrix& m);

// --- embedding store ----------------------------------------------------

/// Manifest-backed collection of per-word usage matrices. Headers of every
/// matrix are checked when the store is opened; full matrix contents
/// (including the nonzero-row invariant) are validated when a word is loaded.
class EmbeddingStore {
 public:
  static EmbeddingStore open(const fs::path& root);

  [[nodiscard]] const fs::path& root() const { return root_; }
  [[nodiscard]] const StoreManifest& manifest() const { return manifest_; }
  [[nodiscard]] Index dimension() const { return manifest_.dimension; }
  /// Words in manifest order.
  [[nodiscard]] std::vector<std::string> words() const;
  [[nodiscard]] bool contains(const std::string& word) const;

  [[nodiscard]] UsageEmbeddingSet load(const std::string& word, int period) const;
  [[nodiscard]] std::pair<UsageEmbeddingSet, UsageEmbeddingSet> load_pair(const std::string& word) const;

  static fs::path matrix_path(const fs::path& root, const std::string& word, int period);

 private:
  fs::path root_;
  StoreManifest manifest_;
};

inline EmbeddingStore load_embedding_store(const fs::path& root) { return EmbeddingStore::open(root); }

/// Writes a conforming store: per-word matrices first, manifest on finish().
class StoreWriter {
 public:
  StoreWriter(fs::path root, std::string encoder_name, std::string language, std::uint32_t dimension);

  void add_word(const std::string& word, const RowMatrix& period1, const RowMatrix& period2);
  void add_definitions(const std::string& word, const std::vector<std::string>& texts,
                       const RowMatrix& embeddings);
  void finish();

 private:
  fs::path root_;
  StoreManifest manifest_;
};

StoreManifest read_manifest(const fs::path& path);
void write_manifest(const fs::path& path, const StoreManifest& manifest);

/// Throws ValidationError naming the word if `word` cannot be used as a
/// directory name or CSV field.
void check_word_identifier(const std::string& word);

/// Throws ValidationError naming word and period if any row is all-zero.
void check_nonzero_rows(const RowMatrix& m, const std::string& word, std::string_view what);

// --- definitions, gold, results -----------------------------------------

/// Reads <dir>/<word>/definitions.txt and <dir>/<word>/definitions.emb.
/// When expected_dim > 0 the embedding dimension must match it.
DefinitionSet load_definition_set(const fs::path& dir, const std::string& word, Index expected_dim = 0);
bool has_definition_set(const fs::path& dir, const std::string& word);

GoldScores load_gold_scores(const fs::path& path);
void write_gold_scores(const GoldScores& gold, const fs::path& path);

/// CSV header `word,metric,space,k,seed,score`, scores with 15 significant digits.
void write_results(const ChangeScoreTable& table, const fs::path& path);
ChangeScoreTable read_results(const fs::path& path);

/// %.15g; used for every real number the engine writes.
std::string format_real(double v);

/// Splits one CSV record, honouring double-quoted fields.
std::vector<std::string> split_csv_line(std::string_view line);
/// Quotes a field only if it needs it.
std::string csv_field(std::string_view s);

}  // namespace lscd::io
