#include "lscd/corpus_io.hpp"

#include "lscd/error.hpp"

#include "json.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

namespace lscd::io {

namespace {

constexpr std::array<char, 4> kMagic{'E', 'M', 'B', '1'};

std::uint32_t to_le(std::uint32_t v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    return ((v & 0xffu) << 24) | ((v & 0xff00u) << 8) | ((v >> 8) & 0xff00u) | (v >> 24);
  }
}

std::uint32_t from_le(std::uint32_t v) { return to_le(v); }

std::uint32_t read_u32(std::istream& in, const fs::path& path) {
  std::uint32_t v = 0;
  if (!in.read(reinterpret_cast<char*>(&v), sizeof v))
    throw FormatError("truncated header in " + path.string());
  return from_le(v);
}

void write_u32(std::ostream& out, std::uint32_t v) {
  v = to_le(v);
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

EmbHeader read_header(std::istream& in, const fs::path& path) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic)
    throw FormatError("bad magic in " + path.string() + " (expected EMB1)");
  EmbHeader h;
  h.rows = read_u32(in, path);
  h.cols = read_u32(in, path);
  return h;
}

std::ifstream open_in(const fs::path& path, std::ios::openmode mode = std::ios::in) {
  std::ifstream in(path, mode);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

std::string_view strip_cr(std::string_view s) {
  if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
  return s;
}

std::string period_name(int period) { return "period " + std::to_string(period); }

}  // namespace

// --- binary matrix files ---------------------------------------------------

EmbHeader read_emb_header(const fs::path& path) {
  auto in = open_in(path, std::ios::binary);
  return read_header(in, path);
}

RowMatrix read_emb(const fs::path& path) {
  auto in = open_in(path, std::ios::binary);
  const EmbHeader h = read_header(in, path);
  const std::size_t count = std::size_t{h.rows} * h.cols;
  std::vector<std::uint32_t> raw(count);
  if (count > 0 && !in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(count * 4)))
    throw FormatError("truncated matrix data in " + path.string());
  if (in.peek() != std::char_traits<char>::eof())
    throw FormatError("trailing bytes after matrix data in " + path.string());
  RowMatrix m(h.rows, h.cols);
  double* dst = m.data();
  for (std::size_t i = 0; i < count; ++i) dst[i] = std::bit_cast<float>(from_le(raw[i]));
  return m;
}

void write_emb(const fs::path& path, const RowMatrix& m) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(kMagic.data(), kMagic.size());
  write_u32(out, static_cast<std::uint32_t>(m.rows()));
  write_u32(out, static_cast<std::uint32_t>(m.cols()));
  std::vector<std::uint32_t> raw(static_cast<std::size_t>(m.size()));
  const double* src = m.data();
  for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = to_le(std::bit_cast<std::uint32_t>(static_cast<float>(src[i])));
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size() * 4));
  if (!out) throw IoError("write failed for " + path.string());
}

// --- validation helpers ------------------------------------------------------

void check_word_identifier(const std::string& word) {
  if (word.empty() || word == "." || word == "..")
    throw ValidationError("invalid word identifier '" + word + "'");
  for (char c : word) {
    if (c == '/' || c == '\\' || c == '\0' || c == '\n' || c == '\r' || c == '\t')
      throw ValidationError("word identifier '" + word + "' contains a forbidden character");
  }
}

void check_nonzero_rows(const RowMatrix& m, const std::string& word, std::string_view what) {
  for (Index i = 0; i < m.rows(); ++i) {
    if ((m.row(i).array() == 0.0).all())
      throw ValidationError("word '" + word + "' " + std::string(what) + ": row " + std::to_string(i) +
                            " is the zero vector");
    if (!m.row(i).allFinite())
      throw ValidationError("word '" + word + "' " + std::string(what) + ": row " + std::to_string(i) +
                            " has non-finite values");
  }
}

// --- manifest ------------------------------------------------------------------

StoreManifest read_manifest(const fs::path& path) {
  if (!fs::exists(path)) throw FormatError("missing manifest " + path.string());
  auto in = open_in(path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("manifest " + path.string() + " is not valid JSON: " + e.what());
  }
  StoreManifest m;
  try {
    m.encoder_name = j.at("encoder_name").get<std::string>();
    const auto dim = j.at("dimension").get<std::int64_t>();
    if (dim < 1) throw ValidationError("manifest dimension must be >= 1, got " + std::to_string(dim));
    m.dimension = static_cast<std::uint32_t>(dim);
    m.language = j.at("language").get<std::string>();
    std::set<std::string> seen;
    for (const auto& w : j.at("words")) {
      WordEntry e;
      e.word = w.at("word").get<std::string>();
      const auto n1 = w.at("n1").get<std::int64_t>();
      const auto n2 = w.at("n2").get<std::int64_t>();
      check_word_identifier(e.word);
      if (n1 < 1 || n2 < 1)
        throw ValidationError("manifest row counts for '" + e.word + "' must be >= 1");
      if (!seen.insert(e.word).second) throw ValidationError("duplicate word '" + e.word + "' in manifest");
      e.n1 = static_cast<std::uint32_t>(n1);
      e.n2 = static_cast<std::uint32_t>(n2);
      m.words.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("manifest " + path.string() + ": " + e.what());
  }
  return m;
}

void write_manifest(const fs::path& path, const StoreManifest& manifest) {
  nlohmann::json j;
  j["encoder_name"] = manifest.encoder_name;
  j["dimension"] = manifest.dimension;
  j["language"] = manifest.language;
  j["words"] = nlohmann::json::array();
  for (const auto& e : manifest.words) j["words"].push_back({{"word", e.word}, {"n1", e.n1}, {"n2", e.n2}});
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

// --- store -----------------------------------------------------------------------

fs::path EmbeddingStore::matrix_path(const fs::path& root, const std::string& word, int period) {
  return root / word / (std::to_string(period) + ".emb");
}

EmbeddingStore EmbeddingStore::open(const fs::path& root) {
  if (!fs::is_directory(root)) throw IoError("store directory " + root.string() + " does not exist");
  EmbeddingStore store;
  store.root_ = root;
  store.manifest_ = read_manifest(root / "manifest.json");
  for (const auto& e : store.manifest_.words) {
    for (int period : {1, 2}) {
      const auto path = matrix_path(root, e.word, period);
      if (!fs::exists(path))
        throw ValidationError("word '" + e.word + "': missing " + period_name(period));
      const EmbHeader h = read_emb_header(path);
      if (h.cols != store.manifest_.dimension)
        throw ValidationError("word '" + e.word + "' " + period_name(period) + ": dimension " +
                              std::to_string(h.cols) + " does not match manifest dimension " +
                              std::to_string(store.manifest_.dimension));
      if (h.rows == 0) throw ValidationError("word '" + e.word + "' " + period_name(period) + ": zero rows");
      const std::uint32_t expected = period == 1 ? e.n1 : e.n2;
      if (h.rows != expected)
        throw ValidationError("word '" + e.word + "' " + period_name(period) + ": " + std::to_string(h.rows) +
                              " rows but manifest records " + std::to_string(expected));
    }
  }
  return store;
}

std::vector<std::string> EmbeddingStore::words() const {
  std::vector<std::string> out;
  out.reserve(manifest_.words.size());
  for (const auto& e : manifest_.words) out.push_back(e.word);
  return out;
}

bool EmbeddingStore::contains(const std::string& word) const {
  for (const auto& e : manifest_.words)
    if (e.word == word) return true;
  return false;
}

UsageEmbeddingSet EmbeddingStore::load(const std::string& word, int period) const {
  if (period != 1 && period != 2) throw ConfigError("period must be 1 or 2");
  if (!contains(word)) throw ConfigError("word '" + word + "' is not in the store");
  UsageEmbeddingSet set{word, period, read_emb(matrix_path(root_, word, period))};
  if (set.vectors.cols() != static_cast<Index>(manifest_.dimension))
    throw ValidationError("word '" + word + "' " + period_name(period) + ": dimension mismatch");
  if (set.vectors.rows() == 0) throw ValidationError("word '" + word + "' " + period_name(period) + ": zero rows");
  check_nonzero_rows(set.vectors, word, period_name(period));
  return set;
}

std::pair<UsageEmbeddingSet, UsageEmbeddingSet> EmbeddingStore::load_pair(const std::string& word) const {
  return {load(word, 1), load(word, 2)};
}

StoreWriter::StoreWriter(fs::path root, std::string encoder_name, std::string language, std::uint32_t dimension)
    : root_(std::move(root)) {
  if (dimension < 1) throw ConfigError("store dimension must be >= 1");
  manifest_.encoder_name = std::move(encoder_name);
  manifest_.language = std::move(language);
  manifest_.dimension = dimension;
  fs::create_directories(root_);
}

void StoreWriter::add_word(const std::string& word, const RowMatrix& period1, const RowMatrix& period2) {
  check_word_identifier(word);
  for (const auto& e : manifest_.words)
    if (e.word == word) throw ValidationError("duplicate word '" + word + "'");
  for (const RowMatrix* m : {&period1, &period2}) {
    if (m->rows() < 1) throw ValidationError("word '" + word + "': zero rows");
    if (m->cols() != static_cast<Index>(manifest_.dimension))
      throw ValidationError("word '" + word + "': dimension mismatch");
  }
  fs::create_directories(root_ / word);
  write_emb(EmbeddingStore::matrix_path(root_, word, 1), period1);
  write_emb(EmbeddingStore::matrix_path(root_, word, 2), period2);
  manifest_.words.push_back(
      {word, static_cast<std::uint32_t>(period1.rows()), static_cast<std::uint32_t>(period2.rows())});
}

void StoreWriter::add_definitions(const std::string& word, const std::vector<std::string>& texts,
                                  const RowMatrix& embeddings) {
  check_word_identifier(word);
  if (texts.empty()) throw ValidationError("word '" + word + "': K must be >= 1");
  if (static_cast<Index>(texts.size()) != embeddings.rows())
    throw ValidationError("word '" + word + "': definition count mismatch");
  fs::create_directories(root_ / word);
  std::ofstream out(root_ / word / "definitions.txt", std::ios::trunc);
  if (!out) throw IoError("cannot write definitions for " + word);
  for (const auto& t : texts) {
    if (t.find('\n') != std::string::npos) throw ValidationError("definition text contains a newline");
    out << t << '\n';
  }
  write_emb(root_ / word / "definitions.emb", embeddings);
}

void StoreWriter::finish() { write_manifest(root_ / "manifest.json", manifest_); }

// --- definitions -----------------------------------------------------------------

bool has_definition_set(const fs::path& dir, const std::string& word) {
  return fs::exists(dir / word / "definitions.txt") && fs::exists(dir / word / "definitions.emb");
}

DefinitionSet load_definition_set(const fs::path& dir, const std::string& word, Index expected_dim) {
  const auto text_path = dir / word / "definitions.txt";
  const auto emb_path = dir / word / "definitions.emb";
  if (!fs::exists(text_path)) throw IoError("missing " + text_path.string());
  if (!fs::exists(emb_path)) throw IoError("missing " + emb_path.string());

  DefinitionSet defs;
  defs.word = word;
  auto in = open_in(text_path);
  std::string line;
  while (std::getline(in, line)) defs.texts.emplace_back(strip_cr(line));
  while (!defs.texts.empty() && defs.texts.back().empty()) defs.texts.pop_back();
  if (defs.texts.empty()) throw ValidationError("word '" + word + "': K must be >= 1 (no definitions)");

  defs.embeddings = read_emb(emb_path);
  if (defs.embeddings.rows() != static_cast<Index>(defs.texts.size()))
    throw ValidationError("word '" + word + "': " + std::to_string(defs.texts.size()) +
                          " definition texts but " + std::to_string(defs.embeddings.rows()) +
                          " embedding rows");
  if (expected_dim > 0 && defs.embeddings.cols() != expected_dim)
    throw ValidationError("word '" + word + "': definition dimension " + std::to_string(defs.embeddings.cols()) +
                          " does not match store dimension " + std::to_string(expected_dim));
  check_nonzero_rows(defs.embeddings, word, "definitions");
  return defs;
}

// --- gold ------------------------------------------------------------------------------

GoldScores load_gold_scores(const fs::path& path) {
  auto in = open_in(path);
  GoldScores gold;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = strip_cr(line);
    if (view.empty() || view.front() == '#') continue;
    const auto tab = view.find('\t');
    if (tab == std::string_view::npos)
      throw FormatError(path.string() + ":" + std::to_string(line_no) + ": expected word<TAB>score");
    const std::string word(view.substr(0, tab));
    std::string_view score_text = view.substr(tab + 1);
    while (!score_text.empty() && (score_text.back() == ' ' || score_text.back() == '\t'))
      score_text.remove_suffix(1);
    double score = 0.0;
    const auto [ptr, ec] = std::from_chars(score_text.data(), score_text.data() + score_text.size(), score);
    if (ec != std::errc{} || ptr != score_text.data() + score_text.size() || !std::isfinite(score))
      throw FormatError(path.string() + ":" + std::to_string(line_no) + ": non-numeric score '" +
                        std::string(score_text) + "'");
    if (!gold.entries.emplace(word, score).second)
      throw ValidationError(path.string() + ":" + std::to_string(line_no) + ": duplicate word '" + word + "'");
  }
  return gold;
}

void write_gold_scores(const GoldScores& gold, const fs::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  for (const auto& [word, score] : gold.entries) out << word << '\t' << format_real(score) << '\n';
}

// --- results CSV ---------------------------------------------------------------------

std::string format_real(double v) {
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.15g", v);
  return buf.data();
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  line = strip_cr(line);
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

void write_results(const ChangeScoreTable& table, const fs::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << "word,metric,space,k,seed,score\n";
  for (const auto& [word, row] : table.rows) {
    out << csv_field(word) << ',' << to_string(table.metric) << ',' << to_string(table.space) << ',' << row.k
        << ',' << table.seed << ',' << format_real(row.score) << '\n';
  }
  if (!out) throw IoError("write failed for " + path.string());
}

ChangeScoreTable read_results(const fs::path& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line) || strip_cr(line) != "word,metric,space,k,seed,score")
    throw FormatError(path.string() + ": missing results header");
  ChangeScoreTable table;
  bool first = true;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (strip_cr(line).empty()) continue;
    const auto where = path.string() + ":" + std::to_string(line_no);
    const auto f = split_csv_line(line);
    if (f.size() != 6) throw FormatError(where + ": expected 6 fields");
    const auto metric = parse_metric(f[1]);
    const auto space = parse_space(f[2]);
    if (!metric || !space) throw FormatError(where + ": unknown metric or space");
    std::uint64_t seed = 0;
    int k = 0;
    double score = 0.0;
    auto parse = [&](const std::string& s, auto& v) {
      const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc{} || ptr != s.data() + s.size()) throw FormatError(where + ": bad number '" + s + "'");
    };
    parse(f[3], k);
    parse(f[4], seed);
    parse(f[5], score);
    if (first) {
      table.metric = *metric;
      table.space = *space;
      table.seed = seed;
      first = false;
    } else if (*metric != table.metric || *space != table.space || seed != table.seed) {
      throw FormatError(where + ": mixed runs in one results file");
    }
    if (!table.rows.emplace(f[0], ScoreRow{k, score}).second)
      throw FormatError(where + ": duplicate word '" + f[0] + "'");
  }
  return table;
}

}  // namespace lscd::io
