#include "lscd/synth.hpp"

#include "lscd/corpus_io.hpp"
#include "lscd/error.hpp"
#include "lscd/kernels.hpp"
#include "lscd/metrics.hpp"
#include "lscd/random.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

namespace lscd::synth {

RowMatrix gaussian_cluster(const Eigen::RowVectorXd& center, double spread, int n, std::uint64_t seed) {
  if (n < 1) throw ConfigError("cluster size must be >= 1");
  if (spread < 0.0) throw ConfigError("spread must be >= 0");
  if ((center.array() == 0.0).all()) throw ConfigError("cluster centre must be nonzero");
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  RowMatrix out(n, center.size());
  for (Index i = 0; i < n; ++i) {
    do {
      for (Index j = 0; j < center.size(); ++j) out(i, j) = center(j) + spread * normal(rng);
    } while ((out.row(i).array() == 0.0).all());
  }
  return out;
}

Eigen::RowVectorXd random_direction(int dimension, std::uint64_t seed) {
  if (dimension < 1) throw ConfigError("dimension must be >= 1");
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::RowVectorXd v(dimension);
  do {
    for (auto& x : v) x = normal(rng);
  } while (v.norm() == 0.0);
  return v / v.norm();
}

Eigen::RowVectorXd orthogonal_direction(const Eigen::RowVectorXd& base, std::uint64_t seed) {
  if (base.size() < 2) throw ConfigError("an orthogonal direction needs dimension >= 2");
  const Eigen::RowVectorXd unit = base / base.norm();
  for (std::uint64_t attempt = 0;; ++attempt) {
    Eigen::RowVectorXd v = random_direction(static_cast<int>(base.size()), splitmix64(seed + attempt));
    v -= v.dot(unit) * unit;
    if (v.norm() > 1e-6) return v / v.norm();
  }
}

namespace {

std::uint64_t stream(std::uint64_t seed, std::uint64_t tag) { return splitmix64(seed ^ splitmix64(tag)); }

void check(const Scenario& s) {
  if (s.dimension < 2) throw ConfigError("scenario dimension must be >= 2");
  if (s.n1 < 1 || s.n2 < 1) throw ConfigError("scenario cluster sizes must be >= 1");
  if (s.spread < 0.0) throw ConfigError("scenario spread must be >= 0");
  if ((s.kind == ScenarioKind::EMERGENCE || s.kind == ScenarioKind::DISAPPEARANCE) && s.n_extra < 1)
    throw ConfigError("emerging/vanishing cluster needs n_extra >= 1");
  if (s.kind == ScenarioKind::HUB_INJECTION && (s.n_extra < 1 || s.n_extra >= s.n1))
    throw ConfigError("hub injection needs 1 <= n_extra < n1");
}

}  // namespace

ScenarioSample make_scenario(const Scenario& s) {
  check(s);
  const Eigen::RowVectorXd base = random_direction(s.dimension, stream(s.seed, 1));
  const Eigen::RowVectorXd other = orthogonal_direction(base, stream(s.seed, 2));
  const std::uint64_t seed_a = stream(s.seed, 3);
  const std::uint64_t seed_b = stream(s.seed, 4);
  const std::uint64_t seed_extra = stream(s.seed, 5);

  ScenarioSample out;
  out.noise_floor = s.spread * s.spread * s.dimension;
  switch (s.kind) {
    case ScenarioKind::STABLE:
      out.a = gaussian_cluster(base, s.spread, s.n1, seed_a);
      out.b = gaussian_cluster(base, s.spread, s.n2, s.identical ? seed_a : seed_b);
      break;
    case ScenarioKind::EMERGENCE:
    case ScenarioKind::DISAPPEARANCE: {
      RowMatrix plain = gaussian_cluster(base, s.spread, s.kind == ScenarioKind::EMERGENCE ? s.n1 : s.n2, seed_a);
      RowMatrix mixed = vstack(gaussian_cluster(base, s.spread, s.kind == ScenarioKind::EMERGENCE ? s.n2 : s.n1, seed_b),
                               gaussian_cluster(other, s.spread, s.n_extra, seed_extra));
      if (s.kind == ScenarioKind::EMERGENCE) {
        out.a = std::move(plain);
        out.b = std::move(mixed);
      } else {
        out.a = std::move(mixed);
        out.b = std::move(plain);
      }
      break;
    }
    case ScenarioKind::SHIFT: {
      const Eigen::RowVectorXd rotated = std::cos(s.angle) * base + std::sin(s.angle) * other;
      out.a = gaussian_cluster(base, s.spread, s.n1, seed_a);
      out.b = gaussian_cluster(rotated, s.spread, s.n2, seed_b);
      out.baseline.emplace(out.a, gaussian_cluster(base, s.spread, s.n2, seed_b));
      break;
    }
    case ScenarioKind::HUB_INJECTION: {
      const double sep = s.angle == 0.0 ? std::numbers::pi / 3.0 : s.angle;
      const Eigen::RowVectorXd target = std::cos(sep) * base + std::sin(sep) * other;
      RowMatrix a = gaussian_cluster(base, s.spread, s.n1, seed_a);
      out.b = gaussian_cluster(target, s.spread, s.n2, seed_b);
      out.baseline.emplace(a, out.b);
      const Eigen::RowVectorXd hub = kernels::column_means(out.b);
      for (Index i = 0; i < s.n_extra; ++i) a.row(i) = hub;
      out.a = std::move(a);
      break;
    }
  }
  return out;
}

ContractCheck check_contract(const Scenario& s, const ScenarioSample& sample) {
  std::ostringstream msg;
  ContractCheck c;
  const auto amd = metrics::amd_directional(sample.a, sample.b);
  switch (s.kind) {
    case ScenarioKind::EMERGENCE:
      c.holds = amd.b_to_a > amd.a_to_b;
      msg << "amd_2to1=" << amd.b_to_a << " amd_1to2=" << amd.a_to_b;
      break;
    case ScenarioKind::DISAPPEARANCE:
      c.holds = amd.a_to_b > amd.b_to_a;
      msg << "amd_1to2=" << amd.a_to_b << " amd_2to1=" << amd.b_to_a;
      break;
    case ScenarioKind::STABLE: {
      const double asym = std::abs(amd.a_to_b - amd.b_to_a);
      c.holds = asym < sample.noise_floor && amd.symmetric() < sample.noise_floor;
      msg << "asymmetry=" << asym << " amd=" << amd.symmetric() << " floor=" << sample.noise_floor;
      break;
    }
    case ScenarioKind::SHIFT: {
      const auto& [a0, b0] = *sample.baseline;
      const double d_apd = metrics::apd(sample.a, sample.b) - metrics::apd(a0, b0);
      const double d_prt = metrics::prt(sample.a, sample.b) - metrics::prt(a0, b0);
      const double d_amd = amd.symmetric() - metrics::amd(a0, b0);
      const double d_samd = metrics::samd_greedy(sample.a, sample.b, s.seed).score -
                            metrics::samd_greedy(a0, b0, s.seed).score;
      c.holds = d_apd > 0.0 && d_prt > 0.0 && d_amd > 0.0 && d_samd > 0.0;
      msg << "increase over angle 0: apd=" << d_apd << " prt=" << d_prt << " amd=" << d_amd << " samd=" << d_samd;
      break;
    }
    case ScenarioKind::HUB_INJECTION: {
      const auto& [a0, b0] = *sample.baseline;
      const double amd_drop = metrics::amd(a0, b0) - amd.symmetric();
      const double samd_drop = metrics::samd_greedy(a0, b0, s.seed).score -
                               metrics::samd_greedy(sample.a, sample.b, s.seed).score;
      c.holds = amd_drop > samd_drop;
      msg << "amd drop=" << amd_drop << " samd drop=" << samd_drop;
      break;
    }
  }
  c.detail = msg.str();
  return c;
}

namespace {

struct GeneratedWord {
  RowMatrix a;
  RowMatrix b;
  double gold = 0.0;
  Eigen::RowVectorXd base;
  Eigen::RowVectorXd other;
};

GeneratedWord generate_word(const std::string& kind, const StoreSpec& spec, std::uint64_t word_seed) {
  Rng rng(stream(word_seed, 10));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> jitter(-spec.n1 / 4, spec.n1 / 4);

  Scenario s;
  s.dimension = spec.dimension;
  s.spread = spec.spread;
  s.seed = word_seed;
  s.n1 = std::max(2, spec.n1 + jitter(rng));
  s.n2 = std::max(2, spec.n2 + jitter(rng));
  GeneratedWord w;
  const double magnitude = unit(rng);

  std::string effective = kind;
  if (kind == "mixed") {
    static const char* kinds[] = {"shift", "emergence", "disappearance"};
    effective = kinds[std::uniform_int_distribution<int>(0, 2)(rng)];
  }
  if (effective == "shift") {
    s.kind = ScenarioKind::SHIFT;
    s.angle = magnitude * std::numbers::pi / 2.0;
    w.gold = magnitude;
  } else if (effective == "emergence" || effective == "disappearance") {
    s.kind = effective == "emergence" ? ScenarioKind::EMERGENCE : ScenarioKind::DISAPPEARANCE;
    s.n_extra = std::max(1, static_cast<int>(std::lround(magnitude * spec.n2)));
    w.gold = static_cast<double>(s.n_extra) / (s.n_extra + (effective == "emergence" ? s.n2 : s.n1));
  } else if (effective == "stable" || effective == "identical") {
    s.kind = ScenarioKind::STABLE;
    s.identical = effective == "identical";
    if (s.identical) s.n2 = s.n1;
    w.gold = magnitude;
  } else if (effective == "hub") {
    s.kind = ScenarioKind::HUB_INJECTION;
    s.n_extra = std::max(1, s.n1 / 8);
    w.gold = magnitude;
  } else {
    throw ConfigError("unknown synthetic store kind '" + kind + "'");
  }
  auto sample = make_scenario(s);
  w.a = std::move(sample.a);
  w.b = std::move(sample.b);
  w.base = random_direction(s.dimension, stream(word_seed, 1));
  w.other = orthogonal_direction(w.base, stream(word_seed, 2));
  return w;
}

}  // namespace

void write_synthetic_store(const StoreSpec& spec, const std::filesystem::path& root) {
  if (spec.words < 1) throw ConfigError("synthetic store needs at least one word");
  if (spec.definitions < 2) throw ConfigError("synthetic store needs at least 2 definitions per word");
  if (spec.n1 < 2 || spec.n2 < 2) throw ConfigError("synthetic store needs n1, n2 >= 2");
  io::StoreWriter writer(root, "synthetic", "synth", static_cast<std::uint32_t>(spec.dimension));
  GoldScores gold;
  const int width = spec.words < 1000 ? 3 : 6;
  for (int i = 0; i < spec.words; ++i) {
    std::string index = std::to_string(i);
    index.insert(0, static_cast<std::size_t>(std::max(0, width - static_cast<int>(index.size()))), '0');
    const std::string word = "word" + index;
    const std::uint64_t word_seed = derive_word_seed(spec.seed, word);
    GeneratedWord w = generate_word(spec.kind, spec, word_seed);
    writer.add_word(word, w.a, w.b);

    // Definition 0 sits on the period-1 sense, definition 1 on the other
    // sense direction; the rest are unrelated directions.
    RowMatrix defs(spec.definitions, spec.dimension);
    std::vector<std::string> texts;
    for (int k = 0; k < spec.definitions; ++k) {
      Eigen::RowVectorXd dir = k == 0   ? w.base
                               : k == 1 ? w.other
                                        : random_direction(spec.dimension, stream(word_seed, 100 + k));
      defs.row(k) = gaussian_cluster(dir, spec.spread / 2.0, 1, stream(word_seed, 200 + k)).row(0);
      texts.push_back(k == 0   ? "original sense of " + word
                      : k == 1 ? "new sense of " + word
                               : "unrelated sense " + std::to_string(k) + " of " + word);
    }
    writer.add_definitions(word, texts, defs);
    gold.entries[word] = w.gold;
  }
  writer.finish();
  io::write_gold_scores(gold, root / "gold.tsv");
}

}  // namespace lscd::synth
