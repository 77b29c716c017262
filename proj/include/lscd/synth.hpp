#pragma once

#include "lscd/matrix.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>

namespace lscd::synth {

/// n rows of center + spread * g, g standard normal per coordinate; rows
/// that come out exactly zero are redrawn.
RowMatrix gaussian_cluster(const Eigen::RowVectorXd& center, double spread, int n, std::uint64_t seed);

/// Unit vector drawn uniformly on the sphere.
Eigen::RowVectorXd random_direction(int dimension, std::uint64_t seed);

/// Unit vector orthogonal to `base` (Gram-Schmidt on a random draw).
Eigen::RowVectorXd orthogonal_direction(const Eigen::RowVectorXd& base, std::uint64_t seed);

enum class ScenarioKind { STABLE, EMERGENCE, DISAPPEARANCE, SHIFT, HUB_INJECTION };

struct Scenario {
  ScenarioKind kind = ScenarioKind::STABLE;
  int dimension = 16;
  int n1 = 40;            ///< base usages in period 1
  int n2 = 40;            ///< base usages in period 2
  int n_extra = 15;       ///< emerging/vanishing cluster size, or number of hubs
  double spread = 0.05;
  double angle = 0.0;     ///< SHIFT: rotation of the period-2 centre (radians); HUB: separation (0 -> pi/3)
  bool identical = false; ///< STABLE: draw both periods from the same seed
  std::uint64_t seed = 0;
};

struct ScenarioSample {
  RowMatrix a;
  RowMatrix b;
  /// SHIFT: the angle-0 pair; HUB_INJECTION: the pair before injection.
  std::optional<std::pair<RowMatrix, RowMatrix>> baseline;
  /// Typical within-cluster cosine distance scale, spread^2 * D.
  double noise_floor = 0.0;
};

/// Throws ConfigError on invalid parameters.
ScenarioSample make_scenario(const Scenario& s);

struct ContractCheck {
  bool holds = false;
  std::string detail;
};

/// Qualitative expectation of each scenario:
///   EMERGENCE      AMD(2->1) > AMD(1->2)
///   DISAPPEARANCE  AMD(1->2) > AMD(2->1)
///   STABLE         |asymmetry| and AMD below the noise floor
///   SHIFT          APD, PRT, AMD, SAMD all above their angle-0 baseline
///   HUB_INJECTION  AMD drops by more than greedy SAMD does
ContractCheck check_contract(const Scenario& s, const ScenarioSample& sample);

/// Parameters of a synthetic store written by write_synthetic_store.
struct StoreSpec {
  /// shift | emergence | disappearance | stable | identical | hub | mixed
  std::string kind = "mixed";
  int words = 24;
  int dimension = 16;
  int n1 = 40;
  int n2 = 40;
  double spread = 0.05;
  int definitions = 6;
  std::uint64_t seed = 0;
};

/// Writes manifest, usage matrices, per-word definitions and gold.tsv under
/// `root`. Gold scores follow the graded magnitude each word was generated
/// with (angle, emerging share); for stable/identical/hub they are noise.
void write_synthetic_store(const StoreSpec& spec, const std::filesystem::path& root);

}  // namespace lscd::synth
