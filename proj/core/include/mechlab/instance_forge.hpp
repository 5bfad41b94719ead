#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "mechlab/core_model.hpp"

namespace mechlab {

/// Adversarial instance families.
enum class FamilyKind {
  kSumK2Family,      // x groups all-at-0, y half/half groups, k=2
  kMaxK2NineHalves,  // two {1/2+eps, 1, 1} groups plus {1, 1, 1}, k=2
  kSumLowerK,        // one {0, 1} group plus k-1 {1, 1} groups
  kMaxLowerK,        // same shape, aimed at the max-variant mechanisms
  kGAlpha,           // two copies of a group with an alpha-fraction at 0
};

struct FamilySpec {
  FamilyKind kind = FamilyKind::kSumLowerK;
  int x = 0;
  int y = 0;
  int s = 2;
  double eps = 0.0;
  int k = 0;
  double alpha = 0.0;

  static FamilySpec sum_k2(int x, int y, int s = 2);
  static FamilySpec nine_halves(double eps);
  static FamilySpec sum_lower_k(int k);
  static FamilySpec max_lower_k(int k);
  static FamilySpec g_alpha(double alpha, int s = 2);
};

/// Parses family CLI strings such as "sum-lower-k:k=3", "nine-halves:eps=1e-3",
/// "sum-k2:x=5,y=7,s=2", "max-lower-k:k=2", "g-alpha:alpha=0.5,s=2".
FamilySpec parse_family_spec(std::string_view text);
std::string to_string(const FamilySpec& spec);

Instance gen_family(const FamilySpec& spec);

/// Closed-form costs the family is built around: the cost of the solution the
/// construction punishes, the optimal cost, and their ratio.
struct FamilyTargets {
  bool has_values = false;
  double adversarial_cost = 0.0;
  double optimal_cost = 0.0;
  double target_ratio = 0.0;
};

FamilyTargets family_targets(const FamilySpec& spec);

enum class PositionDistribution { kUniform, kTwoCluster };

PositionDistribution parse_distribution(std::string_view text);

/// Seeded random-instance recipe. The group-count range is clamped so m >= k
/// always holds; positions are drawn from [0, 1] (uniform) or from
/// [0, 0.1] u [0.9, 1] (two-cluster).
struct RandomConfig {
  int min_groups = 2;
  int max_groups = 6;
  int min_group_size = 1;
  int max_group_size = 4;
  int k = 2;
  PositionDistribution distribution = PositionDistribution::kUniform;
  std::uint64_t seed = 0;
};

/// Deterministic for a fixed seed, across platforms: only raw mt19937_64
/// draws are used, never distribution adapters.
Instance gen_random(const RandomConfig& config);

std::string instance_to_json(const Instance& instance);
Instance instance_from_json(std::string_view text);

void save_instance(const Instance& instance, std::ostream& sink);
Instance load_instance(std::istream& source);
void save_instance_file(const Instance& instance, const std::string& path);
Instance load_instance_file(const std::string& path);

/// Stable 16-hex-digit digest of the canonical JSON encoding.
std::string instance_digest(const Instance& instance);

}  // namespace mechlab
