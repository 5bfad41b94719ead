#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mechlab/core_model.hpp"

namespace mechlab {

/// Two-phase mechanism family. ParamK2 is the fully parameterized
/// order-statistic rule for two facilities; the dispatchers pick concrete
/// parameters from the number of groups; SumK/MaxK generalize to k >= 2
/// facilities; AMaxStar pairs the median representative with its closest
/// neighbor (and is deliberately not strategyproof).
enum class MechanismKind {
  kParamK2,
  kSumK2Dispatcher,
  kMaxK2Dispatcher,
  kAMaxStar,
  kSumK,
  kMaxK,
};

struct MechanismSpec {
  MechanismKind kind = MechanismKind::kSumK2Dispatcher;
  // ParamK2 only; each must lie in (0, 1].
  double theta = 0.0;
  double l = 0.0;
  double r = 0.0;
  // SumK/MaxK only; 0 adopts the instance's facility count.
  int k = 0;

  static MechanismSpec param_k2(double theta, double l, double r);
  static MechanismSpec sum_k2();
  static MechanismSpec max_k2();
  static MechanismSpec a_max_star();
  static MechanismSpec sum_k(int k = 0);
  static MechanismSpec max_k(int k = 0);
};

/// Parses CLI mechanism strings such as
/// "param-k2:theta=0.5,l=0.41421356,r=0.58578644", "sum-k2", "max-k2",
/// "a-max-star", "sum-k", "max-k", "sum-k:k=3".
MechanismSpec parse_mechanism_spec(std::string_view text);
std::string to_string(const MechanismSpec& spec);

/// ceil(x * count) with a snap rule: products within 1e-9 of an integer are
/// treated as that integer before the ceiling, so decimal parameters like
/// 0.3 * 10 do not overshoot.
int ceil_rank(double x, std::int64_t count);

inline constexpr double kRankSnapTolerance = 1e-9;

/// Phase 1: position of the ceil_rank(theta, n_g)-leftmost agent per group.
std::vector<double> select_representatives(const Instance& instance,
                                           double theta);

/// Phase 2 (rank rule): representatives at the given strictly increasing
/// ranks, counted within the sorted representative multiset.
Solution facilities_by_rank(std::span<const double> representatives,
                            std::span<const int> ranks);

/// Phase 2 (closest-representative rule): the ceil(m/2)-leftmost
/// representative plus the representative nearest to it; equidistant ties go
/// to the left neighbor.
Solution a_max_star_select(std::span<const double> representatives);

/// A spec resolved against concrete (m, k): a Phase-1 quantile plus either
/// explicit Phase-2 ranks or the closest-representative rule.
struct ResolvedRule {
  double theta = 0.0;
  std::vector<int> ranks;
  bool closest_to_median = false;
};

ResolvedRule resolve_spec(const MechanismSpec& spec, int m, int k);

struct MechanismOutcome {
  std::vector<double> representatives;  // one per group, in group order
  Solution solution;
};

/// Runs both phases. The outcome is a deterministic function of the reported
/// positions and the spec; the variant plays no role in evaluation.
MechanismOutcome run_mechanism(const MechanismSpec& spec,
                               const Instance& instance, Variant variant);

std::string mechanism_outcome_to_json(const MechanismOutcome& outcome);

}  // namespace mechlab
