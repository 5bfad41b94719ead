#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "mechlab/errors.hpp"

namespace mechlab {

/// Individual-cost flavor: total distance to all facilities, or distance to
/// the farthest one.
enum class Variant { kSum, kMax };

const char* variant_name(Variant variant);
Variant parse_variant(std::string_view text);

/// Agent identity: (group index, within-group index). Positions may coincide,
/// identities never do.
struct AgentRef {
  int group = 0;
  int index = 0;

  friend auto operator<=>(const AgentRef&, const AgentRef&) = default;
};

/// A facility-location instance: agent positions partitioned into fixed
/// groups, plus the number k of facilities to open. Immutable once built;
/// construct through validate_instance.
class Instance {
 public:
  const std::vector<std::vector<double>>& groups() const { return groups_; }
  int k() const { return k_; }
  int group_count() const { return static_cast<int>(groups_.size()); }
  int group_size(int group) const {
    return static_cast<int>(groups_[static_cast<std::size_t>(group)].size());
  }
  int agent_count() const { return agent_count_; }
  double position(AgentRef agent) const {
    return groups_[static_cast<std::size_t>(agent.group)]
                  [static_cast<std::size_t>(agent.index)];
  }

  /// Copy with exactly one report replaced; the new position must be finite.
  Instance with_position(AgentRef agent, double reported) const;

 private:
  friend Instance validate_instance(std::vector<std::vector<double>> groups,
                                    int k);
  Instance(std::vector<std::vector<double>> groups, int k, int agent_count)
      : groups_(std::move(groups)), k_(k), agent_count_(agent_count) {}

  std::vector<std::vector<double>> groups_;
  int k_ = 0;
  int agent_count_ = 0;
};

/// Checks the instance invariants: k >= 2, at least k non-empty groups, all
/// positions finite. Positions are preserved bit-exactly.
Instance validate_instance(std::vector<std::vector<double>> groups, int k);

/// A k-tuple of facility locations, kept sorted non-decreasing.
struct Solution {
  std::vector<double> locations;

  friend bool operator==(const Solution&, const Solution&) = default;
};

Solution make_solution(std::vector<double> locations);

/// Multiset feasibility: a location may repeat only as many times as there
/// are agents reporting it, and the solution must have exactly k entries.
bool is_feasible(const Instance& instance, const Solution& solution);

/// All agents sorted by position, ties broken by (group, index). This fixed
/// order makes every downstream rank-based choice deterministic.
std::vector<AgentRef> agents_in_position_order(const Instance& instance);

/// Position of the first agent (in position-then-identity order) whose
/// inclusive prefix of group weights 1/n_g reaches m/2.
double weighted_median(std::span<const std::vector<double>> groups);
double weighted_median(const Instance& instance);

inline constexpr std::int64_t kDefaultSymmetrizeCap = 1'000'000;

/// Rebuilds the instance with m equal-size groups (each of size prod_q n_q)
/// by repeating every agent of group g exactly prod_{q != g} n_q times.
/// Order statistics of each group and the weighted median are preserved.
Instance symmetrize(const Instance& instance,
                    std::int64_t max_group_size = kDefaultSymmetrizeCap);

}  // namespace mechlab
