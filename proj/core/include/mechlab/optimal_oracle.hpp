#pragma once

#include <string>

#include "mechlab/core_model.hpp"

namespace mechlab {

struct OptimalResult {
  Solution solution;
  double cost = 0.0;
};

inline constexpr double kEnumerationLimit = 1e7;

/// Exact optimum by exhaustive enumeration of feasible k-multisets of
/// distinct position values. Cost ties resolve to the lexicographically
/// smallest sorted solution.
OptimalResult optimal_full(const Instance& instance, Variant variant);

/// Sum-variant optimum via separability: the social cost of a solution is the
/// sum of a per-location cost, so the k cheapest values win (respecting
/// per-value multiplicity caps).
OptimalResult optimal_sum_fast(const Instance& instance);

/// Max-variant optimum: an agent's farthest-facility distance depends only on
/// the extreme facility locations, so it suffices to scan ordered value pairs
/// that leave enough multiplicity in between to place all k facilities.
OptimalResult optimal_max_fast(const Instance& instance);

std::string optimal_result_to_json(const OptimalResult& result);

}  // namespace mechlab
