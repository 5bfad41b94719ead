#pragma once

// Shared helpers for the unit and acceptance suites: small instance builders
// and slot-enumeration oracles kept independent of the library's oracle code.

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <vector>

#include "mechlab/core_model.hpp"

namespace mechlab::testing {

inline Instance make(std::vector<std::vector<double>> groups, int k) {
  return validate_instance(std::move(groups), k);
}

// Three groups of two agents with leftmost positions 0, 0.51 and 1; the
// running example for the closest-representative rule and its misreport.
inline Instance demo_instance() {
  return make({{0.0, 0.1}, {0.51, 0.51}, {1.0, 1.0}}, 2);
}

// Plain re-implementation of the costs used by the test oracles.
inline double plain_cost(double position, const std::vector<double>& locations,
                         Variant variant) {
  double sum = 0.0, worst = 0.0;
  for (double location : locations) {
    const double distance = std::abs(position - location);
    sum += distance;
    worst = std::max(worst, distance);
  }
  return variant == Variant::kSum ? sum : worst;
}

inline double plain_social(const Instance& instance,
                           const std::vector<double>& locations,
                           Variant variant) {
  double total = 0.0;
  for (const auto& group : instance.groups()) {
    double group_sum = 0.0;
    for (double position : group) {
      group_sum += plain_cost(position, locations, variant);
    }
    total += group_sum / static_cast<double>(group.size());
  }
  return total / static_cast<double>(instance.group_count());
}

// Every solution obtainable by picking k agent slots, as sorted multisets.
inline std::set<std::vector<double>> slot_multisets(const Instance& instance) {
  std::vector<double> positions;
  for (const auto& group : instance.groups()) {
    positions.insert(positions.end(), group.begin(), group.end());
  }
  const int n = static_cast<int>(positions.size());
  const int k = instance.k();
  std::set<std::vector<double>> result;
  std::vector<int> pick(static_cast<std::size_t>(k));
  // Enumerate k-combinations of slot indices.
  for (int i = 0; i < k; ++i) pick[static_cast<std::size_t>(i)] = i;
  while (true) {
    std::vector<double> chosen;
    chosen.reserve(static_cast<std::size_t>(k));
    for (int index : pick) {
      chosen.push_back(positions[static_cast<std::size_t>(index)]);
    }
    std::sort(chosen.begin(), chosen.end());
    result.insert(std::move(chosen));

    int cursor = k - 1;
    while (cursor >= 0 &&
           pick[static_cast<std::size_t>(cursor)] == n - k + cursor) {
      --cursor;
    }
    if (cursor < 0) break;
    ++pick[static_cast<std::size_t>(cursor)];
    for (int i = cursor + 1; i < k; ++i) {
      pick[static_cast<std::size_t>(i)] =
          pick[static_cast<std::size_t>(i - 1)] + 1;
    }
  }
  return result;
}

// Exhaustive minimum over agent-slot choices; the independent check for the
// enumeration oracle.
inline double slot_optimum(const Instance& instance, Variant variant) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& candidate : slot_multisets(instance)) {
    best = std::min(best, plain_social(instance, candidate, variant));
  }
  return best;
}

}  // namespace mechlab::testing
