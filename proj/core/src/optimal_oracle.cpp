#include "mechlab/optimal_oracle.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <vector>

#include "json.hpp"
#include "mechlab/cost_engine.hpp"

namespace mechlab {
namespace {

struct ValueTable {
  std::vector<double> values;  // sorted distinct positions
  std::vector<int> caps;       // agents reporting each value
};

ValueTable distinct_values(const Instance& instance) {
  std::map<double, int> counts;
  for (const auto& group : instance.groups()) {
    for (double position : group) ++counts[position];
  }
  ValueTable table;
  table.values.reserve(counts.size());
  table.caps.reserve(counts.size());
  for (const auto& [value, count] : counts) {
    table.values.push_back(value);
    table.caps.push_back(count);
  }
  return table;
}

double multiset_count(int distinct, int k) {
  // C(distinct + k - 1, k), saturating once past the enumeration limit.
  double result = 1.0;
  for (int i = 1; i <= k; ++i) {
    result *= static_cast<double>(distinct - 1 + i) / i;
    if (result > 10 * kEnumerationLimit) return result;
  }
  return result;
}

class FullEnumerator {
 public:
  FullEnumerator(const Instance& instance, Variant variant,
                 const ValueTable& table)
      : instance_(instance), variant_(variant), table_(table) {}

  OptimalResult run() {
    current_.reserve(static_cast<std::size_t>(instance_.k()));
    descend(0, instance_.k());
    if (!found_) {
      fail(ErrorCode::kInternal, "no feasible solution enumerated");
    }
    return {make_solution(best_solution_), best_cost_};
  }

 private:
  // Taking the larger counts of the smaller values first makes the
  // enumeration lexicographic, so the first minimum seen is the
  // lexicographically smallest one.
  void descend(std::size_t index, int remaining) {
    if (remaining == 0) {
      evaluate();
      return;
    }
    if (index >= table_.values.size()) return;
    const int most = std::min(table_.caps[index], remaining);
    for (int take = most; take >= 0; --take) {
      current_.insert(current_.end(), static_cast<std::size_t>(take),
                      table_.values[index]);
      descend(index + 1, remaining - take);
      current_.resize(current_.size() - static_cast<std::size_t>(take));
    }
  }

  void evaluate() {
    const double cost = social_cost_value(instance_, current_, variant_);
    if (!found_ || cost < best_cost_ ||
        (cost == best_cost_ && current_ < best_solution_)) {
      found_ = true;
      best_cost_ = cost;
      best_solution_ = current_;
    }
  }

  const Instance& instance_;
  Variant variant_;
  const ValueTable& table_;
  std::vector<double> current_;
  std::vector<double> best_solution_;
  double best_cost_ = std::numeric_limits<double>::infinity();
  bool found_ = false;
};

}  // namespace

OptimalResult optimal_full(const Instance& instance, Variant variant) {
  const ValueTable table = distinct_values(instance);
  if (multiset_count(static_cast<int>(table.values.size()), instance.k()) >
      kEnumerationLimit) {
    fail(ErrorCode::kEnumerationTooLarge,
         "too many candidate multisets; use the variant-specific oracle");
  }
  return FullEnumerator(instance, variant, table).run();
}

OptimalResult optimal_sum_fast(const Instance& instance) {
  const ValueTable table = distinct_values(instance);
  std::vector<std::pair<double, double>> ranked;  // (per-location cost, value)
  ranked.reserve(static_cast<std::size_t>(instance.agent_count()));
  for (std::size_t i = 0; i < table.values.size(); ++i) {
    const double location = table.values[i];
    const double cost =
        social_cost_value(instance, std::span(&location, 1), Variant::kSum);
    ranked.insert(ranked.end(), static_cast<std::size_t>(table.caps[i]),
                  {cost, location});
  }
  std::sort(ranked.begin(), ranked.end());
  std::vector<double> locations;
  locations.reserve(static_cast<std::size_t>(instance.k()));
  for (int i = 0; i < instance.k(); ++i) {
    locations.push_back(ranked[static_cast<std::size_t>(i)].second);
  }
  Solution solution = make_solution(std::move(locations));
  const double cost =
      social_cost_value(instance, solution.locations, Variant::kSum);
  return {std::move(solution), cost};
}

OptimalResult optimal_max_fast(const Instance& instance) {
  const ValueTable table = distinct_values(instance);
  const auto distinct = table.values.size();
  const int k = instance.k();

  std::vector<std::int64_t> prefix(distinct + 1, 0);
  for (std::size_t i = 0; i < distinct; ++i) {
    prefix[i + 1] = prefix[i] + table.caps[i];
  }

  double best_cost = std::numeric_limits<double>::infinity();
  std::size_t best_low = 0, best_high = 0;
  bool found = false;
  for (std::size_t low = 0; low < distinct; ++low) {
    for (std::size_t high = low; high < distinct; ++high) {
      if (prefix[high + 1] - prefix[low] < k) continue;
      const double pair[2] = {table.values[low], table.values[high]};
      const double cost = social_cost_value(instance, pair, Variant::kMax);
      if (!found || cost < best_cost) {
        found = true;
        best_cost = cost;
        best_low = low;
        best_high = high;
      }
    }
  }
  if (!found) {
    fail(ErrorCode::kInternal, "no feasible endpoint pair found");
  }

  // One facility at each endpoint, the rest filled with the smallest
  // remaining in-between values.
  std::vector<int> used(distinct, 0);
  std::vector<double> locations;
  locations.reserve(static_cast<std::size_t>(k));
  locations.push_back(table.values[best_low]);
  ++used[best_low];
  if (static_cast<int>(locations.size()) < k || best_high != best_low) {
    if (used[best_high] >= table.caps[best_high]) {
      fail(ErrorCode::kNoFeasibleFill, "endpoint multiplicity exhausted");
    }
    locations.push_back(table.values[best_high]);
    ++used[best_high];
  }
  for (std::size_t i = best_low;
       i <= best_high && static_cast<int>(locations.size()) < k; ++i) {
    while (used[i] < table.caps[i] && static_cast<int>(locations.size()) < k) {
      locations.push_back(table.values[i]);
      ++used[i];
    }
  }
  if (static_cast<int>(locations.size()) != k) {
    fail(ErrorCode::kNoFeasibleFill, "could not place all facilities");
  }
  Solution solution = make_solution(std::move(locations));
  const double cost =
      social_cost_value(instance, solution.locations, Variant::kMax);
  return {std::move(solution), cost};
}

std::string optimal_result_to_json(const OptimalResult& result) {
  nlohmann::ordered_json json;
  json["solution"] = result.solution.locations;
  json["cost"] = result.cost;
  return json.dump();
}

}  // namespace mechlab
