#include "mechlab/cost_engine.hpp"

#include <cmath>

#include "json.hpp"

namespace mechlab {

double individual_cost(double position, std::span<const double> locations,
                       Variant variant) {
  double total = 0.0;
  double farthest = 0.0;
  for (double location : locations) {
    const double distance = std::abs(position - location);
    total += distance;
    farthest = std::max(farthest, distance);
  }
  return variant == Variant::kSum ? total : farthest;
}

double individual_cost(double position, const Solution& solution,
                       Variant variant) {
  return individual_cost(position, std::span<const double>(solution.locations),
                         variant);
}

double social_cost_value(const Instance& instance,
                         std::span<const double> locations, Variant variant) {
  double group_avg_total = 0.0;
  for (const auto& group : instance.groups()) {
    double group_total = 0.0;
    for (double position : group) {
      group_total += individual_cost(position, locations, variant);
    }
    group_avg_total += group_total / static_cast<double>(group.size());
  }
  return group_avg_total / static_cast<double>(instance.group_count());
}

CostReport social_cost(const Instance& instance, const Solution& solution,
                       Variant variant) {
  if (!is_feasible(instance, solution)) {
    fail(ErrorCode::kInfeasibleSolution,
         "solution is not a feasible k-multiset of reported positions");
  }
  CostReport report;
  report.per_agent.reserve(instance.groups().size());
  report.per_group_avg.reserve(instance.groups().size());
  double group_avg_total = 0.0;
  for (const auto& group : instance.groups()) {
    std::vector<double> costs;
    costs.reserve(group.size());
    double group_total = 0.0;
    for (double position : group) {
      const double cost = individual_cost(position, solution, variant);
      costs.push_back(cost);
      group_total += cost;
    }
    const double avg = group_total / static_cast<double>(group.size());
    report.per_agent.push_back(std::move(costs));
    report.per_group_avg.push_back(avg);
    group_avg_total += avg;
  }
  report.social = group_avg_total / static_cast<double>(instance.group_count());
  return report;
}

double approximation_ratio(const Instance& instance, const Solution& solution,
                           double optimal_cost, Variant variant) {
  const double cost = social_cost(instance, solution, variant).social;
  if (optimal_cost == 0.0) {
    if (cost == 0.0) return 1.0;
    fail(ErrorCode::kZeroOptimumMismatch,
         "optimal cost is zero but the solution cost is positive");
  }
  const double ratio = cost / optimal_cost;
  if (ratio < 1.0 - 1e-9) {
    fail(ErrorCode::kInternal,
         "solution beats the supplied optimum; the optimum is not optimal");
  }
  return ratio;
}

std::string cost_report_to_json(const CostReport& report) {
  nlohmann::ordered_json json;
  json["per_agent"] = report.per_agent;
  json["per_group_avg"] = report.per_group_avg;
  json["social"] = report.social;
  return json.dump();
}

}  // namespace mechlab
