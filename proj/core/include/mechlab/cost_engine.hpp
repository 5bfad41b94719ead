#pragma once

#include <span>
#include <string>
#include <vector>

#include "mechlab/core_model.hpp"

namespace mechlab {

/// Per-agent costs (mirroring the instance's group shape), per-group means,
/// and the social cost (mean over groups of the group means).
struct CostReport {
  std::vector<std::vector<double>> per_agent;
  std::vector<double> per_group_avg;
  double social = 0.0;
};

double individual_cost(double position, std::span<const double> locations,
                       Variant variant);
double individual_cost(double position, const Solution& solution,
                       Variant variant);

CostReport social_cost(const Instance& instance, const Solution& solution,
                       Variant variant);

/// Social cost without the report or the feasibility check; used by
/// enumeration loops. Same accumulation order as social_cost, so results are
/// bit-identical.
double social_cost_value(const Instance& instance,
                         std::span<const double> locations, Variant variant);

/// Single-instance ratio SC(solution)/optimal_cost. Returns exactly 1 when
/// both costs are zero; a zero optimum with a positive mechanism cost signals
/// an oracle or feasibility bug upstream.
double approximation_ratio(const Instance& instance, const Solution& solution,
                           double optimal_cost, Variant variant);

std::string cost_report_to_json(const CostReport& report);

}  // namespace mechlab
