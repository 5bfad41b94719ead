#pragma once

#include <string>
#include <vector>

#include "mechlab/core_model.hpp"
#include "mechlab/mechanisms.hpp"

namespace mechlab {

/// Gains at or below this are treated as numerical noise, not manipulation.
inline constexpr double kGainTolerance = 1e-9;
/// Offset used to probe the strict sides of mechanism breakpoints.
inline constexpr double kProbeDelta = 1e-6;

/// A unilateral misreport evaluated at the agent's true position: the gain is
/// the true-instance cost minus the cost under the solution the mechanism
/// produces for the misreported instance.
struct Deviation {
  AgentRef agent;
  double reported = 0.0;
  double true_cost = 0.0;
  double deviated_cost = 0.0;
  double gain = 0.0;
};

struct AuditReport {
  std::string instance_digest;
  Variant variant = Variant::kSum;
  MechanismSpec spec;
  /// Best beneficial deviation per agent; agents with no gain above the
  /// tolerance are absent.
  std::vector<Deviation> beneficial;
  /// Largest gain seen across all agents and candidates (zero at minimum,
  /// since truthful reporting is always a candidate).
  double max_gain = 0.0;
};

inline bool found_witness(const AuditReport& report) {
  return report.max_gain > kGainTolerance;
}

/// Finite misreport set: the distinct reported positions, all pairwise
/// midpoints, one point beyond each extreme, and +-delta probes around each
/// distinct position. Deduplicated and sorted.
///
/// Rank-based mechanisms change outcome only when a report crosses another
/// position, and the closest-representative rule additionally at midpoints of
/// representative pairs; within a region the agent's cost is piecewise linear
/// in the report, so region endpoints plus probes cover every outcome.
std::vector<double> deviation_candidates(const Instance& instance,
                                         AgentRef agent);

/// Sweeps every agent over every candidate misreport, keeping the best gain
/// per agent. Candidates are tried reported-positions-first so witnesses
/// coincide with actual reports whenever one suffices.
AuditReport audit_instance(const MechanismSpec& spec, const Instance& instance,
                           Variant variant);

std::string audit_report_to_json(const AuditReport& report);

}  // namespace mechlab
