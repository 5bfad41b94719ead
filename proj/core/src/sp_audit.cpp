#include "mechlab/sp_audit.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"
#include "mechlab/cost_engine.hpp"
#include "mechlab/instance_forge.hpp"

namespace mechlab {
namespace {

std::vector<double> distinct_positions(const Instance& instance) {
  std::set<double> positions;
  for (const auto& group : instance.groups()) {
    positions.insert(group.begin(), group.end());
  }
  return {positions.begin(), positions.end()};
}

// Candidates in the order the auditor tries them: actual reported positions
// first, then midpoints, extremes, and probe offsets. Later duplicates are
// dropped so the first (most interpretable) occurrence wins ties.
std::vector<double> tiered_candidates(const Instance& instance) {
  const auto positions = distinct_positions(instance);
  std::vector<double> ordered(positions);
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t j = i + 1; j < positions.size(); ++j) {
      ordered.push_back(positions[i] + (positions[j] - positions[i]) / 2.0);
    }
  }
  ordered.push_back(positions.front() - 1.0);
  ordered.push_back(positions.back() + 1.0);
  for (double position : positions) {
    ordered.push_back(position - kProbeDelta);
    ordered.push_back(position + kProbeDelta);
  }
  std::vector<double> result;
  std::set<double> seen;
  result.reserve(ordered.size());
  for (double candidate : ordered) {
    if (seen.insert(candidate).second) result.push_back(candidate);
  }
  return result;
}

}  // namespace

std::vector<double> deviation_candidates(const Instance& instance,
                                         AgentRef /*agent*/) {
  auto candidates = tiered_candidates(instance);
  std::sort(candidates.begin(), candidates.end());
  return candidates;
}

AuditReport audit_instance(const MechanismSpec& spec, const Instance& instance,
                           Variant variant) {
  AuditReport report;
  report.instance_digest = instance_digest(instance);
  report.variant = variant;
  report.spec = spec;

  const Solution honest = run_mechanism(spec, instance, variant).solution;
  const auto candidates = tiered_candidates(instance);

  for (int g = 0; g < instance.group_count(); ++g) {
    for (int i = 0; i < instance.group_size(g); ++i) {
      const AgentRef agent{g, i};
      const double true_position = instance.position(agent);
      const double true_cost =
          individual_cost(true_position, honest, variant);

      Deviation best{agent, true_position, true_cost, true_cost, 0.0};
      bool have_best = false;
      for (double candidate : candidates) {
        const Instance misreported = instance.with_position(agent, candidate);
        const Solution outcome =
            run_mechanism(spec, misreported, variant).solution;
        const double deviated_cost =
            individual_cost(true_position, outcome, variant);
        const double gain = true_cost - deviated_cost;
        if (!have_best || gain > best.gain) {
          best = {agent, candidate, true_cost, deviated_cost, gain};
          have_best = true;
        }
      }
      report.max_gain = std::max(report.max_gain, best.gain);
      if (best.gain > kGainTolerance) {
        report.beneficial.push_back(best);
      }
    }
  }
  return report;
}

std::string audit_report_to_json(const AuditReport& report) {
  nlohmann::ordered_json json;
  json["instance_digest"] = report.instance_digest;
  json["variant"] = variant_name(report.variant);
  json["spec"] = to_string(report.spec);
  auto deviations = nlohmann::ordered_json::array();
  for (const auto& deviation : report.beneficial) {
    nlohmann::ordered_json entry;
    entry["agent"] = {{"group", deviation.agent.group},
                      {"index", deviation.agent.index}};
    entry["reported"] = deviation.reported;
    entry["true_cost"] = deviation.true_cost;
    entry["deviated_cost"] = deviation.deviated_cost;
    entry["gain"] = deviation.gain;
    deviations.push_back(std::move(entry));
  }
  json["deviations"] = std::move(deviations);
  json["max_gain"] = report.max_gain;
  return json.dump();
}

}  // namespace mechlab
