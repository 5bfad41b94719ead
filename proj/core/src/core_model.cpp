#include "mechlab/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <string>

namespace mechlab {
namespace {

// Exact prefix-weight comparison: scales every weight 1/n_g by the lcm of the
// group sizes so the m/2 threshold test is integer arithmetic. Returns 0 when
// the lcm would overflow and the caller must fall back to floating point.
std::int64_t group_size_lcm(std::span<const std::vector<double>> groups) {
  constexpr std::int64_t kLimit = 1'000'000'000'000'000;  // 1e15
  std::int64_t lcm = 1;
  for (const auto& group : groups) {
    const auto size = static_cast<std::int64_t>(group.size());
    lcm = std::lcm(lcm, size);
    if (lcm > kLimit) return 0;
  }
  return lcm;
}

struct OrderedAgent {
  double position;
  int group;
  int index;
};

std::vector<OrderedAgent> ordered_agents(
    std::span<const std::vector<double>> groups) {
  std::vector<OrderedAgent> agents;
  std::size_t total = 0;
  for (const auto& group : groups) total += group.size();
  agents.reserve(total);
  for (int g = 0; g < static_cast<int>(groups.size()); ++g) {
    const auto& group = groups[static_cast<std::size_t>(g)];
    for (int i = 0; i < static_cast<int>(group.size()); ++i) {
      agents.push_back({group[static_cast<std::size_t>(i)], g, i});
    }
  }
  std::sort(agents.begin(), agents.end(), [](const auto& a, const auto& b) {
    if (a.position != b.position) return a.position < b.position;
    if (a.group != b.group) return a.group < b.group;
    return a.index < b.index;
  });
  return agents;
}

}  // namespace

const char* variant_name(Variant variant) {
  return variant == Variant::kSum ? "sum" : "max";
}

Variant parse_variant(std::string_view text) {
  if (text == "sum") return Variant::kSum;
  if (text == "max") return Variant::kMax;
  fail(ErrorCode::kUsageError,
       "unknown variant '" + std::string(text) + "' (expected sum|max)");
}

Instance validate_instance(std::vector<std::vector<double>> groups, int k) {
  if (k < 2) {
    fail(ErrorCode::kTooFewFacilities,
         "k must be at least 2, got " + std::to_string(k));
  }
  if (static_cast<int>(groups.size()) < k) {
    fail(ErrorCode::kTooFewGroups,
         "need at least k=" + std::to_string(k) + " groups, got " +
             std::to_string(groups.size()));
  }
  std::int64_t agent_count = 0;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (groups[g].empty()) {
      fail(ErrorCode::kEmptyGroup, "group " + std::to_string(g) + " is empty");
    }
    for (double position : groups[g]) {
      if (!std::isfinite(position)) {
        fail(ErrorCode::kNonFinitePosition,
             "group " + std::to_string(g) + " has a non-finite position");
      }
    }
    agent_count += static_cast<std::int64_t>(groups[g].size());
  }
  if (agent_count > std::numeric_limits<int>::max()) {
    fail(ErrorCode::kSizeOverflow, "instance has too many agents");
  }
  return Instance(std::move(groups), k, static_cast<int>(agent_count));
}

Instance Instance::with_position(AgentRef agent, double reported) const {
  if (agent.group < 0 || agent.group >= group_count() || agent.index < 0 ||
      agent.index >= group_size(agent.group)) {
    fail(ErrorCode::kUsageError, "agent reference out of range");
  }
  if (!std::isfinite(reported)) {
    fail(ErrorCode::kNonFinitePosition, "reported position is not finite");
  }
  Instance copy = *this;
  copy.groups_[static_cast<std::size_t>(agent.group)]
              [static_cast<std::size_t>(agent.index)] = reported;
  return copy;
}

Solution make_solution(std::vector<double> locations) {
  std::sort(locations.begin(), locations.end());
  return Solution{std::move(locations)};
}

bool is_feasible(const Instance& instance, const Solution& solution) {
  if (static_cast<int>(solution.locations.size()) != instance.k()) return false;
  if (!std::is_sorted(solution.locations.begin(), solution.locations.end())) {
    return false;
  }
  std::map<double, int> available;
  for (const auto& group : instance.groups()) {
    for (double position : group) ++available[position];
  }
  std::map<double, int> used;
  for (double location : solution.locations) ++used[location];
  for (const auto& [location, count] : used) {
    auto it = available.find(location);
    if (it == available.end() || it->second < count) return false;
  }
  return true;
}

std::vector<AgentRef> agents_in_position_order(const Instance& instance) {
  auto agents = ordered_agents(instance.groups());
  std::vector<AgentRef> refs;
  refs.reserve(agents.size());
  for (const auto& agent : agents) refs.push_back({agent.group, agent.index});
  return refs;
}

double weighted_median(std::span<const std::vector<double>> groups) {
  const auto agents = ordered_agents(groups);
  const auto m = static_cast<std::int64_t>(groups.size());
  const std::int64_t lcm = group_size_lcm(groups);
  if (lcm > 0) {
    // Exact path: agent weight 1/n_g becomes lcm/n_g; threshold m/2 becomes
    // m*lcm against twice the prefix.
    __int128 prefix = 0;
    const __int128 threshold = static_cast<__int128>(m) * lcm;
    for (const auto& agent : agents) {
      const auto size = static_cast<std::int64_t>(
          groups[static_cast<std::size_t>(agent.group)].size());
      prefix += lcm / size;
      if (2 * prefix >= threshold) return agent.position;
    }
  } else {
    long double prefix = 0.0L;
    const long double threshold = static_cast<long double>(m) / 2.0L;
    for (const auto& agent : agents) {
      const auto size = static_cast<std::int64_t>(
          groups[static_cast<std::size_t>(agent.group)].size());
      prefix += 1.0L / static_cast<long double>(size);
      if (prefix + 1e-9L >= threshold) return agent.position;
    }
  }
  fail(ErrorCode::kInternal, "weighted median prefix never reached m/2");
}

double weighted_median(const Instance& instance) {
  return weighted_median(instance.groups());
}

Instance symmetrize(const Instance& instance, std::int64_t max_group_size) {
  std::int64_t product = 1;
  for (const auto& group : instance.groups()) {
    product *= static_cast<std::int64_t>(group.size());
    if (product > max_group_size) {
      fail(ErrorCode::kSizeOverflow,
           "symmetrized group size exceeds cap of " +
               std::to_string(max_group_size));
    }
  }
  std::vector<std::vector<double>> symmetric;
  symmetric.reserve(instance.groups().size());
  for (const auto& group : instance.groups()) {
    const std::int64_t copies = product / static_cast<std::int64_t>(group.size());
    std::vector<double> expanded;
    expanded.reserve(static_cast<std::size_t>(product));
    for (double position : group) {
      expanded.insert(expanded.end(), static_cast<std::size_t>(copies),
                      position);
    }
    symmetric.push_back(std::move(expanded));
  }
  return validate_instance(std::move(symmetric), instance.k());
}

}  // namespace mechlab
