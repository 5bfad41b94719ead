#include "mechlab/mechanisms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace mechlab {
namespace {

constexpr double kSqrt2 = 1.4142135623730951;

void require_unit_interval(double value, const char* name) {
  if (!(value > 0.0 && value <= 1.0)) {
    fail(ErrorCode::kInvalidParamPair,
         std::string(name) + " must lie in (0, 1], got " +
             std::to_string(value));
  }
}

void require_k(const MechanismSpec& spec, int instance_k, int expected) {
  if (instance_k != expected) {
    fail(ErrorCode::kUsageError,
         to_string(spec) + " handles exactly " + std::to_string(expected) +
             " facilities, instance has k=" + std::to_string(instance_k));
  }
}

std::string format_param(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

double parse_number(std::string_view text, std::string_view what) {
  try {
    std::size_t consumed = 0;
    const double value = std::stod(std::string(text), &consumed);
    if (consumed != text.size()) throw std::invalid_argument("trailing");
    return value;
  } catch (const std::exception&) {
    fail(ErrorCode::kUsageError,
         "cannot parse " + std::string(what) + " from '" + std::string(text) +
             "'");
  }
}

}  // namespace

MechanismSpec MechanismSpec::param_k2(double theta, double l, double r) {
  return {MechanismKind::kParamK2, theta, l, r, 0};
}
MechanismSpec MechanismSpec::sum_k2() {
  return {MechanismKind::kSumK2Dispatcher, 0, 0, 0, 0};
}
MechanismSpec MechanismSpec::max_k2() {
  return {MechanismKind::kMaxK2Dispatcher, 0, 0, 0, 0};
}
MechanismSpec MechanismSpec::a_max_star() {
  return {MechanismKind::kAMaxStar, 0, 0, 0, 0};
}
MechanismSpec MechanismSpec::sum_k(int k) {
  return {MechanismKind::kSumK, 0, 0, 0, k};
}
MechanismSpec MechanismSpec::max_k(int k) {
  return {MechanismKind::kMaxK, 0, 0, 0, k};
}

MechanismSpec parse_mechanism_spec(std::string_view text) {
  std::string_view name = text;
  std::string_view params;
  if (const auto colon = text.find(':'); colon != std::string_view::npos) {
    name = text.substr(0, colon);
    params = text.substr(colon + 1);
  }

  MechanismSpec spec;
  if (name == "param-k2") {
    spec.kind = MechanismKind::kParamK2;
  } else if (name == "sum-k2") {
    spec.kind = MechanismKind::kSumK2Dispatcher;
  } else if (name == "max-k2") {
    spec.kind = MechanismKind::kMaxK2Dispatcher;
  } else if (name == "a-max-star") {
    spec.kind = MechanismKind::kAMaxStar;
  } else if (name == "sum-k") {
    spec.kind = MechanismKind::kSumK;
  } else if (name == "max-k") {
    spec.kind = MechanismKind::kMaxK;
  } else {
    fail(ErrorCode::kUsageError,
         "unknown mechanism '" + std::string(name) + "'");
  }

  bool has_theta = false, has_l = false, has_r = false;
  while (!params.empty()) {
    const auto comma = params.find(',');
    const auto item = params.substr(0, comma);
    params = comma == std::string_view::npos ? std::string_view{}
                                             : params.substr(comma + 1);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      fail(ErrorCode::kUsageError,
           "expected key=value in mechanism parameters, got '" +
               std::string(item) + "'");
    }
    const auto key = item.substr(0, eq);
    const auto value = item.substr(eq + 1);
    if (key == "theta") {
      spec.theta = parse_number(value, "theta");
      has_theta = true;
    } else if (key == "l") {
      spec.l = parse_number(value, "l");
      has_l = true;
    } else if (key == "r") {
      spec.r = parse_number(value, "r");
      has_r = true;
    } else if (key == "k") {
      spec.k = static_cast<int>(parse_number(value, "k"));
    } else {
      fail(ErrorCode::kUsageError,
           "unknown mechanism parameter '" + std::string(key) + "'");
    }
  }
  if (spec.kind == MechanismKind::kParamK2 &&
      !(has_theta && has_l && has_r)) {
    fail(ErrorCode::kUsageError, "param-k2 needs theta, l and r");
  }
  return spec;
}

std::string to_string(const MechanismSpec& spec) {
  switch (spec.kind) {
    case MechanismKind::kParamK2:
      return "param-k2:theta=" + format_param(spec.theta) +
             ",l=" + format_param(spec.l) + ",r=" + format_param(spec.r);
    case MechanismKind::kSumK2Dispatcher: return "sum-k2";
    case MechanismKind::kMaxK2Dispatcher: return "max-k2";
    case MechanismKind::kAMaxStar: return "a-max-star";
    case MechanismKind::kSumK:
      return spec.k > 0 ? "sum-k:k=" + std::to_string(spec.k) : "sum-k";
    case MechanismKind::kMaxK:
      return spec.k > 0 ? "max-k:k=" + std::to_string(spec.k) : "max-k";
  }
  fail(ErrorCode::kInternal, "unhandled mechanism kind");
}

int ceil_rank(double x, std::int64_t count) {
  const double product = x * static_cast<double>(count);
  const double rounded = std::round(product);
  const double effective = std::abs(product - rounded) < kRankSnapTolerance
                               ? rounded
                               : std::ceil(product);
  const auto rank = static_cast<std::int64_t>(effective);
  return static_cast<int>(std::clamp<std::int64_t>(rank, 1, count));
}

std::vector<double> select_representatives(const Instance& instance,
                                           double theta) {
  require_unit_interval(theta, "theta");
  std::vector<double> representatives;
  representatives.reserve(instance.groups().size());
  for (const auto& group : instance.groups()) {
    std::vector<double> sorted(group);
    std::sort(sorted.begin(), sorted.end());
    const int rank = ceil_rank(theta, static_cast<std::int64_t>(sorted.size()));
    representatives.push_back(sorted[static_cast<std::size_t>(rank - 1)]);
  }
  return representatives;
}

Solution facilities_by_rank(std::span<const double> representatives,
                            std::span<const int> ranks) {
  const int m = static_cast<int>(representatives.size());
  int previous = 0;
  for (int rank : ranks) {
    if (rank < 1 || rank > m) {
      fail(ErrorCode::kRankOutOfRange,
           "rank " + std::to_string(rank) + " outside [1, " +
               std::to_string(m) + "]");
    }
    if (rank <= previous) {
      fail(ErrorCode::kRankOutOfRange, "ranks must be strictly increasing");
    }
    previous = rank;
  }
  std::vector<double> sorted(representatives.begin(), representatives.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> locations;
  locations.reserve(ranks.size());
  for (int rank : ranks) {
    locations.push_back(sorted[static_cast<std::size_t>(rank - 1)]);
  }
  return make_solution(std::move(locations));
}

Solution a_max_star_select(std::span<const double> representatives) {
  const auto m = static_cast<std::int64_t>(representatives.size());
  if (m < 2) {
    fail(ErrorCode::kUsageError,
         "closest-representative rule needs at least two groups");
  }
  std::vector<double> sorted(representatives.begin(), representatives.end());
  std::sort(sorted.begin(), sorted.end());
  const auto median = static_cast<std::size_t>(ceil_rank(0.5, m) - 1);
  const double w1 = sorted[median];

  bool has_left = median > 0;
  bool has_right = median + 1 < sorted.size();
  double w2;
  if (!has_left) {
    w2 = sorted[median + 1];
  } else if (!has_right) {
    w2 = sorted[median - 1];
  } else {
    const double left_distance = w1 - sorted[median - 1];
    const double right_distance = sorted[median + 1] - w1;
    // Equidistant neighbors resolve to the left one.
    w2 = left_distance <= right_distance ? sorted[median - 1]
                                         : sorted[median + 1];
  }
  return make_solution({w1, w2});
}

ResolvedRule resolve_spec(const MechanismSpec& spec, int m, int k) {
  if (m < k) {
    fail(ErrorCode::kUsageError,
         "need m >= k, got m=" + std::to_string(m) +
             ", k=" + std::to_string(k));
  }
  switch (spec.kind) {
    case MechanismKind::kParamK2: {
      require_k(spec, k, 2);
      require_unit_interval(spec.theta, "theta");
      require_unit_interval(spec.l, "l");
      require_unit_interval(spec.r, "r");
      const int left = ceil_rank(spec.l, m);
      const int right = ceil_rank(spec.r, m);
      if (left >= right) {
        fail(ErrorCode::kInvalidParamPair,
             "l and r collide at m=" + std::to_string(m) + ": ranks " +
                 std::to_string(left) + " and " + std::to_string(right));
      }
      return {spec.theta, {left, right}, false};
    }
    case MechanismKind::kSumK2Dispatcher: {
      require_k(spec, k, 2);
      // The irrational pair collides for m in {3, 5}; those group counts get
      // dedicated parameter sets.
      if (m == 3) return {1.0 / 3.0, {2, 3}, false};
      if (m == 5) return {2.0 / 5.0, {3, 4}, false};
      return resolve_spec(
          MechanismSpec::param_k2(0.5, kSqrt2 - 1.0, 2.0 - kSqrt2), m, k);
    }
    case MechanismKind::kMaxK2Dispatcher: {
      require_k(spec, k, 2);
      if (m % 2 == 0) {
        return {0.5, {m / 2, m / 2 + 1}, false};
      }
      const int median = (m + 1) / 2;
      return {static_cast<double>(m - 1) / (2.0 * m),
              {median, median + 1},
              false};
    }
    case MechanismKind::kAMaxStar: {
      require_k(spec, k, 2);
      return {0.5, {}, true};
    }
    case MechanismKind::kSumK: {
      if (spec.k > 0 && spec.k != k) {
        fail(ErrorCode::kUsageError,
             "sum-k built for k=" + std::to_string(spec.k) +
                 ", instance has k=" + std::to_string(k));
      }
      std::vector<int> ranks;
      ranks.reserve(static_cast<std::size_t>(k));
      for (int facility = 1; facility <= k; ++facility) {
        ranks.push_back(
            ceil_rank(static_cast<double>(facility) / (k + 1), m));
      }
      return {0.5, std::move(ranks), false};
    }
    case MechanismKind::kMaxK: {
      if (spec.k > 0 && spec.k != k) {
        fail(ErrorCode::kUsageError,
             "max-k built for k=" + std::to_string(spec.k) +
                 ", instance has k=" + std::to_string(k));
      }
      const int median = (m + 1) / 2;
      const int half_k = (k + 1) / 2;
      std::vector<int> ranks;
      ranks.reserve(static_cast<std::size_t>(k));
      for (int facility = 1; facility <= k; ++facility) {
        ranks.push_back(median + facility - half_k);
      }
      return {0.5, std::move(ranks), false};
    }
  }
  fail(ErrorCode::kInternal, "unhandled mechanism kind");
}

MechanismOutcome run_mechanism(const MechanismSpec& spec,
                               const Instance& instance, Variant) {
  const ResolvedRule rule =
      resolve_spec(spec, instance.group_count(), instance.k());
  MechanismOutcome outcome;
  outcome.representatives = select_representatives(instance, rule.theta);
  outcome.solution = rule.closest_to_median
                         ? a_max_star_select(outcome.representatives)
                         : facilities_by_rank(outcome.representatives,
                                              rule.ranks);
  return outcome;
}

std::string mechanism_outcome_to_json(const MechanismOutcome& outcome) {
  nlohmann::ordered_json json;
  json["representatives"] = outcome.representatives;
  json["solution"] = outcome.solution.locations;
  return json.dump();
}

}  // namespace mechlab
