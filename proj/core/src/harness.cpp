#include "mechlab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <random>
#include <thread>

#include "json.hpp"
#include "mechlab/cost_engine.hpp"
#include "mechlab/optimal_oracle.hpp"
#include "mechlab/sp_audit.hpp"

namespace mechlab {
namespace {

constexpr double kBoundSlack = 1e-9;

std::uint64_t splitmix64(std::uint64_t state) {
  state += 0x9E3779B97F4A7C15ULL;
  state = (state ^ (state >> 30)) * 0xBF58476D1CE4E5B9ULL;
  state = (state ^ (state >> 27)) * 0x94D049BB133111EBULL;
  return state ^ (state >> 31);
}

std::uint64_t trial_seed(std::uint64_t seed, int trial) {
  return splitmix64(seed +
                    static_cast<std::uint64_t>(trial) * 0x9E3779B97F4A7C15ULL);
}

bool has_symmetric_groups(const Instance& instance) {
  const int first = instance.group_size(0);
  for (int g = 1; g < instance.group_count(); ++g) {
    if (instance.group_size(g) != first) return false;
  }
  return true;
}

std::string format_double(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

OptimalResult fast_optimum(const Instance& instance, Variant variant) {
  return variant == Variant::kSum ? optimal_sum_fast(instance)
                                  : optimal_max_fast(instance);
}

}  // namespace

double theoretical_bound(double theta, double l, double r, int m,
                         std::int64_t n, Variant variant) {
  if (m < 2) fail(ErrorCode::kUsageError, "need m >= 2");
  if (n < m || n % m != 0) {
    fail(ErrorCode::kUsageError, "n must be a positive multiple of m");
  }
  for (auto [value, name] :
       {std::pair{theta, "theta"}, {l, "l"}, {r, "r"}}) {
    if (!(value > 0.0 && value <= 1.0)) {
      fail(ErrorCode::kInvalidParamPair,
           std::string(name) + " must lie in (0, 1]");
    }
  }
  const int rank_l = ceil_rank(l, m);
  const int rank_r = ceil_rank(r, m);
  if (rank_l >= rank_r) {
    fail(ErrorCode::kInvalidParamPair,
         "l and r collide at m=" + std::to_string(m));
  }
  const std::int64_t group_size = n / m;
  const int rank_theta = ceil_rank(theta, group_size);
  const double weight = variant == Variant::kSum ? 2.0 : 1.0;  // 1 + Y
  const auto agents = static_cast<double>(n);
  // Agents weakly right of a group's representative.
  const auto tail = static_cast<double>(group_size + 1 - rank_theta);
  const double term1 = agents / ((m + 1 - rank_l) * tail) - 1.0;
  const double term2 = agents / (weight * (m + 1 - rank_r) * tail);
  const double term3 = agents / (static_cast<double>(rank_r) * rank_theta) - 1.0;
  const double term4 = agents / (weight * rank_l * rank_theta);
  return std::max({term1, term2, term3, term4});
}

double theoretical_bound_limit(double theta, double l, double r, int m,
                               Variant variant) {
  if (m < 2) fail(ErrorCode::kUsageError, "need m >= 2");
  const int rank_l = ceil_rank(l, m);
  const int rank_r = ceil_rank(r, m);
  if (rank_l >= rank_r) {
    fail(ErrorCode::kInvalidParamPair,
         "l and r collide at m=" + std::to_string(m));
  }
  const double weight = variant == Variant::kSum ? 2.0 : 1.0;
  const double groups = m;
  const double term1 = groups / ((m + 1 - rank_l) * (1.0 - theta)) - 1.0;
  const double term2 = groups / (weight * (m + 1 - rank_r) * (1.0 - theta));
  const double term3 = groups / (rank_r * theta) - 1.0;
  const double term4 = groups / (weight * rank_l * theta);
  return std::max({term1, term2, term3, term4});
}

RunRecord make_run_record(const MechanismSpec& spec, const Instance& instance,
                          Variant variant, bool with_audit) {
  RunRecord record;
  record.instance_digest = instance_digest(instance);
  record.spec = to_string(spec);
  record.variant = variant;

  const MechanismOutcome outcome = run_mechanism(spec, instance, variant);
  record.mechanism_cost =
      social_cost(instance, outcome.solution, variant).social;
  const OptimalResult optimum = fast_optimum(instance, variant);
  record.optimal_cost = optimum.cost;
  record.ratio = approximation_ratio(instance, outcome.solution, optimum.cost,
                                     variant);

  if (spec.kind == MechanismKind::kParamK2 && has_symmetric_groups(instance)) {
    record.theoretical_bound =
        theoretical_bound(spec.theta, spec.l, spec.r, instance.group_count(),
                          instance.agent_count(), variant);
    if (record.ratio > *record.theoretical_bound + kBoundSlack) {
      fail(ErrorCode::kInternal,
           "ratio " + format_double(record.ratio) +
               " exceeds the closed-form bound " +
               format_double(*record.theoretical_bound));
    }
  }
  if (with_audit) {
    record.audit_max_gain = audit_instance(spec, instance, variant).max_gain;
  }
  return record;
}

std::string run_record_to_json(const RunRecord& record) {
  nlohmann::ordered_json json;
  json["instance_digest"] = record.instance_digest;
  json["spec"] = record.spec;
  json["variant"] = variant_name(record.variant);
  json["mechanism_cost"] = record.mechanism_cost;
  json["optimal_cost"] = record.optimal_cost;
  json["ratio"] = record.ratio;
  if (record.theoretical_bound) {
    json["theoretical_bound"] = *record.theoretical_bound;
  } else {
    json["theoretical_bound"] = nullptr;
  }
  if (record.audit_max_gain) {
    json["audit_max_gain"] = *record.audit_max_gain;
  } else {
    json["audit_max_gain"] = nullptr;
  }
  return json.dump();
}

std::string run_record_csv_header() {
  return "instance_digest,spec,variant,mechanism_cost,optimal_cost,ratio,"
         "theoretical_bound,audit_max_gain";
}

std::string run_record_to_csv(const RunRecord& record) {
  std::string row = record.instance_digest;
  row += ",\"" + record.spec + "\",";
  row += variant_name(record.variant);
  row += ',' + format_double(record.mechanism_cost);
  row += ',' + format_double(record.optimal_cost);
  row += ',' + format_double(record.ratio);
  row += ',';
  if (record.theoretical_bound) row += format_double(*record.theoretical_bound);
  row += ',';
  if (record.audit_max_gain) row += format_double(*record.audit_max_gain);
  return row;
}

int thread_budget() {
  if (const char* env = std::getenv("MECHLAB_THREADS")) {
    const int value = std::atoi(env);
    if (value > 0) return value;
  }
  const unsigned hardware = std::thread::hardware_concurrency();
  return hardware == 0 ? 1 : static_cast<int>(hardware);
}

Instance fuzz_trial_instance(const FuzzConfig& config, int trial) {
  std::mt19937_64 chooser(trial_seed(config.seed, trial));
  const int k = std::max(config.base.k, 2);
  const int lo = std::max(config.base.min_groups, k);
  const int hi = std::max(config.base.max_groups, lo);
  std::vector<int> group_counts;
  for (int m = lo; m <= hi; ++m) {
    if (config.parity == Parity::kOdd && m % 2 == 0) continue;
    if (config.parity == Parity::kEven && m % 2 != 0) continue;
    group_counts.push_back(m);
  }
  if (group_counts.empty()) {
    fail(ErrorCode::kUsageError,
         "no group count in [" + std::to_string(lo) + ", " +
             std::to_string(hi) + "] matches the parity filter");
  }
  const int m = group_counts[chooser() % group_counts.size()];

  RandomConfig derived = config.base;
  derived.min_groups = derived.max_groups = m;
  if (config.symmetric_groups) {
    const int size_lo = std::max(config.base.min_group_size, 1);
    const int size_hi = std::max(config.base.max_group_size, size_lo);
    const int size =
        size_lo + static_cast<int>(chooser() % static_cast<std::uint64_t>(
                                                   size_hi - size_lo + 1));
    derived.min_group_size = derived.max_group_size = size;
  }
  derived.seed = chooser();
  return gen_random(derived);
}

FuzzResult fuzz(const FuzzConfig& config) {
  if (config.trials <= 0) fail(ErrorCode::kUsageError, "trials must be >= 1");

  std::vector<double> ratios(static_cast<std::size_t>(config.trials), 0.0);
  const int workers =
      std::clamp(thread_budget(), 1, config.trials);
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> failures(
      static_cast<std::size_t>(workers));

  auto sweep = [&](int worker) {
    try {
      for (int trial = next.fetch_add(1); trial < config.trials;
           trial = next.fetch_add(1)) {
        const Instance instance = fuzz_trial_instance(config, trial);
        const RunRecord record =
            make_run_record(config.mech, instance, config.variant);
        ratios[static_cast<std::size_t>(trial)] = record.ratio;
      }
    } catch (...) {
      failures[static_cast<std::size_t>(worker)] = std::current_exception();
    }
  };

  if (workers == 1) {
    sweep(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) threads.emplace_back(sweep, w);
    for (auto& thread : threads) thread.join();
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }

  // Max-reduce keyed by (ratio, trial index): ties go to the earliest trial,
  // independent of scheduling.
  int best = 0;
  for (int trial = 1; trial < config.trials; ++trial) {
    if (ratios[static_cast<std::size_t>(trial)] >
        ratios[static_cast<std::size_t>(best)]) {
      best = trial;
    }
  }

  FuzzResult result;
  result.trials = config.trials;
  result.worst_trial = best;
  result.worst_instance = fuzz_trial_instance(config, best);
  result.worst_record =
      make_run_record(config.mech, *result.worst_instance, config.variant);
  result.worst_ratio = result.worst_record.ratio;
  if (config.bound) {
    result.bound_checked = true;
    result.pass = result.worst_ratio <= *config.bound + kBoundSlack;
  }
  return result;
}

}  // namespace mechlab
