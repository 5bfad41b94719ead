#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mechlab/core_model.hpp"
#include "mechlab/instance_forge.hpp"
#include "mechlab/mechanisms.hpp"

namespace mechlab {

/// Worst-case approximation-ratio bound for the parameterized two-facility
/// mechanism on instances with m equal-size groups of n/m agents: the maximum
/// of four rank-counting terms, evaluated with exact (snapped) ceilings.
/// Requires n divisible by m; callers with uneven groups pass the symmetrized
/// agent count.
double theoretical_bound(double theta, double l, double r, int m,
                         std::int64_t n, Variant variant);

/// The n -> infinity worst case of theoretical_bound at fixed m. Infinite for
/// theta = 1.
double theoretical_bound_limit(double theta, double l, double r, int m,
                               Variant variant);

struct RunRecord {
  std::string instance_digest;
  std::string spec;
  Variant variant = Variant::kSum;
  double mechanism_cost = 0.0;
  double optimal_cost = 0.0;
  double ratio = 0.0;
  std::optional<double> theoretical_bound;  // ParamK2 on symmetric groups
  std::optional<double> audit_max_gain;
};

/// Runs the mechanism, fetches the variant-specific optimum, and forms the
/// ratio. For ParamK2 specs on equal-size groups the closed-form bound is
/// attached and enforced (a breach is an internal invariant failure).
RunRecord make_run_record(const MechanismSpec& spec, const Instance& instance,
                          Variant variant, bool with_audit = false);

std::string run_record_to_json(const RunRecord& record);
std::string run_record_csv_header();
std::string run_record_to_csv(const RunRecord& record);

enum class Parity { kAny, kOdd, kEven };

struct FuzzConfig {
  MechanismSpec mech;
  Variant variant = Variant::kSum;
  int trials = 1000;
  std::uint64_t seed = 0;
  /// Group/size ranges, k and distribution; the seed field is ignored in
  /// favor of per-trial seeds derived from `seed`.
  RandomConfig base;
  Parity parity = Parity::kAny;
  bool symmetric_groups = false;
  std::optional<double> bound;
};

struct FuzzResult {
  int trials = 0;
  double worst_ratio = 0.0;
  int worst_trial = -1;
  std::optional<Instance> worst_instance;
  RunRecord worst_record;
  bool bound_checked = false;
  bool pass = true;
};

/// Deterministic instance for one fuzz trial (exposed for reproducing
/// witnesses outside the fuzz loop).
Instance fuzz_trial_instance(const FuzzConfig& config, int trial);

/// Seeded worst-ratio search. Trials run in parallel (capped by
/// MECHLAB_THREADS) but the reduction is keyed by trial index, so the result
/// is schedule-independent.
FuzzResult fuzz(const FuzzConfig& config);

int thread_budget();

/// CLI entry point: subcommands run, optimal, ratio, audit, fuzz, family,
/// bound. Returns the process exit code (0 ok, 2 witness/bound failure,
/// 64 usage, 65 validation, 70 internal).
int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

}  // namespace mechlab
