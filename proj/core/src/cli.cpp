#include <cmath>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mechlab/cost_engine.hpp"
#include "mechlab/harness.hpp"
#include "mechlab/optimal_oracle.hpp"
#include "mechlab/sp_audit.hpp"

namespace mechlab {
namespace {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUsageError:
      return 64;
    case ErrorCode::kZeroOptimumMismatch:
    case ErrorCode::kNoFeasibleFill:
    case ErrorCode::kInternal:
      return 70;
    default:
      return 65;
  }
}

struct CommonArgs {
  std::string instance_path;
  std::string family;
  std::string mech;
  std::string variant = "sum";
  std::string format = "json";
};

Instance resolve_instance(const CommonArgs& args) {
  if (!args.instance_path.empty() && !args.family.empty()) {
    fail(ErrorCode::kUsageError, "pass either --instance or --family, not both");
  }
  if (!args.instance_path.empty()) {
    return load_instance_file(args.instance_path);
  }
  if (!args.family.empty()) {
    return gen_family(parse_family_spec(args.family));
  }
  fail(ErrorCode::kUsageError, "an instance is required: --instance or --family");
}

void add_instance_options(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--instance", args.instance_path,
                  "path to an instance JSON file");
  cmd->add_option("--family", args.family,
                  "family spec, e.g. sum-lower-k:k=3 or nine-halves:eps=1e-3");
}

Parity parse_parity(const std::string& text) {
  if (text == "any") return Parity::kAny;
  if (text == "odd") return Parity::kOdd;
  if (text == "even") return Parity::kEven;
  fail(ErrorCode::kUsageError,
       "unknown parity '" + text + "' (expected any|odd|even)");
}

nlohmann::ordered_json json_or_null(double value) {
  if (!std::isfinite(value)) return nullptr;
  return value;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  CLI::App app{"two-phase facility-location mechanisms on the line"};
  app.require_subcommand(1);

  CommonArgs common;

  auto* cmd_run = app.add_subcommand(
      "run", "run a mechanism and print representatives and solution");
  add_instance_options(cmd_run, common);
  cmd_run->add_option("--mech", common.mech, "mechanism spec")->required();
  cmd_run->add_option("--variant", common.variant, "sum|max");

  auto* cmd_optimal =
      app.add_subcommand("optimal", "compute a minimum-social-cost solution");
  add_instance_options(cmd_optimal, common);
  cmd_optimal->add_option("--variant", common.variant, "sum|max")->required();
  std::string oracle = "full";
  cmd_optimal->add_option("--oracle", oracle,
                          "full enumeration or the variant-specific reduction")
      ->check(CLI::IsMember({"full", "fast"}));

  auto* cmd_ratio = app.add_subcommand(
      "ratio", "mechanism cost, optimal cost and their ratio");
  add_instance_options(cmd_ratio, common);
  cmd_ratio->add_option("--mech", common.mech, "mechanism spec")->required();
  cmd_ratio->add_option("--variant", common.variant, "sum|max")->required();
  cmd_ratio->add_option("--format", common.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  bool with_audit = false;
  cmd_ratio->add_flag("--audit", with_audit,
                      "also sweep misreports and record the max gain");

  auto* cmd_audit = app.add_subcommand(
      "audit", "search for beneficial unilateral misreports (exit 2 = found)");
  add_instance_options(cmd_audit, common);
  cmd_audit->add_option("--mech", common.mech, "mechanism spec")->required();
  cmd_audit->add_option("--variant", common.variant, "sum|max")->required();

  auto* cmd_family = app.add_subcommand(
      "family", "generate an adversarial family instance");
  std::string family_out;
  cmd_family->add_option("--family", common.family, "family spec")->required();
  cmd_family->add_option("--out", family_out,
                         "also write the bare instance JSON to this path");

  auto* cmd_fuzz = app.add_subcommand(
      "fuzz", "seeded random worst-ratio search for a mechanism");
  cmd_fuzz->add_option("--mech", common.mech, "mechanism spec")->required();
  cmd_fuzz->add_option("--variant", common.variant, "sum|max")->required();
  int trials = 1000;
  std::uint64_t seed = 0;
  int max_groups = 6, min_groups = 2, max_size = 4, fuzz_k = 2;
  std::string dist = "uniform", parity = "any";
  bool symmetric = false;
  double bound_value = 0.0;
  cmd_fuzz->add_option("--trials", trials, "number of random instances");
  cmd_fuzz->add_option("--seed", seed, "base RNG seed");
  cmd_fuzz->add_option("--min-groups", min_groups, "minimum group count");
  cmd_fuzz->add_option("--max-groups", max_groups, "maximum group count");
  cmd_fuzz->add_option("--max-size", max_size, "maximum group size");
  cmd_fuzz->add_option("--k", fuzz_k, "facility count of the instances");
  cmd_fuzz->add_option("--dist", dist, "uniform|two-cluster");
  cmd_fuzz->add_option("--parity", parity, "restrict group counts: any|odd|even");
  cmd_fuzz->add_flag("--symmetric", symmetric, "equal-size groups only");
  auto* bound_opt = cmd_fuzz->add_option(
      "--bound", bound_value, "PASS/FAIL threshold for the worst ratio");

  auto* cmd_bound = app.add_subcommand(
      "bound", "evaluate the closed-form worst-case ratio bound");
  double b_theta = 0.0, b_l = 0.0, b_r = 0.0;
  int b_m = 0;
  std::int64_t b_n = 0;
  cmd_bound->add_option("--theta", b_theta)->required();
  cmd_bound->add_option("--l", b_l)->required();
  cmd_bound->add_option("--r", b_r)->required();
  cmd_bound->add_option("--m", b_m, "group count")->required();
  cmd_bound->add_option("--n", b_n, "agent count (multiple of m)")->required();
  cmd_bound->add_option("--variant", common.variant, "sum|max")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& error) {
    err << error.what() << '\n';
    return 64;
  }

  try {
    if (cmd_run->parsed()) {
      const Instance instance = resolve_instance(common);
      const auto spec = parse_mechanism_spec(common.mech);
      const auto variant = parse_variant(common.variant);
      out << mechanism_outcome_to_json(run_mechanism(spec, instance, variant))
          << '\n';
      return 0;
    }
    if (cmd_optimal->parsed()) {
      const Instance instance = resolve_instance(common);
      const auto variant = parse_variant(common.variant);
      const OptimalResult result =
          oracle == "full" ? optimal_full(instance, variant)
          : variant == Variant::kSum ? optimal_sum_fast(instance)
                                     : optimal_max_fast(instance);
      out << optimal_result_to_json(result) << '\n';
      return 0;
    }
    if (cmd_ratio->parsed()) {
      const Instance instance = resolve_instance(common);
      const auto spec = parse_mechanism_spec(common.mech);
      const auto variant = parse_variant(common.variant);
      const RunRecord record =
          make_run_record(spec, instance, variant, with_audit);
      if (common.format == "csv") {
        out << run_record_csv_header() << '\n'
            << run_record_to_csv(record) << '\n';
      } else {
        out << run_record_to_json(record) << '\n';
      }
      return 0;
    }
    if (cmd_audit->parsed()) {
      const Instance instance = resolve_instance(common);
      const auto spec = parse_mechanism_spec(common.mech);
      const auto variant = parse_variant(common.variant);
      const AuditReport report = audit_instance(spec, instance, variant);
      out << audit_report_to_json(report) << '\n';
      return found_witness(report) ? 2 : 0;
    }
    if (cmd_family->parsed()) {
      const FamilySpec spec = parse_family_spec(common.family);
      const Instance instance = gen_family(spec);
      const FamilyTargets targets = family_targets(spec);
      nlohmann::ordered_json json;
      json["family"] = to_string(spec);
      json["instance"] = nlohmann::ordered_json::parse(
          instance_to_json(instance));
      if (targets.has_values) {
        json["targets"] = {{"adversarial_cost", targets.adversarial_cost},
                           {"optimal_cost", targets.optimal_cost},
                           {"target_ratio", targets.target_ratio}};
      } else {
        json["targets"] = nullptr;
      }
      out << json.dump() << '\n';
      if (!family_out.empty()) save_instance_file(instance, family_out);
      return 0;
    }
    if (cmd_fuzz->parsed()) {
      FuzzConfig config;
      config.mech = parse_mechanism_spec(common.mech);
      config.variant = parse_variant(common.variant);
      config.trials = trials;
      config.seed = seed;
      config.base.min_groups = min_groups;
      config.base.max_groups = max_groups;
      config.base.max_group_size = max_size;
      config.base.k = fuzz_k;
      config.base.distribution = parse_distribution(dist);
      config.parity = parse_parity(parity);
      config.symmetric_groups = symmetric;
      if (bound_opt->count() > 0) config.bound = bound_value;

      const FuzzResult result = fuzz(config);
      nlohmann::ordered_json json;
      json["spec"] = to_string(config.mech);
      json["variant"] = variant_name(config.variant);
      json["trials"] = result.trials;
      json["worst_ratio"] = result.worst_ratio;
      json["worst_trial"] = result.worst_trial;
      json["worst_record"] =
          nlohmann::ordered_json::parse(run_record_to_json(result.worst_record));
      json["witness"] = nlohmann::ordered_json::parse(
          instance_to_json(*result.worst_instance));
      if (result.bound_checked) {
        json["bound"] = *config.bound;
        json["pass"] = result.pass;
      }
      out << json.dump() << '\n';
      if (result.bound_checked) {
        out << (result.pass ? "PASS" : "FAIL") << '\n';
        return result.pass ? 0 : 2;
      }
      return 0;
    }
    if (cmd_bound->parsed()) {
      const auto variant = parse_variant(common.variant);
      const double finite = theoretical_bound(b_theta, b_l, b_r, b_m, b_n,
                                              variant);
      const double limit =
          theoretical_bound_limit(b_theta, b_l, b_r, b_m, variant);
      nlohmann::ordered_json json;
      json["theta"] = b_theta;
      json["l"] = b_l;
      json["r"] = b_r;
      json["m"] = b_m;
      json["n"] = b_n;
      json["variant"] = variant_name(variant);
      json["bound"] = json_or_null(finite);
      json["limit"] = json_or_null(limit);
      out << json.dump() << '\n';
      return 0;
    }
    fail(ErrorCode::kUsageError, "no subcommand given");
  } catch (const Error& error) {
    err << error.what() << '\n';
    return exit_code_for(error.code());
  } catch (const std::exception& error) {
    err << "internal error: " << error.what() << '\n';
    return 70;
  }
}

}  // namespace mechlab
