#include <cmath>

#include "doctest.h"
#include "mechlab/cost_engine.hpp"
#include "mechlab/instance_forge.hpp"
#include "mechlab/optimal_oracle.hpp"
#include "support.hpp"

using namespace mechlab;
namespace mt = mechlab::testing;

TEST_SUITE_BEGIN("cost_engine");

TEST_CASE("individual_cost sums or maxes distances") {
  const Solution solution = make_solution({0.51, 1.0});
  CHECK(individual_cost(0.0, solution, Variant::kSum) == doctest::Approx(1.51).epsilon(1e-12));
  CHECK(individual_cost(0.1, solution, Variant::kMax) == doctest::Approx(0.9).epsilon(1e-12));
  const Solution colocated = make_solution({3.0, 3.0});
  CHECK(individual_cost(3.0, colocated, Variant::kSum) == 0.0);
  CHECK(individual_cost(3.0, colocated, Variant::kMax) == 0.0);
}

TEST_CASE("social_cost averages group averages") {
  const Instance instance = mt::demo_instance();
  const Solution solution = make_solution({0.51, 1.0});

  const CostReport max_report = social_cost(instance, solution, Variant::kMax);
  CHECK(max_report.per_group_avg[0] == doctest::Approx(0.95).epsilon(1e-12));
  CHECK(max_report.per_group_avg[1] == doctest::Approx(0.49).epsilon(1e-12));
  CHECK(max_report.per_group_avg[2] == doctest::Approx(0.49).epsilon(1e-12));
  CHECK(max_report.social ==
        doctest::Approx((0.95 + 0.49 + 0.49) / 3).epsilon(1e-12));

  const CostReport sum_report = social_cost(instance, solution, Variant::kSum);
  CHECK(sum_report.social ==
        doctest::Approx((1.41 + 0.49 + 0.49) / 3).epsilon(1e-12));

  const Instance single = mt::make({{7.0, 7.0}, {7.0}}, 2);
  CHECK(social_cost(single, make_solution({7.0, 7.0}), Variant::kSum).social ==
        0.0);
}

TEST_CASE("social_cost report satisfies its own invariants") {
  const Instance instance = mt::demo_instance();
  const CostReport report =
      social_cost(instance, make_solution({0.1, 0.51}), Variant::kSum);
  double group_avg_total = 0.0;
  for (std::size_t g = 0; g < report.per_agent.size(); ++g) {
    double sum = 0.0;
    for (double cost : report.per_agent[g]) {
      CHECK(cost >= 0.0);
      sum += cost;
    }
    CHECK(report.per_group_avg[g] ==
          doctest::Approx(sum / report.per_agent[g].size()).epsilon(1e-15));
    group_avg_total += report.per_group_avg[g];
  }
  CHECK(report.social ==
        doctest::Approx(group_avg_total / 3.0).epsilon(1e-15));
}

TEST_CASE("social_cost rejects infeasible solutions") {
  const Instance instance = mt::demo_instance();
  CHECK_THROWS_WITH_AS(
      social_cost(instance, make_solution({0.0, 0.0}), Variant::kSum),
      doctest::Contains("InfeasibleSolution"), Error);
  CHECK_THROWS_WITH_AS(
      social_cost(instance, make_solution({0.2, 1.0}), Variant::kSum),
      doctest::Contains("InfeasibleSolution"), Error);
}

TEST_CASE("approximation_ratio forms the single-instance ratio") {
  // One group straddling 0/1 plus k-1 groups at 1: the rank mechanism is
  // forced to (0, 1, 1) while (1, 1, 1) is optimal.
  const Instance instance = mt::make({{0.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}}, 3);
  const Solution forced = make_solution({0.0, 1.0, 1.0});
  CHECK(approximation_ratio(instance, forced, 0.5, Variant::kSum) ==
        doctest::Approx(7.0 / 3.0).epsilon(1e-12));

  const Solution optimal = make_solution({1.0, 1.0, 1.0});
  CHECK(approximation_ratio(instance, optimal, 0.5, Variant::kSum) == 1.0);

  const Instance point = mt::make({{2.0}, {2.0}}, 2);
  CHECK(approximation_ratio(point, make_solution({2.0, 2.0}), 0.0,
                            Variant::kMax) == 1.0);
}

TEST_CASE("approximation_ratio flags a zero optimum with positive cost") {
  const Instance instance = mt::demo_instance();
  CHECK_THROWS_WITH_AS(approximation_ratio(instance, make_solution({0.0, 1.0}),
                                           0.0, Variant::kSum),
                       doctest::Contains("ZeroOptimumMismatch"), Error);
}

TEST_CASE("costs are translation invariant and scale covariant") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RandomConfig config;
    config.max_groups = 4;
    config.max_group_size = 3;
    config.seed = seed;
    const Instance instance = gen_random(config);
    const OptimalResult optimum = optimal_sum_fast(instance);

    for (const auto [shift, scale] : {std::pair{3.5, 1.0}, {0.0, 2.5},
                                      {-1.25, 0.5}}) {
      std::vector<std::vector<double>> moved_groups;
      for (const auto& group : instance.groups()) {
        std::vector<double> moved;
        for (double position : group) moved.push_back(position * scale + shift);
        moved_groups.push_back(std::move(moved));
      }
      const Instance moved = validate_instance(std::move(moved_groups), 2);
      std::vector<double> moved_solution;
      for (double location : optimum.solution.locations) {
        moved_solution.push_back(location * scale + shift);
      }
      const double before =
          social_cost(instance, optimum.solution, Variant::kSum).social;
      const double after =
          social_cost(moved, make_solution(moved_solution), Variant::kSum)
              .social;
      CHECK(after == doctest::Approx(before * scale).epsilon(1e-9));
    }
  }
}

TEST_CASE("max cost never exceeds sum cost") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RandomConfig config;
    config.seed = seed;
    const Instance instance = gen_random(config);
    const Solution solution = optimal_sum_fast(instance).solution;
    for (const auto& group : instance.groups()) {
      for (double position : group) {
        CHECK(individual_cost(position, solution, Variant::kMax) <=
              individual_cost(position, solution, Variant::kSum) + 1e-15);
      }
    }
  }
  // Equality when the agent sits on one of two facilities.
  const Solution pair = make_solution({0.0, 1.0});
  CHECK(individual_cost(0.0, pair, Variant::kMax) ==
        individual_cost(0.0, pair, Variant::kSum));
}

TEST_CASE("symmetric groups reduce social cost to the agent average") {
  const Instance instance =
      mt::make({{0.0, 0.25}, {0.5, 0.75}, {0.25, 1.0}}, 2);
  const Solution solution = make_solution({0.25, 0.75});
  const CostReport report = social_cost(instance, solution, Variant::kSum);
  double total = 0.0;
  for (const auto& group : instance.groups()) {
    for (double position : group) {
      total += individual_cost(position, solution, Variant::kSum);
    }
  }
  CHECK(report.social ==
        doctest::Approx(total / instance.agent_count()).epsilon(1e-12));
}

TEST_CASE("cost report serializes with stable keys") {
  const Instance instance = mt::make({{1.0}, {2.0}}, 2);
  const CostReport report =
      social_cost(instance, make_solution({1.0, 2.0}), Variant::kSum);
  const std::string json = cost_report_to_json(report);
  CHECK(json ==
        R"({"per_agent":[[1.0],[1.0]],"per_group_avg":[1.0,1.0],"social":1.0})");
}

TEST_SUITE_END();
