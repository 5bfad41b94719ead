#include <cmath>

#include "doctest.h"
#include "mechlab/cost_engine.hpp"
#include "mechlab/instance_forge.hpp"
#include "mechlab/mechanisms.hpp"
#include "support.hpp"

using namespace mechlab;
namespace mt = mechlab::testing;

namespace {
constexpr double kSqrt2 = 1.4142135623730951;
}

TEST_SUITE_BEGIN("mechanisms");

TEST_CASE("ceil_rank computes snapped ceilings") {
  CHECK(ceil_rank(0.5, 4) == 2);
  CHECK(ceil_rank(kSqrt2 - 1.0, 4) == 2);
  CHECK(ceil_rank(2.0 / 3.0, 3) == 2);
  // 0.3 * 10 lands a hair below 3; the snap keeps it at 3.
  CHECK(ceil_rank(0.3, 10) == 3);
  CHECK(ceil_rank(1.0, 7) == 7);
  CHECK(ceil_rank(1e-12, 5) == 1);
  CHECK(ceil_rank(0.2, 20) == 4);
}

TEST_CASE("select_representatives picks the theta order statistic per group") {
  CHECK(select_representatives(mt::demo_instance(), 0.5) ==
        std::vector<double>{0.0, 0.51, 1.0});
  CHECK(select_representatives(mt::demo_instance(), 1.0) ==
        std::vector<double>{0.1, 0.51, 1.0});
  // Unsorted reports: the 2nd-leftmost of {3, 1, 2} is 2.
  const Instance instance = mt::make({{3.0, 1.0, 2.0}, {9.0, 9.0, 9.0}}, 2);
  CHECK(select_representatives(instance, 0.5) == std::vector<double>{2.0, 9.0});
}

TEST_CASE("facilities_by_rank indexes the sorted representative multiset") {
  const std::vector<double> reps{0.0, 0.51, 1.0};
  const std::vector<int> ranks{2, 3};
  CHECK(facilities_by_rank(reps, ranks).locations ==
        std::vector<double>{0.51, 1.0});

  const std::vector<double> tied{5.0, 5.0, 5.0};
  CHECK(facilities_by_rank(tied, std::vector<int>{1, 3}).locations ==
        std::vector<double>{5.0, 5.0});

  const std::vector<double> skewed{0.0, 1.0, 1.0, 1.0};
  CHECK(facilities_by_rank(skewed, std::vector<int>{1, 2, 3}).locations ==
        std::vector<double>{0.0, 1.0, 1.0});
}

TEST_CASE("facilities_by_rank validates ranks") {
  const std::vector<double> reps{0.0, 1.0};
  CHECK_THROWS_WITH_AS(facilities_by_rank(reps, std::vector<int>{0, 1}),
                       doctest::Contains("RankOutOfRange"), Error);
  CHECK_THROWS_WITH_AS(facilities_by_rank(reps, std::vector<int>{1, 3}),
                       doctest::Contains("RankOutOfRange"), Error);
  CHECK_THROWS_WITH_AS(facilities_by_rank(reps, std::vector<int>{2, 2}),
                       doctest::Contains("RankOutOfRange"), Error);
}

TEST_CASE("a_max_star_select pairs the median with its closest neighbor") {
  CHECK(a_max_star_select(std::vector<double>{0.0, 0.51, 1.0}).locations ==
        std::vector<double>{0.51, 1.0});
  // Equidistant neighbors: the left one wins.
  CHECK(a_max_star_select(std::vector<double>{0.0, 1.0, 2.0}).locations ==
        std::vector<double>{0.0, 1.0});
  CHECK(a_max_star_select(std::vector<double>{0.0, 0.4, 1.0}).locations ==
        std::vector<double>{0.0, 0.4});
  CHECK(a_max_star_select(std::vector<double>{3.0, 8.0}).locations ==
        std::vector<double>{3.0, 8.0});
}

TEST_CASE("resolve_spec picks dispatcher parameters by group count") {
  const auto sum3 = resolve_spec(MechanismSpec::sum_k2(), 3, 2);
  CHECK(sum3.theta == doctest::Approx(1.0 / 3.0));
  CHECK(sum3.ranks == std::vector<int>{2, 3});

  const auto sum5 = resolve_spec(MechanismSpec::sum_k2(), 5, 2);
  CHECK(sum5.theta == doctest::Approx(0.4));
  CHECK(sum5.ranks == std::vector<int>{3, 4});

  const auto sum4 = resolve_spec(MechanismSpec::sum_k2(), 4, 2);
  CHECK(sum4.theta == 0.5);
  CHECK(sum4.ranks == std::vector<int>{2, 3});

  const auto max4 = resolve_spec(MechanismSpec::max_k2(), 4, 2);
  CHECK(max4.theta == 0.5);
  CHECK(max4.ranks == std::vector<int>{2, 3});

  const auto max3 = resolve_spec(MechanismSpec::max_k2(), 3, 2);
  CHECK(max3.theta == doctest::Approx(1.0 / 3.0));
  CHECK(max3.ranks == std::vector<int>{2, 3});

  const auto max_k = resolve_spec(MechanismSpec::max_k(), 5, 3);
  CHECK(max_k.ranks == std::vector<int>{2, 3, 4});

  const auto sum_k = resolve_spec(MechanismSpec::sum_k(), 4, 3);
  CHECK(sum_k.ranks == std::vector<int>{1, 2, 3});

  const auto star = resolve_spec(MechanismSpec::a_max_star(), 3, 2);
  CHECK(star.closest_to_median);
}

TEST_CASE("resolve_spec enforces the rank separation requirement") {
  CHECK_THROWS_WITH_AS(
      resolve_spec(MechanismSpec::param_k2(0.5, kSqrt2 - 1.0, 2.0 - kSqrt2), 3,
                   2),
      doctest::Contains("InvalidParamPair"), Error);
  CHECK_THROWS_WITH_AS(
      resolve_spec(MechanismSpec::param_k2(0.5, kSqrt2 - 1.0, 2.0 - kSqrt2), 5,
                   2),
      doctest::Contains("InvalidParamPair"), Error);
  CHECK_NOTHROW(resolve_spec(
      MechanismSpec::param_k2(0.5, kSqrt2 - 1.0, 2.0 - kSqrt2), 4, 2));
  CHECK_THROWS_WITH_AS(resolve_spec(MechanismSpec::param_k2(0.5, 1.2, 0.3), 4,
                                    2),
                       doctest::Contains("InvalidParamPair"), Error);
  CHECK_THROWS_AS(resolve_spec(MechanismSpec::param_k2(0.5, 0.25, 0.75), 4, 3),
                  Error);
  CHECK_THROWS_AS(resolve_spec(MechanismSpec::sum_k(3), 4, 4), Error);
}

TEST_CASE("run_mechanism composes both phases") {
  const auto star = run_mechanism(MechanismSpec::a_max_star(),
                                  mt::demo_instance(), Variant::kMax);
  CHECK(star.representatives == std::vector<double>{0.0, 0.51, 1.0});
  CHECK(star.solution.locations == std::vector<double>{0.51, 1.0});

  const Instance lower = mt::make({{0.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}}, 3);
  const auto sum_k =
      run_mechanism(MechanismSpec::sum_k(), lower, Variant::kSum);
  CHECK(sum_k.representatives == std::vector<double>{0.0, 1.0, 1.0});
  CHECK(sum_k.solution.locations == std::vector<double>{0.0, 1.0, 1.0});

  const Instance nine = gen_family(FamilySpec::nine_halves(1e-3));
  const auto max_k2 =
      run_mechanism(MechanismSpec::max_k2(), nine, Variant::kMax);
  CHECK(max_k2.solution.locations == std::vector<double>{0.501, 1.0});
}

TEST_CASE("mechanism spec strings round-trip") {
  for (const char* text :
       {"sum-k2", "max-k2", "a-max-star", "sum-k", "max-k", "sum-k:k=3",
        "param-k2:theta=0.5,l=0.41421356,r=0.58578644"}) {
    const MechanismSpec spec = parse_mechanism_spec(text);
    const MechanismSpec reparsed = parse_mechanism_spec(to_string(spec));
    CHECK(reparsed.kind == spec.kind);
    CHECK(reparsed.theta == spec.theta);
    CHECK(reparsed.l == spec.l);
    CHECK(reparsed.r == spec.r);
    CHECK(reparsed.k == spec.k);
  }
  CHECK_THROWS_WITH_AS(parse_mechanism_spec("median"),
                       doctest::Contains("UsageError"), Error);
  CHECK_THROWS_WITH_AS(parse_mechanism_spec("param-k2:theta=0.5"),
                       doctest::Contains("UsageError"), Error);
  CHECK_THROWS_WITH_AS(parse_mechanism_spec("sum-k2:w=1"),
                       doctest::Contains("UsageError"), Error);
}

TEST_CASE("outcomes are feasible k-multisets of representatives") {
  const std::vector<MechanismSpec> specs{
      MechanismSpec::sum_k2(), MechanismSpec::max_k2(),
      MechanismSpec::a_max_star(), MechanismSpec::sum_k(),
      MechanismSpec::max_k(), MechanismSpec::param_k2(0.25, 0.3, 0.9)};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RandomConfig config;
    config.seed = seed;
    const Instance instance = gen_random(config);
    for (const auto& spec : specs) {
      const auto outcome = run_mechanism(spec, instance, Variant::kSum);
      CHECK(is_feasible(instance, outcome.solution));
      CHECK(outcome.representatives.size() ==
            static_cast<std::size_t>(instance.group_count()));
      // Every chosen location is some group's representative.
      for (double location : outcome.solution.locations) {
        CHECK(std::count(outcome.representatives.begin(),
                         outcome.representatives.end(), location) > 0);
      }
      // Representatives are positions of agents in their own group.
      for (int g = 0; g < instance.group_count(); ++g) {
        const auto& group = instance.groups()[static_cast<std::size_t>(g)];
        CHECK(std::count(group.begin(), group.end(),
                         outcome.representatives[static_cast<std::size_t>(g)]) >
              0);
      }
    }
  }
}

TEST_CASE("groups with identical reports get identical representatives") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    RandomConfig config;
    config.min_groups = 2;
    config.max_groups = 3;
    config.seed = seed;
    const Instance base = gen_random(config);

    auto groups = base.groups();
    groups.push_back(groups.front());  // duplicate the first group
    const Instance instance = validate_instance(std::move(groups), base.k());
    const auto outcome =
        run_mechanism(MechanismSpec::sum_k2(), instance, Variant::kSum);
    CHECK(outcome.representatives.front() == outcome.representatives.back());
  }
}

TEST_CASE("symmetrization does not change any mechanism's behavior") {
  const std::vector<MechanismSpec> specs{
      MechanismSpec::sum_k2(), MechanismSpec::max_k2(),
      MechanismSpec::a_max_star(), MechanismSpec::sum_k(),
      MechanismSpec::max_k(), MechanismSpec::param_k2(0.7, 0.2, 0.6)};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RandomConfig config;
    config.max_groups = 4;
    config.max_group_size = 4;
    config.seed = seed;
    const Instance instance = gen_random(config);
    const Instance symmetric = symmetrize(instance);
    for (const auto& spec : specs) {
      const auto before = run_mechanism(spec, instance, Variant::kSum);
      const auto after = run_mechanism(spec, symmetric, Variant::kSum);
      CHECK(before.representatives == after.representatives);
      CHECK(before.solution == after.solution);
    }
  }
}

TEST_CASE("raising one report weakly raises both facilities") {
  const MechanismSpec spec = MechanismSpec::param_k2(0.5, 0.3, 0.8);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    RandomConfig config;
    config.max_groups = 4;
    config.max_group_size = 2;
    config.seed = seed;
    const Instance instance = gen_random(config);

    const std::vector<double> reports{-0.5, 0.1, 0.35, 0.6, 0.9, 1.5};
    for (int g = 0; g < instance.group_count(); ++g) {
      for (int i = 0; i < instance.group_size(g); ++i) {
        Solution previous;
        bool first = true;
        for (double report : reports) {
          const Instance moved = instance.with_position({g, i}, report);
          const Solution solution =
              run_mechanism(spec, moved, Variant::kSum).solution;
          if (!first) {
            CHECK(solution.locations[0] >= previous.locations[0]);
            CHECK(solution.locations[1] >= previous.locations[1]);
          }
          previous = solution;
          first = false;
        }
      }
    }
  }
}

TEST_SUITE_END();
