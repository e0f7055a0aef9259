#include "sectorsched/constraint_check.hpp"
#include "sectorsched/errors.hpp"
#include "sectorsched/exact_oracle.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

using namespace sectorsched;

namespace {

Scenario three_sector_example() {
    Scenario s;
    s.n_sectors = 3;
    s.fov_half_width = 1;
    s.resources = {2, 2, 2};
    s.tasks = {make_task(0, 0.3, 0.0, 2.0, 3), make_task(1, 1.5, 0.0, 2.0, 3), make_task(2, 3.0, 0.0, 2.0, 3)};
    return s;
}

}  // namespace

TEST(ExactMinPasses, ThreeSectorExample) {
    const auto s = three_sector_example();
    const auto sol = exact_min_passes(s);
    EXPECT_EQ(sol.objective, 2);
    EXPECT_TRUE(sol.optimal);
    EXPECT_TRUE(check_exact_solution(s, sol).empty());
    EXPECT_EQ(oracle::brute_force_min_pass(s, 8), 2);
}

TEST(ExactMinPasses, FourthTaskSpillsIntoSecondRotation) {
    auto s = three_sector_example();
    s.tasks.push_back(make_task(3, 0.4, 0.0, 2.0, 3));
    const auto sol = exact_min_passes(s);
    EXPECT_EQ(sol.objective, 3);
    EXPECT_EQ(oracle::brute_force_min_pass(s, 8), 3);
}

TEST(ExactMinPasses, EmptyTaskSet) {
    Scenario s;
    s.n_sectors = 2;
    s.resources = {1, 1};
    const auto sol = exact_min_passes(s);
    EXPECT_EQ(sol.objective, -1);
    EXPECT_TRUE(sol.optimal);
    EXPECT_TRUE(sol.assignments.empty());
}

TEST(ExactMinPasses, TaskLongerThanEveryInViewSector) {
    Scenario s;
    s.n_sectors = 2;
    s.fov_half_width = 0;
    s.resources = {4, 4};
    s.tasks = {make_task(0, 0.0, 0.0, 5.0, 2)};
    try {
        exact_min_passes(s);
        FAIL() << "expected InfeasibleScenario";
    } catch (const InfeasibleScenario& e) {
        EXPECT_NE(std::string(e.what()).find("task 0"), std::string::npos);
    }
}

TEST(ExactMinPasses, RefusesOversizedInstances) {
    Scenario s;
    s.n_sectors = 2;
    s.resources = {100, 100};
    for (TaskId id = 0; id < 13; ++id) s.tasks.push_back(make_task(id, 0.1, 0.0, 1.0, 2));
    EXPECT_THROW(exact_min_passes(s), LimitsExceeded);

    Scenario wide;
    wide.n_sectors = 9;
    wide.resources.assign(9, 1.0);
    EXPECT_THROW(exact_min_passes(wide), LimitsExceeded);
}

TEST(ExactMinPasses, NeedsMoreRotationsThanAllowed) {
    Scenario s;
    s.n_sectors = 1;
    s.resources = {1.0};
    for (TaskId id = 0; id < 6; ++id) s.tasks.push_back(make_task(id, 0.1, 0.0, 1.0, 1));
    EXPECT_THROW(exact_min_passes(s), HorizonExceeded);
    SearchLimits more;
    more.max_rotations = 6;
    EXPECT_EQ(exact_min_passes(s, more).objective, 5);
}

TEST(ExactMinPasses, NodeBudgetFallsBackToConstructive) {
    // a single node cannot prove anything; the constructive schedule must
    // still satisfy every constraint
    Scenario s;
    s.n_sectors = 2;
    s.fov_half_width = 1;
    s.resources = {6, 6};
    const std::vector<double> d = {4, 4, 2, 2, 2, 1, 1};
    for (TaskId id = 0; id < d.size(); ++id) s.tasks.push_back(make_task(id, 0.1, 0.0, d[id], 2));
    SearchLimits tight;
    tight.node_budget = 1;
    const auto sol = exact_min_passes(s, tight);
    EXPECT_TRUE(check_exact_solution(s, sol).empty());
    const auto full = exact_min_passes(s);
    EXPECT_TRUE(full.optimal);
    EXPECT_LE(full.objective, sol.objective);
    EXPECT_EQ(full.objective, oracle::brute_force_min_pass(s, 5));
}

TEST(ExactMinPasses, MatchesBruteForceOnRandomInstances) {
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        const auto s = oracle::random_small_scenario(seed, 4, 5);
        const auto sol = exact_min_passes(s);
        EXPECT_TRUE(sol.optimal);
        EXPECT_TRUE(check_exact_solution(s, sol).empty()) << "seed " << seed;
        const auto brute = oracle::brute_force_min_pass(s, 5 * s.n_sectors - 1);
        ASSERT_TRUE(brute.has_value());
        EXPECT_EQ(sol.objective, *brute) << "seed " << seed;
    }
}

TEST(BinPacking, ClassicInstances) {
    const std::vector<double> caps = {5, 5};
    EXPECT_TRUE(bin_packing_feasible(std::vector<double>{4, 3, 2, 1}, caps));
    EXPECT_TRUE(oracle::brute_force_bin_packing({4, 3, 2, 1}, caps));
    EXPECT_FALSE(bin_packing_feasible(std::vector<double>{3, 3, 3}, caps));
    EXPECT_FALSE(oracle::brute_force_bin_packing({3, 3, 3}, caps));
    EXPECT_TRUE(bin_packing_feasible(std::vector<double>{1}, std::vector<double>{1}));
    EXPECT_FALSE(bin_packing_feasible(std::vector<double>{2}, std::vector<double>{1}));
}

TEST(BinPacking, ReductionShape) {
    const std::vector<double> items = {4, 3, 2, 1};
    const std::vector<double> caps = {5, 5, 7, 2};
    const auto s = bin_packing_reduce(items, caps);
    EXPECT_EQ(s.n_sectors, 4u);
    EXPECT_EQ(s.resources, caps);
    EXPECT_EQ(active_sectors(0, s.fov_half_width, s.n_sectors).size(), 4u);
    ASSERT_EQ(s.tasks.size(), 4u);
    for (const auto& t : s.tasks) EXPECT_EQ(t.home_sector, 0u);
    EXPECT_TRUE(validate_scenario(s).ok());
}

TEST(BinPacking, RejectsBadInput) {
    const std::vector<double> none;
    const std::vector<double> ok = {1};
    EXPECT_THROW(bin_packing_reduce(none, ok), InvalidInput);
    EXPECT_THROW(bin_packing_reduce(ok, none), InvalidInput);
    EXPECT_THROW(bin_packing_reduce(std::vector<double>{0}, ok), InvalidInput);
    EXPECT_THROW(bin_packing_reduce(ok, std::vector<double>{-1}), InvalidInput);
}
