#include "sectorsched/constraint_check.hpp"
#include "sectorsched/errors.hpp"
#include "sectorsched/exact_oracle.hpp"
#include "sectorsched/greedy_scheduler.hpp"
#include "sectorsched/rotation_simulator.hpp"
#include "sectorsched/scenario_io.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>

using namespace sectorsched;

namespace {

Scenario three_sector_example() {
    Scenario s;
    s.n_sectors = 3;
    s.fov_half_width = 1;
    s.dt = 1.0;
    s.resources = {2, 2, 2};
    s.tasks = {make_task(0, 0.3, 0.0, 2.0, 3), make_task(1, 1.5, 0.0, 2.0, 3), make_task(2, 3.0, 0.0, 2.0, 3)};
    return s;
}

std::vector<double> intervals_of(const RevisitStats& stats, TaskId id) {
    std::vector<double> out;
    for (const auto& iv : stats.intervals)
        if (iv.task_id == id) out.push_back(iv.interval_rot);
    return out;
}

}  // namespace

TEST(Simulate, EqualizedThreeSectorExample) {
    const auto s = three_sector_example();
    const auto p = equalize(s);
    const auto trace = simulate(s, SimPolicy::partition_driven, &p, 3);
    EXPECT_EQ(trace.completion_pass, 2);
    EXPECT_EQ(trace.cycle_completion_passes, (std::vector<std::int64_t>{2, 5, 8}));
    EXPECT_EQ(trace.records.size(), 9u);
    EXPECT_TRUE(check_trace(s, trace, 3).empty());

    const auto stats = revisit_stats(trace, s);
    for (const auto& iv : stats.intervals) {
        EXPECT_DOUBLE_EQ(iv.interval_s, 3.0);
        EXPECT_DOUBLE_EQ(iv.interval_rot, 1.0);
    }
    EXPECT_DOUBLE_EQ(stats.max_rotations, 1.0);
}

TEST(Simulate, BroadsideThreeSectorExample) {
    const auto s = three_sector_example();
    const auto trace = simulate(s, SimPolicy::broadside, nullptr, 3);
    // sector 0 needs two passes for its pair: passes 0 and 3
    EXPECT_EQ(trace.completion_pass, 3);
    EXPECT_LT(trace.completion_pass, 2 * 3);
    EXPECT_TRUE(check_trace(s, trace, 3).empty());

    const auto stats = revisit_stats(trace, s);
    EXPECT_DOUBLE_EQ(stats.max_rotations, 2.0);
    EXPECT_EQ(intervals_of(stats, 0), (std::vector<double>{2.0, 2.0}));
    EXPECT_EQ(intervals_of(stats, 2), (std::vector<double>{1.0, 1.0}));
    EXPECT_DOUBLE_EQ(stats.per_sector_max_rotations[0], 2.0);
    EXPECT_DOUBLE_EQ(stats.per_sector_max_rotations[1], 1.0);
}

TEST(Simulate, EdfThreeSectorExample) {
    const auto s = three_sector_example();
    const auto trace = simulate(s, SimPolicy::edf, nullptr, 3);
    EXPECT_EQ(trace.completion_pass, 2);
    ASSERT_GE(trace.records.size(), 3u);
    EXPECT_EQ(trace.records[0].task_id, 0u);
    EXPECT_EQ(trace.records[1].task_id, 1u);
    EXPECT_EQ(trace.records[1].sector, 1u);
    EXPECT_EQ(trace.records[2].task_id, 2u);
    EXPECT_TRUE(check_trace(s, trace, 3).empty());
    EXPECT_DOUBLE_EQ(revisit_stats(trace, s).max_rotations, 1.0);
    EXPECT_TRUE(validate_partition(s, realized_partition(s, trace)).empty());
}

TEST(Simulate, EmptyTaskSet) {
    Scenario s;
    s.n_sectors = 3;
    s.resources = {1, 1, 1};
    for (auto policy : {SimPolicy::broadside, SimPolicy::edf}) {
        const auto trace = simulate(s, policy, nullptr, 2);
        EXPECT_TRUE(trace.records.empty());
        EXPECT_EQ(trace.completion_pass, -1);
    }
    const auto p = equalize(s);
    EXPECT_EQ(simulate(s, SimPolicy::partition_driven, &p, 2).completion_pass, -1);
}

TEST(Simulate, SingleTaskSingleSector) {
    Scenario s;
    s.n_sectors = 1;
    s.dt = 0.25;
    s.resources = {0.2};
    s.tasks = {make_task(0, 1.0, 0.0, 0.1, 1)};
    const auto trace = simulate(s, SimPolicy::broadside, nullptr, 4);
    const auto stats = revisit_stats(trace, s);
    ASSERT_EQ(stats.intervals.size(), 3u);
    for (const auto& iv : stats.intervals) EXPECT_DOUBLE_EQ(iv.interval_s, 0.25);
}

TEST(Simulate, ArgumentErrors) {
    const auto s = three_sector_example();
    const auto p = equalize(s);
    EXPECT_THROW(simulate(s, SimPolicy::partition_driven, nullptr, 2), InvalidInput);
    EXPECT_THROW(simulate(s, SimPolicy::edf, &p, 2), InvalidInput);
    EXPECT_THROW(simulate(s, SimPolicy::broadside, &p, 2), InvalidInput);
    EXPECT_THROW(simulate(s, SimPolicy::partition_driven, &p, 0), InvalidInput);
    auto wrong = p;
    wrong.bins[0].push_back(99);
    EXPECT_THROW(simulate(s, SimPolicy::partition_driven, &wrong, 2), InvalidInput);
}

TEST(Simulate, OversizeTaskRunsAloneWithWarning) {
    Scenario s;
    s.n_sectors = 2;
    s.fov_half_width = 0;
    s.dt = 5.0;
    s.resources = {1.0, 1.0};
    s.tasks = {make_task(0, 0.1, 0.0, 2.0, 2), make_task(1, 0.2, 0.0, 0.5, 2)};
    const auto trace = simulate(s, SimPolicy::broadside, nullptr, 2);
    EXPECT_EQ(trace.records.size(), 4u);
    EXPECT_FALSE(trace.warnings.empty());
    // the independent checker still reports the overrun
    EXPECT_FALSE(check_trace(s, trace, 2).empty());
    const auto edf = simulate(s, SimPolicy::edf, nullptr, 2);
    EXPECT_EQ(edf.records.size(), 4u);
    EXPECT_FALSE(edf.warnings.empty());
}

TEST(Simulate, WarnsWhenResourceExceedsPassDuration) {
    auto s = three_sector_example();
    s.dt = 1.5;
    const auto trace = simulate(s, SimPolicy::broadside, nullptr, 1);
    EXPECT_EQ(trace.warnings.size(), 3u);
}

TEST(RevisitStats, NeedsTwoCycles) {
    const auto s = three_sector_example();
    const auto trace = simulate(s, SimPolicy::broadside, nullptr, 1);
    EXPECT_THROW(revisit_stats(trace, s), InsufficientData);
}

TEST(Simulate, DeterministicTraces) {
    GenParams gp;
    gp.seed = 17;
    gp.n_sectors = 12;
    const auto s = generate(gp);
    const auto p = equalize(s);
    for (auto policy : {SimPolicy::partition_driven, SimPolicy::broadside, SimPolicy::edf}) {
        const auto* part = policy == SimPolicy::partition_driven ? &p : nullptr;
        EXPECT_EQ(trace_to_csv(simulate(s, policy, part, 3)), trace_to_csv(simulate(s, policy, part, 3)));
    }
}

TEST(Simulate, TracesSatisfyConstraints) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        GenParams gp;
        gp.seed = seed;
        gp.n_sectors = 1 + seed % 16;
        gp.fov_half_width = seed % 4;
        gp.tasks_min = 0;
        gp.tasks_max = 8;
        const auto s = generate(gp);
        const auto p = equalize(s);
        for (auto policy : {SimPolicy::partition_driven, SimPolicy::broadside, SimPolicy::edf}) {
            const auto trace = simulate(s, policy, policy == SimPolicy::partition_driven ? &p : nullptr, 3);
            const auto problems = check_trace(s, trace, 3);
            EXPECT_TRUE(problems.empty()) << "seed " << seed << " " << to_string(policy) << ": "
                                          << (problems.empty() ? "" : problems.front());
        }
    }
}

TEST(Simulate, PartitionRevisitEqualsPerSectorPacking) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        GenParams gp;
        gp.seed = seed;
        gp.n_sectors = 2 + seed % 20;
        gp.fov_half_width = seed % 3;
        const auto s = generate(gp);
        const auto p = equalize(s);
        const auto trace = simulate(s, SimPolicy::partition_driven, &p, 4);
        const auto stats = revisit_stats(trace, s);
        std::map<TaskId, double> dur;
        for (const auto& t : s.tasks) dur[t.id] = t.duration;
        std::size_t worst = 0;
        for (std::size_t j = 0; j < s.n_sectors; ++j) {
            auto ids = p.bins[j];
            std::sort(ids.begin(), ids.end());
            std::vector<double> d;
            for (TaskId id : ids) d.push_back(dur[id]);
            worst = std::max(worst, oracle::next_fit_passes(d, s.resources[j]));
        }
        EXPECT_DOUBLE_EQ(stats.max_rotations, static_cast<double>(worst)) << "seed " << seed;
    }
}

TEST(ReplayAssignment, CompletionMatchesOracleObjective) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const auto s = oracle::random_small_scenario(seed, 5, 8);
        SearchLimits limits;
        limits.max_rotations = 12;
        const auto sol = exact_min_passes(s, limits);
        const auto trace = replay_assignment(s, sol, 2);
        EXPECT_EQ(trace.completion_pass, sol.objective) << "seed " << seed;
        EXPECT_TRUE(check_trace(s, trace, 2).empty()) << "seed " << seed;
    }
}
