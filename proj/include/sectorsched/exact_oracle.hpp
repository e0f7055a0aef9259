#pragma once

#include "sectorsched/core_model.hpp"

#include <cstdint>
#include <map>
#include <span>

namespace sectorsched {

/// Pass k of the sweep visits sector k mod N during rotation k div N.
struct PassAssignment {
    SectorIndex sector = 0;
    std::size_t rotation = 0;

    std::size_t pass(std::size_t n_sectors) const { return rotation * n_sectors + sector; }

    friend bool operator==(const PassAssignment&, const PassAssignment&) = default;
};

struct ExactSolution {
    std::map<TaskId, PassAssignment> assignments;
    /// Last pass index used; -1 when there is nothing to schedule.
    std::int64_t objective = -1;
    bool optimal = false;
    std::uint64_t nodes = 0;
};

struct SearchLimits {
    std::size_t max_tasks = 12;
    std::size_t max_sectors = 8;
    std::size_t max_rotations = 5;
    std::uint64_t node_budget = 10'000'000;
};

/// Branch and bound for the smallest pass index by which every task has run
/// once, subject to the field of view and a per-pass capacity of R_sector.
///
/// Throws LimitsExceeded if the instance is larger than `limits` or needs
/// more than limits.max_rotations, InfeasibleScenario if some task is
/// longer than every in-view sector's capacity. When the node budget runs
/// out the best constructive schedule is returned with optimal = false.
ExactSolution exact_min_passes(const Scenario& s, const SearchLimits& limits = {});

/// Bin packing as a scheduling instance: one sector per bin with R_i equal
/// to its capacity, every item homed in sector 0, and a field of view
/// spanning all sectors. Feasible packings are schedules finishing within
/// the first rotation.
Scenario bin_packing_reduce(std::span<const double> item_sizes, std::span<const double> bin_capacities);

/// Whether the items pack into the bins, decided by exact_min_passes on the
/// reduced instance restricted to one rotation.
bool bin_packing_feasible(std::span<const double> item_sizes, std::span<const double> bin_capacities,
                          const SearchLimits& limits = {});

}  // namespace sectorsched
