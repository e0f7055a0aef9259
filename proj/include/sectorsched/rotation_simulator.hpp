#pragma once

#include "sectorsched/core_model.hpp"
#include "sectorsched/exact_oracle.hpp"
#include "sectorsched/load_optimum.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace sectorsched {

struct ExecutionRecord {
    TaskId task_id = 0;
    SectorIndex sector = 0;   ///< main sector at execution, == pass mod N
    std::size_t pass = 0;
    std::size_t rotation = 0; ///< pass div N
    double start_offset = 0.0;
    double duration = 0.0;
    double timestamp = 0.0;   ///< pass * dt + start_offset
    std::size_t cycle = 0;    ///< how many times the task ran before this

    friend bool operator==(const ExecutionRecord&, const ExecutionRecord&) = default;
};

struct SimulationTrace {
    std::vector<ExecutionRecord> records;
    std::map<TaskId, std::vector<double>> illumination;
    /// Pass by which every task has run once; -1 for an empty task set.
    std::int64_t completion_pass = -1;
    /// Same, for every completed update cycle.
    std::vector<std::int64_t> cycle_completion_passes;
    std::size_t cycles = 0;
    std::vector<std::string> warnings;
};

enum class SimPolicy {
    /// Each sector runs its own bin, least recently illuminated first.
    partition_driven,
    /// Any in-view task not yet run this cycle, oldest illumination first.
    edf,
    /// partition_driven over broadside_baseline(s).
    broadside,
};

std::string_view to_string(SimPolicy p);

/// Sweeps passes 0, 1, 2, ... until every task has run `cycles` times.
///
/// Partition-driven sectors work through their bin one update cycle at a
/// time: a pass executes pending tasks in least-recently-illuminated order
/// and stops at the first one that would push the pass over R_j. A sector
/// starts its next cycle on the pass after it finishes the current one, so
/// each task's revisit interval is the number of passes its sector needs to
/// pack the bin. EDF keeps a global cycle and packs first-fit in deadline
/// order. A task longer than R_j runs alone in a pass with a warning rather
/// than stalling.
///
/// `partition` is required for partition_driven and must be null otherwise.
SimulationTrace simulate(const Scenario& s, SimPolicy policy, const SchedulePartition* partition,
                         std::size_t cycles);

/// Executes an exact solution's pass assignment, repeating it every
/// (objective div N + 1) rotations.
SimulationTrace replay_assignment(const Scenario& s, const ExactSolution& solution, std::size_t cycles);

/// Sector each task ran in during the first cycle, as a partition.
SchedulePartition realized_partition(const Scenario& s, const SimulationTrace& trace);

struct RevisitInterval {
    TaskId task_id = 0;
    SectorIndex home_sector = 0;
    SectorIndex exec_sector = 0;  ///< sector of the later illumination
    double interval_s = 0.0;
    double interval_rot = 0.0;
};

struct RevisitStats {
    std::vector<RevisitInterval> intervals;
    double max_rotations = 0.0;
    double mean_rotations = 0.0;
    double max_seconds = 0.0;
    std::vector<double> per_sector_max_rotations;  ///< indexed by home sector
};

/// Throws InsufficientData unless every task was illuminated at least twice.
RevisitStats revisit_stats(const SimulationTrace& trace, const Scenario& s);

}  // namespace sectorsched
