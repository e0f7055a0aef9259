#pragma once

#include "sectorsched/core_model.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace sectorsched {

/// Absolute slack applied to every "fits in budget" comparison.
inline constexpr double kCapacitySlack = 1e-9;

/// Continuous optimum: r_opt = total demand / total per-rotation resources,
/// and each sector's fair share r_opt * R_i.
struct SectorTargets {
    double r_opt = 0.0;
    std::vector<double> targets;
};

/// Throws InfeasibleScenario when tasks exist but every R_i is zero.
SectorTargets sector_targets(const Scenario& s);

/// Which step of the equalizer placed a task.
enum class Phase { own_sector, fov_equalized, leftover };

std::string_view to_string(Phase p);
Phase phase_from_string(std::string_view s);

/// B_i: the tasks executed while sector i is broadside.
struct SchedulePartition {
    std::vector<std::vector<TaskId>> bins;
    std::map<TaskId, Phase> phase;

    friend bool operator==(const SchedulePartition&, const SchedulePartition&) = default;
};

/// Structural problems with a partition relative to a scenario: wrong bin
/// count, unknown/duplicate/missing ids, tasks placed outside their FOV.
std::vector<std::string> validate_partition(const Scenario& s, const SchedulePartition& p);

struct SectorLoad {
    double absolute_load = 0.0;
    double target = 0.0;
    double relative_load = 0.0;  ///< +inf when load > 0 on a zero-target sector
    bool infinite = false;
};

struct LoadReport {
    std::vector<SectorLoad> sectors;
    double max_relative_load = 0.0;
    /// max_i load_i / R_i; a lower bound on rotations needed for one update.
    double rotations_to_complete_bound = 0.0;
};

/// Throws InvalidInput if the partition names task ids absent from s.
LoadReport load_report(const Scenario& s, const SchedulePartition& p);

/// Recomputes the summary fields from per-sector rows.
void summarize(LoadReport& report, const std::vector<double>& resources);

/// Every task executed in its home sector.
SchedulePartition broadside_baseline(const Scenario& s);

}  // namespace sectorsched
