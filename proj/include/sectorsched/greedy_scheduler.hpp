#pragma once

#include "sectorsched/core_model.hpp"
#include "sectorsched/load_optimum.hpp"

#include <span>
#include <vector>

namespace sectorsched {

/// Candidate ordering for the greedy fills. Ascending task id always breaks
/// remaining ties, so every rule is a total order.
enum class TaskOrder { descending_duration, ascending_duration, ascending_id };

/// How the leftover step picks among sectors with equal relative violation.
enum class SectorTieBreak { nearest_home_then_lowest_index, lowest_index };

struct GreedyPolicy {
    TaskOrder ordering = TaskOrder::descending_duration;
    TaskOrder leftover_ordering = TaskOrder::descending_duration;
    SectorTieBreak tie_break = SectorTieBreak::nearest_home_then_lowest_index;
};

/// Strict weak order over tasks implementing `order` (id as final key).
bool task_before(TaskOrder order, const SurveillanceTask& a, const SurveillanceTask& b);

/// First-fit selection over `candidates` sorted by policy.ordering. The
/// result P satisfies already_used + sum(P) <= budget and no candidate
/// outside P fits on top of it. Ids are returned in selection order.
std::vector<TaskId> maximal_subset(std::span<const SurveillanceTask> candidates, double budget,
                                   double already_used, const GreedyPolicy& policy = {});

/// Load-equalizing assignment of tasks to sectors.
///
/// Sectors are visited in index order. Each first takes a maximal subset of
/// its own unassigned tasks against its target r_opt * R_i, then extends
/// that set with unassigned tasks from every sector in its field of view
/// under the same target. Tasks still unassigned afterwards go, one at a
/// time, to the in-view sector whose relative load (load + d) / target
/// would be smallest. Zero-target sectors never receive tasks.
///
/// Throws ValidationError for malformed scenarios and InfeasibleScenario
/// when a leftover task has no positive-target sector in view.
SchedulePartition equalize(const Scenario& s, const GreedyPolicy& policy = {});

}  // namespace sectorsched
