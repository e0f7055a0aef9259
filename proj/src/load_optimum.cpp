#include "sectorsched/load_optimum.hpp"

#include "sectorsched/errors.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

namespace sectorsched {

SectorTargets sector_targets(const Scenario& s) {
    const double demand = s.total_duration();
    const double supply = s.total_resources();
    SectorTargets out;
    out.targets.assign(s.resources.size(), 0.0);
    if (s.tasks.empty()) return out;
    if (!(supply > 0.0))
        throw InfeasibleScenario("all sector resources are zero but " +
                                 std::to_string(s.tasks.size()) + " tasks need scheduling");
    out.r_opt = demand / supply;
    for (std::size_t i = 0; i < s.resources.size(); ++i) out.targets[i] = out.r_opt * s.resources[i];
    return out;
}

std::string_view to_string(Phase p) {
    switch (p) {
        case Phase::own_sector: return "own-sector";
        case Phase::fov_equalized: return "fov-equalized";
        case Phase::leftover: return "leftover";
    }
    return "unknown";
}

Phase phase_from_string(std::string_view s) {
    if (s == "own-sector") return Phase::own_sector;
    if (s == "fov-equalized") return Phase::fov_equalized;
    if (s == "leftover") return Phase::leftover;
    throw InvalidInput("unknown phase tag '" + std::string(s) + "'");
}

std::vector<std::string> validate_partition(const Scenario& s, const SchedulePartition& p) {
    std::vector<std::string> out;
    if (p.bins.size() != s.n_sectors) {
        out.push_back("partition has " + std::to_string(p.bins.size()) + " bins for " +
                      std::to_string(s.n_sectors) + " sectors");
        return out;
    }
    std::unordered_map<TaskId, const SurveillanceTask*> by_id;
    for (const auto& t : s.tasks) by_id.emplace(t.id, &t);
    std::unordered_map<TaskId, std::size_t> count;
    for (std::size_t i = 0; i < p.bins.size(); ++i) {
        for (TaskId id : p.bins[i]) {
            auto it = by_id.find(id);
            if (it == by_id.end()) {
                out.push_back("bin " + std::to_string(i) + " names unknown task " + std::to_string(id));
                continue;
            }
            if (++count[id] == 2) out.push_back("task " + std::to_string(id) + " assigned more than once");
            if (!within_fov(it->second->home_sector, i, s.fov_half_width, s.n_sectors))
                out.push_back("task " + std::to_string(id) + " placed in sector " + std::to_string(i) +
                              " outside the field of view of home sector " +
                              std::to_string(it->second->home_sector));
        }
    }
    for (const auto& t : s.tasks)
        if (!count.contains(t.id)) out.push_back("task " + std::to_string(t.id) + " not assigned");
    return out;
}

void summarize(LoadReport& report, const std::vector<double>& resources) {
    report.max_relative_load = 0.0;
    report.rotations_to_complete_bound = 0.0;
    constexpr double inf = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < report.sectors.size(); ++i) {
        const auto& row = report.sectors[i];
        report.max_relative_load = std::max(report.max_relative_load, row.relative_load);
        double rotations = 0.0;
        if (row.absolute_load > 0.0)
            rotations = (i < resources.size() && resources[i] > 0.0) ? row.absolute_load / resources[i] : inf;
        report.rotations_to_complete_bound = std::max(report.rotations_to_complete_bound, rotations);
    }
}

LoadReport load_report(const Scenario& s, const SchedulePartition& p) {
    if (p.bins.size() != s.n_sectors)
        throw InvalidInput("partition bin count does not match sector count");
    std::unordered_map<TaskId, double> duration;
    for (const auto& t : s.tasks) duration.emplace(t.id, t.duration);

    const auto targets = sector_targets(s);
    LoadReport report;
    report.sectors.resize(s.n_sectors);
    for (std::size_t i = 0; i < s.n_sectors; ++i) {
        auto& row = report.sectors[i];
        for (TaskId id : p.bins[i]) {
            auto it = duration.find(id);
            if (it == duration.end())
                throw InvalidInput("partition references unknown task id " + std::to_string(id));
            row.absolute_load += it->second;
        }
        row.target = targets.targets[i];
        if (row.target > 0.0) {
            row.relative_load = row.absolute_load / row.target;
        } else if (row.absolute_load > 0.0) {
            row.relative_load = std::numeric_limits<double>::infinity();
            row.infinite = true;
        }
    }
    summarize(report, s.resources);
    return report;
}

SchedulePartition broadside_baseline(const Scenario& s) {
    SchedulePartition p;
    p.bins.resize(s.n_sectors);
    for (const auto& t : s.tasks) {
        p.bins.at(t.home_sector).push_back(t.id);
        p.phase[t.id] = Phase::own_sector;
    }
    return p;
}

}  // namespace sectorsched
