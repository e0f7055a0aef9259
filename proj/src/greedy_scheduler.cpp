#include "sectorsched/greedy_scheduler.hpp"

#include "sectorsched/errors.hpp"

#include <algorithm>
#include <cmath>

namespace sectorsched {

namespace {

double order_key(TaskOrder order, const SurveillanceTask& t) {
    switch (order) {
        case TaskOrder::descending_duration: return -t.duration;
        case TaskOrder::ascending_duration: return t.duration;
        case TaskOrder::ascending_id: return 0.0;
    }
    return 0.0;
}

bool fits(double used, double duration, double budget) {
    return used + duration <= budget + kCapacitySlack;
}

// Appends the first-fit selection from an already ordered candidate list.
double first_fit(std::span<const SurveillanceTask* const> ordered, double budget, double used,
                 std::vector<const SurveillanceTask*>& selected) {
    for (const auto* t : ordered) {
        if (fits(used, t->duration, budget)) {
            used += t->duration;
            selected.push_back(t);
        }
    }
    return used;
}

}  // namespace

bool task_before(TaskOrder order, const SurveillanceTask& a, const SurveillanceTask& b) {
    const double ka = order_key(order, a);
    const double kb = order_key(order, b);
    if (ka != kb) return ka < kb;
    return a.id < b.id;
}

std::vector<TaskId> maximal_subset(std::span<const SurveillanceTask> candidates, double budget,
                                   double already_used, const GreedyPolicy& policy) {
    std::vector<const SurveillanceTask*> ordered;
    ordered.reserve(candidates.size());
    for (const auto& c : candidates) ordered.push_back(&c);
    std::sort(ordered.begin(), ordered.end(), [&](const auto* a, const auto* b) {
        return task_before(policy.ordering, *a, *b);
    });
    std::vector<const SurveillanceTask*> selected;
    first_fit(ordered, budget, already_used, selected);
    std::vector<TaskId> ids;
    ids.reserve(selected.size());
    for (const auto* t : selected) ids.push_back(t->id);
    return ids;
}

SchedulePartition equalize(const Scenario& s, const GreedyPolicy& policy) {
    require_valid(s);
    const std::size_t big_n = s.n_sectors;
    const auto targets = sector_targets(s);

    SchedulePartition out;
    out.bins.resize(big_n);
    std::vector<double> load(big_n, 0.0);

    std::vector<std::vector<const SurveillanceTask*>> by_home(big_n);
    for (const auto& t : s.tasks) by_home[t.home_sector].push_back(&t);
    std::vector<bool> assigned(s.tasks.size(), false);
    auto index_of = [&](const SurveillanceTask* t) {
        return static_cast<std::size_t>(t - s.tasks.data());
    };
    auto place = [&](const SurveillanceTask* t, SectorIndex i, Phase phase) {
        assigned[index_of(t)] = true;
        out.bins[i].push_back(t->id);
        out.phase[t->id] = phase;
        load[i] += t->duration;
    };

    for (SectorIndex i = 0; i < big_n; ++i) {
        const double budget = targets.targets[i];
        std::vector<const SurveillanceTask*> selected;

        std::vector<const SurveillanceTask*> own;
        for (const auto* t : by_home[i])
            if (!assigned[index_of(t)]) own.push_back(t);
        std::sort(own.begin(), own.end(), [&](const auto* a, const auto* b) {
            return task_before(policy.ordering, *a, *b);
        });
        first_fit(own, budget, load[i], selected);
        for (const auto* t : selected) place(t, i, Phase::own_sector);

        selected.clear();
        std::vector<const SurveillanceTask*> in_view;
        for (SectorIndex j : active_sectors(i, s.fov_half_width, big_n))
            for (const auto* t : by_home[j])
                if (!assigned[index_of(t)]) in_view.push_back(t);
        std::sort(in_view.begin(), in_view.end(), [&](const auto* a, const auto* b) {
            const double ka = order_key(policy.ordering, *a);
            const double kb = order_key(policy.ordering, *b);
            if (ka != kb) return ka < kb;
            const auto da = angular_sector_distance(i, a->home_sector, big_n);
            const auto db = angular_sector_distance(i, b->home_sector, big_n);
            if (da != db) return da < db;
            return a->id < b->id;
        });
        first_fit(in_view, budget, load[i], selected);
        for (const auto* t : selected) place(t, i, Phase::fov_equalized);
    }

    std::vector<const SurveillanceTask*> leftovers;
    for (const auto& t : s.tasks)
        if (!assigned[index_of(&t)]) leftovers.push_back(&t);
    std::sort(leftovers.begin(), leftovers.end(), [&](const auto* a, const auto* b) {
        return task_before(policy.leftover_ordering, *a, *b);
    });

    for (const auto* t : leftovers) {
        std::optional<SectorIndex> best;
        double best_ratio = 0.0;
        for (SectorIndex j : active_sectors(t->home_sector, s.fov_half_width, big_n)) {
            if (!(targets.targets[j] > 0.0)) continue;
            const double ratio = (t->duration + load[j]) / targets.targets[j];
            if (!best) {
                best = j;
                best_ratio = ratio;
                continue;
            }
            const double tol = 1e-12 * std::max(1.0, std::abs(best_ratio));
            if (ratio < best_ratio - tol) {
                best = j;
                best_ratio = ratio;
            } else if (ratio <= best_ratio + tol) {
                bool prefer = false;
                if (policy.tie_break == SectorTieBreak::nearest_home_then_lowest_index) {
                    const auto dj = angular_sector_distance(j, t->home_sector, big_n);
                    const auto db = angular_sector_distance(*best, t->home_sector, big_n);
                    prefer = dj < db || (dj == db && j < *best);
                } else {
                    prefer = j < *best;
                }
                if (prefer) {
                    best = j;
                    best_ratio = std::min(ratio, best_ratio);
                }
            }
        }
        if (!best)
            throw InfeasibleScenario("task " + std::to_string(t->id) +
                                     " has no sector with positive resources in its field of view");
        place(t, *best, Phase::leftover);
    }
    return out;
}

}  // namespace sectorsched
