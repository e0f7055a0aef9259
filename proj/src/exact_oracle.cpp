#include "sectorsched/exact_oracle.hpp"

#include "sectorsched/errors.hpp"
#include "sectorsched/load_optimum.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

namespace sectorsched {

namespace {

struct Item {
    const SurveillanceTask* task;
    std::vector<SectorIndex> sectors;  // in-view sectors with enough capacity, ascending
};

class PassSearch {
public:
    PassSearch(const Scenario& s, const std::vector<Item>& items, std::size_t horizon,
               std::uint64_t& nodes, std::uint64_t node_budget)
        : s_(s), items_(items), horizon_(horizon), nodes_(nodes), budget_(node_budget),
          residual_(horizon + 1), choice_(items.size(), 0) {
        for (std::size_t k = 0; k <= horizon; ++k) residual_[k] = s.resources[k % s.n_sectors];
        for (const auto& it : items) remaining_ += it.task->duration;
        for (double r : residual_) free_ += r;
    }

    enum class Outcome { feasible, infeasible, budget_exhausted };

    Outcome run() {
        const auto found = descend(0);
        if (aborted_) return Outcome::budget_exhausted;
        return found ? Outcome::feasible : Outcome::infeasible;
    }

    const std::vector<std::size_t>& choice() const { return choice_; }

private:
    bool same_kind(std::size_t a, std::size_t b) const {
        return items_[a].task->duration == items_[b].task->duration &&
               items_[a].sectors == items_[b].sectors;
    }

    bool descend(std::size_t idx) {
        if (idx == items_.size()) return true;
        if (++nodes_ > budget_) {
            aborted_ = true;
            return false;
        }
        if (remaining_ > free_ + kCapacitySlack * static_cast<double>(items_.size())) return false;

        const auto& item = items_[idx];
        const double d = item.task->duration;
        // interchangeable tasks take non-decreasing passes
        const std::size_t first_pass = (idx > 0 && same_kind(idx - 1, idx)) ? choice_[idx - 1] : 0;

        std::vector<SectorIndex> tried_empty;
        for (std::size_t rot = 0; rot * s_.n_sectors <= horizon_; ++rot) {
            for (SectorIndex j : item.sectors) {
                const std::size_t k = rot * s_.n_sectors + j;
                if (k > horizon_ || k < first_pass) continue;
                if (residual_[k] + kCapacitySlack < d) continue;
                // untouched passes of one sector are interchangeable
                if (residual_[k] == s_.resources[j]) {
                    if (std::find(tried_empty.begin(), tried_empty.end(), j) != tried_empty.end()) continue;
                    tried_empty.push_back(j);
                }

                residual_[k] -= d;
                free_ -= d;
                remaining_ -= d;
                choice_[idx] = k;
                if (descend(idx + 1)) return true;
                residual_[k] += d;
                free_ += d;
                remaining_ += d;
                if (aborted_) return false;
            }
        }
        return false;
    }

    const Scenario& s_;
    const std::vector<Item>& items_;
    std::size_t horizon_;
    std::uint64_t& nodes_;
    std::uint64_t budget_;
    std::vector<double> residual_;
    std::vector<std::size_t> choice_;
    double remaining_ = 0.0;
    double free_ = 0.0;
    bool aborted_ = false;
};

// First-fit decreasing into the earliest pass with room.
std::optional<std::vector<std::size_t>> constructive(const Scenario& s, const std::vector<Item>& items,
                                                     std::size_t horizon) {
    std::vector<double> residual(horizon + 1);
    for (std::size_t k = 0; k <= horizon; ++k) residual[k] = s.resources[k % s.n_sectors];
    std::vector<std::size_t> choice(items.size());
    for (std::size_t i = 0; i < items.size(); ++i) {
        const double d = items[i].task->duration;
        std::optional<std::size_t> best;
        for (std::size_t k = 0; k <= horizon && !best; ++k) {
            const SectorIndex j = k % s.n_sectors;
            if (std::binary_search(items[i].sectors.begin(), items[i].sectors.end(), j) &&
                residual[k] + kCapacitySlack >= d)
                best = k;
        }
        if (!best) return std::nullopt;
        residual[*best] -= d;
        choice[i] = *best;
    }
    return choice;
}

std::size_t lower_bound_pass(const Scenario& s, const std::vector<Item>& items, std::size_t horizon) {
    std::size_t lb = 0;
    for (const auto& it : items) lb = std::max(lb, it.sectors.front());

    // demand homed in each sector must fit into its in-view passes
    std::vector<double> demand(s.n_sectors, 0.0);
    for (const auto& it : items) demand[it.task->home_sector] += it.task->duration;
    for (SectorIndex h = 0; h < s.n_sectors; ++h) {
        if (demand[h] <= 0.0) continue;
        const auto view = active_sectors(h, s.fov_half_width, s.n_sectors);
        double cap = 0.0;
        std::size_t k = 0;
        for (; k <= horizon; ++k) {
            if (std::find(view.begin(), view.end(), k % s.n_sectors) != view.end())
                cap += s.resources[k % s.n_sectors];
            if (cap + kCapacitySlack >= demand[h]) break;
        }
        lb = std::max(lb, k);
    }

    // continuous bound on total demand
    const double total = s.total_duration();
    double cap = 0.0;
    std::size_t k = 0;
    for (; k <= horizon; ++k) {
        cap += s.resources[k % s.n_sectors];
        if (cap + kCapacitySlack >= total) break;
    }
    return std::max(lb, k);
}

ExactSolution to_solution(const Scenario& s, const std::vector<Item>& items,
                          const std::vector<std::size_t>& choice) {
    ExactSolution sol;
    for (std::size_t i = 0; i < items.size(); ++i) {
        const std::size_t k = choice[i];
        sol.assignments[items[i].task->id] = PassAssignment{k % s.n_sectors, k / s.n_sectors};
        sol.objective = std::max(sol.objective, static_cast<std::int64_t>(k));
    }
    return sol;
}

}  // namespace

ExactSolution exact_min_passes(const Scenario& s, const SearchLimits& limits) {
    require_valid(s);
    if (s.tasks.size() > limits.max_tasks)
        throw LimitsExceeded(std::to_string(s.tasks.size()) + " tasks exceed the limit of " +
                             std::to_string(limits.max_tasks));
    if (s.n_sectors > limits.max_sectors)
        throw LimitsExceeded(std::to_string(s.n_sectors) + " sectors exceed the limit of " +
                             std::to_string(limits.max_sectors));
    if (limits.max_rotations == 0 || limits.node_budget == 0)
        throw InvalidInput("search limits must be positive");

    ExactSolution sol;
    if (s.tasks.empty()) {
        sol.optimal = true;
        return sol;
    }

    std::vector<Item> items;
    items.reserve(s.tasks.size());
    for (const auto& t : s.tasks) {
        Item it{&t, {}};
        for (SectorIndex j : active_sectors(t.home_sector, s.fov_half_width, s.n_sectors))
            if (s.resources[j] + kCapacitySlack >= t.duration) it.sectors.push_back(j);
        if (it.sectors.empty())
            throw InfeasibleScenario("task " + std::to_string(t.id) +
                                     " is longer than every in-view sector's capacity");
        std::sort(it.sectors.begin(), it.sectors.end());
        items.push_back(std::move(it));
    }
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
        if (a.task->duration != b.task->duration) return a.task->duration > b.task->duration;
        if (a.sectors != b.sectors) return a.sectors < b.sectors;
        return a.task->id < b.task->id;
    });

    const std::size_t horizon = limits.max_rotations * s.n_sectors - 1;
    const auto upper = constructive(s, items, horizon);
    std::size_t upper_pass = horizon + 1;
    if (upper) upper_pass = *std::max_element(upper->begin(), upper->end());

    const std::size_t lb = lower_bound_pass(s, items, horizon);
    std::uint64_t nodes = 0;
    for (std::size_t k = lb; k < upper_pass && k <= horizon; ++k) {
        PassSearch search(s, items, k, nodes, limits.node_budget);
        const auto outcome = search.run();
        if (outcome == PassSearch::Outcome::feasible) {
            sol = to_solution(s, items, search.choice());
            sol.optimal = true;
            sol.nodes = nodes;
            return sol;
        }
        if (outcome == PassSearch::Outcome::budget_exhausted) {
            if (!upper)
                throw LimitsExceeded("node budget exhausted before any schedule was found");
            sol = to_solution(s, items, *upper);
            sol.optimal = false;
            sol.nodes = nodes;
            return sol;
        }
    }
    if (!upper)
        throw HorizonExceeded("no schedule completes within " + std::to_string(limits.max_rotations) +
                             " rotations");
    sol = to_solution(s, items, *upper);
    sol.optimal = true;
    sol.nodes = nodes;
    return sol;
}

Scenario bin_packing_reduce(std::span<const double> item_sizes, std::span<const double> bin_capacities) {
    if (item_sizes.empty() || bin_capacities.empty())
        throw InvalidInput("bin packing needs at least one item and one bin");
    Scenario s;
    s.n_sectors = bin_capacities.size();
    s.fov_half_width = s.n_sectors / 2;
    s.dt = 1.0;
    for (double c : bin_capacities) {
        if (!(c > 0.0)) throw InvalidInput("bin capacities must be positive");
        s.resources.push_back(c);
    }
    TaskId id = 0;
    for (double size : item_sizes) {
        if (!(size > 0.0)) throw InvalidInput("item sizes must be positive");
        s.tasks.push_back(make_task(id++, 0.0, 0.0, size, s.n_sectors));
    }
    return s;
}

bool bin_packing_feasible(std::span<const double> item_sizes, std::span<const double> bin_capacities,
                          const SearchLimits& limits) {
    const auto s = bin_packing_reduce(item_sizes, bin_capacities);
    auto one_rotation = limits;
    one_rotation.max_rotations = 1;
    if (s.tasks.size() > limits.max_tasks || s.n_sectors > limits.max_sectors)
        throw LimitsExceeded("bin packing instance exceeds search limits");
    try {
        const auto sol = exact_min_passes(s, one_rotation);
        if (!sol.optimal) throw LimitsExceeded("node budget exhausted deciding bin packing feasibility");
        return sol.objective < static_cast<std::int64_t>(s.n_sectors);
    } catch (const InfeasibleScenario&) {
        return false;
    } catch (const HorizonExceeded&) {
        return false;
    }
}

}  // namespace sectorsched
