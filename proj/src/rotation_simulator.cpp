#include "sectorsched/rotation_simulator.hpp"

#include "sectorsched/errors.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <unordered_map>

namespace sectorsched {

std::string_view to_string(SimPolicy p) {
    switch (p) {
        case SimPolicy::partition_driven: return "greedy";
        case SimPolicy::edf: return "edf";
        case SimPolicy::broadside: return "broadside";
    }
    return "unknown";
}

namespace {

struct TaskState {
    const SurveillanceTask* task = nullptr;
    std::size_t executed = 0;
    std::optional<double> last_illumination;
};

bool older(const TaskState* a, const TaskState* b) {
    if (a->last_illumination != b->last_illumination) {
        if (!a->last_illumination) return true;
        if (!b->last_illumination) return false;
        return *a->last_illumination < *b->last_illumination;
    }
    return a->task->id < b->task->id;
}

class Sweep {
public:
    Sweep(const Scenario& s, std::size_t cycles) : s_(s), cycles_(cycles) {
        states_.reserve(s.tasks.size());
        for (const auto& t : s.tasks) {
            states_.push_back(TaskState{&t, 0, std::nullopt});
            index_[t.id] = states_.size() - 1;
        }
        trace_.cycles = cycles;
        for (SectorIndex j = 0; j < s.n_sectors; ++j)
            if (s.resources[j] > s.dt)
                trace_.warnings.push_back("sector " + std::to_string(j) +
                                          " resource exceeds the pass duration dt");
        // passes needed are bounded by one task per pass in the worst case
        pass_limit_ = s.n_sectors * (cycles * (s.tasks.size() + 1) + 2);
    }

    TaskState& state(TaskId id) { return states_[index_.at(id)]; }
    std::vector<TaskState>& states() { return states_; }

    void execute(TaskState& st, std::size_t pass, double offset) {
        ExecutionRecord rec;
        rec.task_id = st.task->id;
        rec.sector = pass % s_.n_sectors;
        rec.pass = pass;
        rec.rotation = pass / s_.n_sectors;
        rec.start_offset = offset;
        rec.duration = st.task->duration;
        rec.timestamp = static_cast<double>(pass) * s_.dt + offset;
        rec.cycle = st.executed;
        trace_.records.push_back(rec);
        trace_.illumination[rec.task_id].push_back(rec.timestamp);
        st.last_illumination = rec.timestamp;
        ++st.executed;
    }

    void warn_oversize(const TaskState& st, std::size_t pass) {
        trace_.warnings.push_back("task " + std::to_string(st.task->id) + " exceeds the capacity of sector " +
                                  std::to_string(pass % s_.n_sectors) + " and ran alone in pass " +
                                  std::to_string(pass));
    }

    // Records passes at which update cycles complete.
    void note_progress(std::size_t pass) {
        while (trace_.cycle_completion_passes.size() < cycles_) {
            const std::size_t c = trace_.cycle_completion_passes.size();
            const bool done = std::all_of(states_.begin(), states_.end(),
                                          [&](const TaskState& st) { return st.executed > c; });
            if (!done) break;
            trace_.cycle_completion_passes.push_back(static_cast<std::int64_t>(pass));
        }
    }

    bool finished() const { return trace_.cycle_completion_passes.size() == cycles_; }
    std::size_t completed_cycles() const { return trace_.cycle_completion_passes.size(); }

    void check_limit(std::size_t pass) const {
        if (pass > pass_limit_) throw std::logic_error("simulation failed to make progress");
    }

    SimulationTrace finish() {
        if (!trace_.cycle_completion_passes.empty())
            trace_.completion_pass = trace_.cycle_completion_passes.front();
        std::stable_sort(trace_.records.begin(), trace_.records.end(),
                         [](const auto& a, const auto& b) { return a.timestamp < b.timestamp; });
        return std::move(trace_);
    }

private:
    const Scenario& s_;
    std::size_t cycles_;
    std::vector<TaskState> states_;
    std::unordered_map<TaskId, std::size_t> index_;
    SimulationTrace trace_;
    std::size_t pass_limit_ = 0;
};

SimulationTrace run_partition(const Scenario& s, const SchedulePartition& p, std::size_t cycles) {
    Sweep sweep(s, cycles);
    const std::size_t big_n = s.n_sectors;
    std::vector<std::vector<TaskState*>> bins(big_n);
    for (SectorIndex j = 0; j < big_n; ++j)
        for (TaskId id : p.bins[j]) bins[j].push_back(&sweep.state(id));
    std::vector<std::size_t> sector_cycle(big_n, 0);

    if (s.tasks.empty()) {
        auto trace = sweep.finish();
        trace.cycle_completion_passes.assign(cycles, -1);
        return trace;
    }

    for (std::size_t pass = 0; !sweep.finished(); ++pass) {
        sweep.check_limit(pass);
        const SectorIndex j = pass % big_n;
        if (sector_cycle[j] >= cycles || bins[j].empty()) continue;

        std::vector<TaskState*> pending;
        for (auto* st : bins[j])
            if (st->executed == sector_cycle[j]) pending.push_back(st);
        std::sort(pending.begin(), pending.end(), older);

        const double capacity = s.resources[j];
        double used = 0.0;
        std::size_t ran = 0;
        for (auto* st : pending) {
            if (used + st->task->duration > capacity + kCapacitySlack) break;
            sweep.execute(*st, pass, used);
            used += st->task->duration;
            ++ran;
        }
        if (ran == 0 && !pending.empty()) {
            sweep.warn_oversize(*pending.front(), pass);
            sweep.execute(*pending.front(), pass, 0.0);
            ++ran;
        }
        if (ran == pending.size()) ++sector_cycle[j];
        sweep.note_progress(pass);
    }
    return sweep.finish();
}

SimulationTrace run_edf(const Scenario& s, std::size_t cycles) {
    Sweep sweep(s, cycles);
    const std::size_t big_n = s.n_sectors;
    if (s.tasks.empty()) {
        auto trace = sweep.finish();
        trace.cycle_completion_passes.assign(cycles, -1);
        return trace;
    }

    // largest capacity among each task's in-view sectors
    std::vector<double> best_capacity(s.tasks.size(), 0.0);
    for (std::size_t i = 0; i < s.tasks.size(); ++i)
        for (SectorIndex j : active_sectors(s.tasks[i].home_sector, s.fov_half_width, big_n))
            best_capacity[i] = std::max(best_capacity[i], s.resources[j]);

    std::size_t global_cycle = 0;
    for (std::size_t pass = 0; !sweep.finished(); ++pass) {
        sweep.check_limit(pass);
        const SectorIndex j = pass % big_n;
        std::vector<TaskState*> eligible;
        for (auto& st : sweep.states())
            if (st.executed == global_cycle && within_fov(st.task->home_sector, j, s.fov_half_width, big_n))
                eligible.push_back(&st);
        std::sort(eligible.begin(), eligible.end(), older);

        const double capacity = s.resources[j];
        double used = 0.0;
        bool ran = false;
        for (auto* st : eligible) {
            if (used + st->task->duration > capacity + kCapacitySlack) continue;
            sweep.execute(*st, pass, used);
            used += st->task->duration;
            ran = true;
        }
        if (!ran) {
            for (auto* st : eligible) {
                const auto idx = static_cast<std::size_t>(st->task - s.tasks.data());
                if (st->task->duration > best_capacity[idx] + kCapacitySlack) {
                    sweep.warn_oversize(*st, pass);
                    sweep.execute(*st, pass, 0.0);
                    break;
                }
            }
        }
        sweep.note_progress(pass);
        global_cycle = sweep.completed_cycles();
    }
    return sweep.finish();
}

}  // namespace

SimulationTrace simulate(const Scenario& s, SimPolicy policy, const SchedulePartition* partition,
                         std::size_t cycles) {
    require_valid(s);
    if (cycles == 0) throw InvalidInput("cycles must be positive");
    switch (policy) {
        case SimPolicy::partition_driven: {
            if (partition == nullptr) throw InvalidInput("partition-driven simulation needs a partition");
            const auto problems = validate_partition(s, *partition);
            if (!problems.empty())
                throw InvalidInput("partition does not match scenario: " + problems.front());
            return run_partition(s, *partition, cycles);
        }
        case SimPolicy::broadside:
            if (partition != nullptr) throw InvalidInput("broadside simulation builds its own partition");
            return run_partition(s, broadside_baseline(s), cycles);
        case SimPolicy::edf:
            if (partition != nullptr) throw InvalidInput("edf simulation takes no partition");
            return run_edf(s, cycles);
    }
    throw InvalidInput("unknown simulation policy");
}

SimulationTrace replay_assignment(const Scenario& s, const ExactSolution& solution, std::size_t cycles) {
    require_valid(s);
    if (cycles == 0) throw InvalidInput("cycles must be positive");
    if (solution.assignments.size() != s.tasks.size())
        throw InvalidInput("solution does not assign every task exactly once");
    Sweep sweep(s, cycles);
    if (s.tasks.empty()) {
        auto trace = sweep.finish();
        trace.cycle_completion_passes.assign(cycles, -1);
        return trace;
    }
    const std::size_t big_n = s.n_sectors;
    const std::size_t period = (static_cast<std::size_t>(solution.objective) / big_n + 1) * big_n;

    std::map<std::size_t, std::vector<TaskId>> by_pass;
    for (const auto& [id, a] : solution.assignments) {
        if (a.sector >= big_n) throw InvalidInput("solution names a sector outside the scenario");
        by_pass[a.pass(big_n)].push_back(id);
    }
    for (std::size_t c = 0; c < cycles; ++c) {
        for (const auto& [pass, ids] : by_pass) {
            double offset = 0.0;
            for (TaskId id : ids) {
                auto& st = sweep.state(id);
                sweep.execute(st, pass + c * period, offset);
                offset += st.task->duration;
            }
            sweep.note_progress(pass + c * period);
        }
    }
    return sweep.finish();
}

SchedulePartition realized_partition(const Scenario& s, const SimulationTrace& trace) {
    SchedulePartition p;
    p.bins.resize(s.n_sectors);
    for (const auto& rec : trace.records) {
        if (rec.cycle != 0) continue;
        p.bins.at(rec.sector).push_back(rec.task_id);
    }
    std::unordered_map<TaskId, SectorIndex> home;
    for (const auto& t : s.tasks) home[t.id] = t.home_sector;
    for (SectorIndex j = 0; j < p.bins.size(); ++j) {
        std::sort(p.bins[j].begin(), p.bins[j].end());
        for (TaskId id : p.bins[j]) p.phase[id] = home.at(id) == j ? Phase::own_sector : Phase::fov_equalized;
    }
    return p;
}

RevisitStats revisit_stats(const SimulationTrace& trace, const Scenario& s) {
    if (trace.cycles < 2) throw InsufficientData("revisit statistics need at least two cycles");
    const double rotation_time = static_cast<double>(s.n_sectors) * s.dt;
    std::unordered_map<TaskId, SectorIndex> home;
    for (const auto& t : s.tasks) home[t.id] = t.home_sector;

    RevisitStats stats;
    stats.per_sector_max_rotations.assign(s.n_sectors, 0.0);
    std::unordered_map<TaskId, double> previous;
    std::unordered_map<TaskId, std::size_t> seen;
    for (const auto& rec : trace.records) {
        ++seen[rec.task_id];
        auto it = previous.find(rec.task_id);
        if (it != previous.end()) {
            RevisitInterval iv;
            iv.task_id = rec.task_id;
            iv.home_sector = home.at(rec.task_id);
            iv.exec_sector = rec.sector;
            iv.interval_s = rec.timestamp - it->second;
            iv.interval_rot = iv.interval_s / rotation_time;
            stats.intervals.push_back(iv);
        }
        previous[rec.task_id] = rec.timestamp;
    }
    for (const auto& t : s.tasks)
        if (seen[t.id] < 2)
            throw InsufficientData("task " + std::to_string(t.id) + " was illuminated fewer than twice");

    double sum = 0.0;
    for (const auto& iv : stats.intervals) {
        stats.max_rotations = std::max(stats.max_rotations, iv.interval_rot);
        stats.max_seconds = std::max(stats.max_seconds, iv.interval_s);
        auto& sector_max = stats.per_sector_max_rotations[iv.home_sector];
        sector_max = std::max(sector_max, iv.interval_rot);
        sum += iv.interval_rot;
    }
    if (!stats.intervals.empty()) stats.mean_rotations = sum / static_cast<double>(stats.intervals.size());
    return stats;
}

}  // namespace sectorsched
