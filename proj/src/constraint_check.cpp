#include "sectorsched/constraint_check.hpp"

#include <cstdlib>
#include <map>

namespace sectorsched {

namespace {

constexpr double kSlack = 1e-9;

long long circular_distance(long long a, long long b, long long n) {
    const long long d = ((a - b) % n + n) % n;
    return d < n - d ? d : n - d;
}

bool in_view(const Scenario& s, SectorIndex home, SectorIndex exec) {
    const auto n = static_cast<long long>(s.n_sectors);
    auto half = static_cast<long long>(s.fov_half_width);
    if (half > n / 2) half = n / 2;
    return circular_distance(static_cast<long long>(home), static_cast<long long>(exec), n) <= half;
}

}  // namespace

std::vector<std::string> check_trace(const Scenario& s, const SimulationTrace& trace, std::size_t cycles) {
    std::vector<std::string> out;
    std::map<TaskId, SectorIndex> home;
    for (const auto& t : s.tasks) home[t.id] = t.home_sector;

    std::map<std::size_t, double> pass_load;
    std::map<TaskId, std::size_t> runs;
    double last_time = -1.0;
    for (const auto& r : trace.records) {
        const std::string tag = "task " + std::to_string(r.task_id) + " pass " + std::to_string(r.pass);
        auto h = home.find(r.task_id);
        if (h == home.end()) {
            out.push_back(tag + ": unknown task");
            continue;
        }
        if (r.sector != r.pass % s.n_sectors) out.push_back(tag + ": sector is not the main sector of its pass");
        if (!in_view(s, h->second, r.sector)) out.push_back(tag + ": executed outside the field of view");
        if (r.timestamp < last_time) out.push_back(tag + ": records out of time order");
        last_time = r.timestamp;
        pass_load[r.pass] += r.duration;
        ++runs[r.task_id];
    }
    for (const auto& [pass, load] : pass_load) {
        const double cap = s.resources[pass % s.n_sectors];
        if (load > cap + kSlack)
            out.push_back("pass " + std::to_string(pass) + ": load " + std::to_string(load) +
                          " exceeds capacity " + std::to_string(cap));
    }
    for (const auto& t : s.tasks) {
        const std::size_t n = runs.count(t.id) ? runs[t.id] : 0;
        if (n != cycles)
            out.push_back("task " + std::to_string(t.id) + ": ran " + std::to_string(n) + " times in " +
                          std::to_string(cycles) + " cycles");
    }
    return out;
}

std::vector<std::string> check_exact_solution(const Scenario& s, const ExactSolution& solution) {
    std::vector<std::string> out;
    std::map<TaskId, const SurveillanceTask*> by_id;
    for (const auto& t : s.tasks) by_id[t.id] = &t;

    std::map<std::size_t, double> pass_load;
    long long last = -1;
    for (const auto& [id, a] : solution.assignments) {
        auto it = by_id.find(id);
        if (it == by_id.end()) {
            out.push_back("task " + std::to_string(id) + ": unknown task");
            continue;
        }
        if (a.sector >= s.n_sectors) {
            out.push_back("task " + std::to_string(id) + ": sector out of range");
            continue;
        }
        if (!in_view(s, it->second->home_sector, a.sector))
            out.push_back("task " + std::to_string(id) + ": executed outside the field of view");
        const std::size_t pass = a.rotation * s.n_sectors + a.sector;
        pass_load[pass] += it->second->duration;
        if (static_cast<long long>(pass) > last) last = static_cast<long long>(pass);
    }
    for (const auto& t : s.tasks)
        if (!solution.assignments.count(t.id)) out.push_back("task " + std::to_string(t.id) + ": not assigned");
    for (const auto& [pass, load] : pass_load) {
        const double cap = s.resources[pass % s.n_sectors];
        if (load > cap + kSlack)
            out.push_back("pass " + std::to_string(pass) + ": load exceeds capacity");
    }
    if (last != solution.objective)
        out.push_back("objective " + std::to_string(solution.objective) + " but last used pass is " +
                      std::to_string(last));
    return out;
}

}  // namespace sectorsched
