#include "sectorsched/core_model.hpp"

#include "sectorsched/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace sectorsched {

double Scenario::total_duration() const {
    return std::accumulate(tasks.begin(), tasks.end(), 0.0,
                           [](double acc, const SurveillanceTask& t) { return acc + t.duration; });
}

double Scenario::total_resources() const {
    return std::accumulate(resources.begin(), resources.end(), 0.0);
}

SectorIndex sector_of_direction(double phi, std::size_t n_sectors) {
    if (n_sectors == 0) throw InvalidInput("sector count must be positive");
    if (!(phi >= 0.0 && phi < kTwoPi))
        throw InvalidInput("azimuth " + std::to_string(phi) + " outside [0, 2pi)");
    const auto n = static_cast<double>(n_sectors);
    auto idx = static_cast<SectorIndex>(std::floor(phi / kTwoPi * n));
    // phi just below 2pi can round up to N
    return std::min(idx, n_sectors - 1);
}

SectorIndex main_sector(double t, std::size_t n_sectors, double dt) {
    if (!(dt > 0.0)) throw InvalidInput("pass duration must be positive");
    if (n_sectors == 0) throw InvalidInput("sector count must be positive");
    if (!(t >= 0.0)) throw InvalidInput("time must be non-negative");
    double passes = t / dt;
    // 0.3 / 0.1 evaluates to 2.9999999999999996
    const double nearest = std::round(passes);
    if (std::abs(passes - nearest) <= 1e-9 * std::max(1.0, nearest)) passes = nearest;
    const auto k = static_cast<std::uint64_t>(std::floor(passes));
    return static_cast<SectorIndex>(k % n_sectors);
}

std::size_t effective_fov(std::size_t fov_half_width, std::size_t n_sectors) {
    return std::min(fov_half_width, n_sectors / 2);
}

std::vector<SectorIndex> active_sectors(SectorIndex m, std::size_t fov_half_width,
                                        std::size_t n_sectors) {
    if (n_sectors == 0) throw InvalidInput("sector count must be positive");
    if (m >= n_sectors) throw InvalidInput("main sector out of range");
    const auto n = static_cast<long long>(effective_fov(fov_half_width, n_sectors));
    const auto big_n = static_cast<long long>(n_sectors);
    std::vector<SectorIndex> out;
    out.reserve(static_cast<std::size_t>(2 * n + 1));
    for (long long c = -n; c <= n; ++c) {
        const auto j = static_cast<SectorIndex>(((static_cast<long long>(m) + c) % big_n + big_n) % big_n);
        if (std::find(out.begin(), out.end(), j) == out.end()) out.push_back(j);
    }
    return out;
}

std::size_t angular_sector_distance(SectorIndex a, SectorIndex b, std::size_t n_sectors) {
    const std::size_t fwd = (a + n_sectors - b % n_sectors) % n_sectors;
    const std::size_t back = (b + n_sectors - a % n_sectors) % n_sectors;
    return std::min(fwd, back);
}

bool within_fov(SectorIndex home, SectorIndex exec, std::size_t fov_half_width,
                std::size_t n_sectors) {
    return angular_sector_distance(home, exec, n_sectors) <=
           effective_fov(fov_half_width, n_sectors);
}

SurveillanceTask make_task(TaskId id, double phi, double theta, double duration,
                           std::size_t n_sectors) {
    return SurveillanceTask{id, Direction{phi, theta}, duration, sector_of_direction(phi, n_sectors)};
}

std::string Violation::to_string() const {
    std::string out = field;
    if (task) out += " (task " + std::to_string(*task) + ")";
    return out + ": " + message;
}

std::vector<std::string> ValidationReport::messages() const {
    std::vector<std::string> out;
    out.reserve(violations.size());
    for (const auto& v : violations) out.push_back(v.to_string());
    return out;
}

ValidationReport validate_scenario(const Scenario& s) {
    ValidationReport report;
    auto flag = [&](std::string field, std::optional<TaskId> task, std::string msg) {
        report.violations.push_back(Violation{std::move(field), task, std::move(msg)});
    };

    if (s.n_sectors == 0) flag("n_sectors", std::nullopt, "must be at least 1");
    if (!(s.dt > 0.0) || !std::isfinite(s.dt)) flag("dt", std::nullopt, "non-positive pass duration");
    if (s.resources.size() != s.n_sectors)
        flag("resources", std::nullopt,
             "expected " + std::to_string(s.n_sectors) + " entries, got " +
                 std::to_string(s.resources.size()));
    for (std::size_t i = 0; i < s.resources.size(); ++i) {
        if (!(s.resources[i] >= 0.0) || !std::isfinite(s.resources[i]))
            flag("resources[" + std::to_string(i) + "]", std::nullopt, "negative or non-finite resource");
    }
    if (!s.tasks.empty() && !(s.total_resources() > 0.0))
        flag("resources", std::nullopt, "all resources zero but tasks present");

    std::set<TaskId> seen;
    for (const auto& t : s.tasks) {
        if (!seen.insert(t.id).second) flag("tasks.id", t.id, "duplicate task id");
        if (!(t.duration > 0.0) || !std::isfinite(t.duration))
            flag("tasks.duration", t.id, "non-positive duration");
        const double phi = t.direction.phi;
        const double theta = t.direction.theta;
        if (!(phi >= 0.0 && phi < kTwoPi)) {
            flag("tasks.phi", t.id, "azimuth outside [0, 2pi)");
        } else if (s.n_sectors > 0 && t.home_sector != sector_of_direction(phi, s.n_sectors)) {
            flag("tasks.home_sector", t.id, "inconsistent home sector");
        }
        if (!(theta >= -std::numbers::pi && theta <= std::numbers::pi))
            flag("tasks.theta", t.id, "elevation outside [-pi, pi]");
    }
    return report;
}

void require_valid(const Scenario& s) {
    auto report = validate_scenario(s);
    if (!report.ok()) throw ValidationError(report.messages());
}

}  // namespace sectorsched
