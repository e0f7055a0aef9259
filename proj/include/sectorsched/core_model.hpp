#pragma once

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace sectorsched {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

using TaskId = std::uint64_t;
using SectorIndex = std::size_t;

/// Beam-pointing direction. Azimuth in [0, 2pi), elevation in [-pi, pi].
/// Elevation is carried along but never used for sectoring.
struct Direction {
    double phi = 0.0;
    double theta = 0.0;

    friend bool operator==(const Direction&, const Direction&) = default;
};

struct SurveillanceTask {
    TaskId id = 0;
    Direction direction;
    double duration = 0.0;  ///< dwell time per update, seconds
    SectorIndex home_sector = 0;

    friend bool operator==(const SurveillanceTask&, const SurveillanceTask&) = default;
};

/// A complete problem instance: N azimuth sectors, a field of view of
/// fov_half_width sectors to either side of broadside, the kinematic pass
/// duration dt, per-pass surveillance time R_i, and the task set.
struct Scenario {
    std::size_t n_sectors = 1;
    std::size_t fov_half_width = 0;
    double dt = 1.0;
    std::vector<double> resources;
    std::vector<SurveillanceTask> tasks;

    double total_duration() const;
    double total_resources() const;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// floor(phi / 2pi * N). Throws InvalidInput for phi outside [0, 2pi) or N == 0.
SectorIndex sector_of_direction(double phi, std::size_t n_sectors);

/// Sector under the antenna boresight at time t, wrapped mod N.
SectorIndex main_sector(double t, std::size_t n_sectors, double dt);

/// min(n, floor(N/2)); wider fields of view only repeat sectors.
std::size_t effective_fov(std::size_t fov_half_width, std::size_t n_sectors);

/// Sectors (m + c) mod N for c = -n..n, duplicates dropped, in order of c.
std::vector<SectorIndex> active_sectors(SectorIndex m, std::size_t fov_half_width,
                                        std::size_t n_sectors);

std::size_t angular_sector_distance(SectorIndex a, SectorIndex b, std::size_t n_sectors);

/// True when sector `exec` can serve a task homed in `home`.
bool within_fov(SectorIndex home, SectorIndex exec, std::size_t fov_half_width,
                std::size_t n_sectors);

/// Builds a task with its home sector derived from phi.
SurveillanceTask make_task(TaskId id, double phi, double theta, double duration,
                           std::size_t n_sectors);

struct Violation {
    std::string field;
    std::optional<TaskId> task;
    std::string message;

    std::string to_string() const;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    std::vector<std::string> messages() const;
};

ValidationReport validate_scenario(const Scenario& s);

/// Throws ValidationError if validate_scenario reports anything.
void require_valid(const Scenario& s);

}  // namespace sectorsched
