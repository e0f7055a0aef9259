#pragma once

#include "sectorsched/core_model.hpp"
#include "sectorsched/load_optimum.hpp"
#include "sectorsched/rotation_simulator.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace sectorsched {

/// xorshift64* seeded through one splitmix64 step. The constants are part
/// of the file-format contract: a given seed yields the same scenario on
/// every platform and in every implementation.
///
///   seed:  z = seed + 0x9E3779B97F4A7C15
///          z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///          z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///          state = z ^ (z >> 31), or 0x9E3779B97F4A7C15 if that is 0
///   next:  x ^= x >> 12; x ^= x << 25; x ^= x >> 27
///          return x * 0x2545F4914F6CDD1D
///   unit:  (next() >> 11) * 2^-53           in [0, 1)
///   int:   lo + next() % (hi - lo + 1)      in [lo, hi]
class Xorshift64Star {
public:
    explicit Xorshift64Star(std::uint64_t seed);

    std::uint64_t next();
    double unit();
    double uniform(double lo, double hi);
    std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi);

private:
    std::uint64_t state_;
};

struct Hotspot {
    SectorIndex sector = 0;
    double resource_multiplier = 1.0;
    double task_multiplier = 1.0;
};

struct GenParams {
    std::size_t n_sectors = 30;
    std::size_t fov_half_width = 5;
    double dt = 20.0;
    std::size_t tasks_min = 5;
    std::size_t tasks_max = 15;
    double duration_min = 0.5;
    double duration_max = 3.0;
    double resource_min = 5.0;
    double resource_max = 20.0;
    std::vector<Hotspot> hotspots;
    std::uint64_t seed = 1;
};

/// Random scenario, deterministic in p.seed. Draw order: for each sector,
/// R_i then its task count; hotspots scale both; then for each sector in
/// order and each of its tasks, azimuth offset within the sector, elevation,
/// duration. Task ids are 0, 1, 2, ... in that order.
Scenario generate(const GenParams& p);

/// 17 significant digits, which reads back bit-exactly. Non-finite values
/// print as inf, -inf or nan and only ever appear in CSV.
std::string format_number(double v);

std::string scenario_to_json(const Scenario& s);
/// Throws ParseError (with line and field) for malformed text or
/// out-of-range azimuths, ValidationError for invariant violations.
Scenario scenario_from_json(const std::string& text);

std::string partition_to_json(const SchedulePartition& p);
SchedulePartition partition_from_json(const std::string& text);

std::string load_report_to_csv(const LoadReport& r);
/// Summary fields are recomputed against `resources`.
LoadReport load_report_from_csv(const std::string& text, std::span<const double> resources);

std::string trace_to_csv(const SimulationTrace& t);
/// Rebuilds cycle indices, illumination history and completion passes from
/// the records. Warnings are not serialized.
SimulationTrace trace_from_csv(const std::string& text);

std::string revisit_stats_to_csv(const RevisitStats& r);
std::vector<RevisitInterval> revisit_intervals_from_csv(const std::string& text);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

Scenario read_scenario(const std::filesystem::path& path);
void write_scenario(const Scenario& s, const std::filesystem::path& path);
SchedulePartition read_partition(const std::filesystem::path& path);
void write_partition(const SchedulePartition& p, const std::filesystem::path& path);
void write_load_report(const LoadReport& r, const std::filesystem::path& path);
void write_trace(const SimulationTrace& t, const std::filesystem::path& path);
void write_revisit_stats(const RevisitStats& r, const std::filesystem::path& path);

}  // namespace sectorsched
