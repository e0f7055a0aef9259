#include "sectorsched/scenario_io.hpp"

#include "sectorsched/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace sectorsched {

using nlohmann::json;

// ---- generator ----------------------------------------------------------

Xorshift64Star::Xorshift64Star(std::uint64_t seed) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z ^= z >> 31;
    state_ = z != 0 ? z : 0x9E3779B97F4A7C15ULL;
}

std::uint64_t Xorshift64Star::next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
}

double Xorshift64Star::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Xorshift64Star::uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

std::uint64_t Xorshift64Star::uniform_int(std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t span = hi - lo + 1;
    return span == 0 ? next() : lo + next() % span;
}

Scenario generate(const GenParams& p) {
    if (p.n_sectors == 0) throw InvalidInput("n_sectors must be positive");
    if (!(p.dt > 0.0)) throw InvalidInput("dt must be positive");
    if (p.tasks_min > p.tasks_max) throw InvalidInput("empty task count range");
    if (!(p.duration_min > 0.0 && p.duration_min <= p.duration_max))
        throw InvalidInput("duration range must be positive and non-empty");
    if (!(p.resource_min >= 0.0 && p.resource_min <= p.resource_max && p.resource_max > 0.0))
        throw InvalidInput("resource range must be non-negative, non-empty and not all zero");
    for (const auto& h : p.hotspots) {
        if (h.sector >= p.n_sectors) throw InvalidInput("hotspot sector out of range");
        if (!(h.resource_multiplier >= 0.0 && h.task_multiplier >= 0.0))
            throw InvalidInput("hotspot multipliers must be non-negative");
    }

    Xorshift64Star rng(p.seed);
    Scenario s;
    s.n_sectors = p.n_sectors;
    s.fov_half_width = p.fov_half_width;
    s.dt = p.dt;
    s.resources.resize(p.n_sectors);
    std::vector<std::size_t> counts(p.n_sectors);
    for (std::size_t i = 0; i < p.n_sectors; ++i) {
        s.resources[i] = rng.uniform(p.resource_min, p.resource_max);
        counts[i] = static_cast<std::size_t>(rng.uniform_int(p.tasks_min, p.tasks_max));
    }
    for (const auto& h : p.hotspots) {
        s.resources[h.sector] *= h.resource_multiplier;
        counts[h.sector] =
            static_cast<std::size_t>(std::llround(static_cast<double>(counts[h.sector]) * h.task_multiplier));
    }
    const bool any_tasks = std::any_of(counts.begin(), counts.end(), [](std::size_t c) { return c > 0; });
    if (any_tasks && s.total_resources() <= 0.0) throw InvalidInput("hotspots leave no sector with resources");

    const auto n = static_cast<double>(p.n_sectors);
    TaskId id = 0;
    for (std::size_t i = 0; i < p.n_sectors; ++i) {
        for (std::size_t k = 0; k < counts[i]; ++k) {
            double phi = kTwoPi * (static_cast<double>(i) + rng.unit()) / n;
            if (!(phi < kTwoPi) || sector_of_direction(phi, p.n_sectors) != i)
                phi = kTwoPi * (static_cast<double>(i) + 0.5) / n;
            const double theta = rng.uniform(-std::numbers::pi, std::numbers::pi);
            const double duration = rng.uniform(p.duration_min, p.duration_max);
            s.tasks.push_back(make_task(id++, phi, theta, duration, p.n_sectors));
        }
    }
    return s;
}

// ---- formatting helpers -------------------------------------------------

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::size_t line_of(const std::string& text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what(), line_of(text, e.byte), "");
    }
}

// Line of the nth occurrence of "key", for diagnostics on structurally
// valid JSON.
std::optional<std::size_t> line_of_key(const std::string& text, const std::string& key, std::size_t nth = 0) {
    const std::string needle = "\"" + key + "\"";
    std::size_t pos = 0;
    for (std::size_t i = 0; i <= nth; ++i) {
        pos = text.find(needle, i == 0 ? 0 : pos + 1);
        if (pos == std::string::npos) return std::nullopt;
    }
    return line_of(text, pos);
}

const json& require(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key))
        throw ParseError("missing field", std::nullopt, where.empty() ? key : where + "." + key);
    return obj.at(key);
}

double as_number(const json& v, const std::string& field, std::optional<std::size_t> line) {
    if (!v.is_number()) throw ParseError("expected a number", line, field);
    return v.get<double>();
}

std::uint64_t as_unsigned(const json& v, const std::string& field, std::optional<std::size_t> line) {
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<long long>() < 0))
        throw ParseError("expected a non-negative integer", line, field);
    return v.get<std::uint64_t>();
}

}  // namespace

// ---- scenario -----------------------------------------------------------

std::string scenario_to_json(const Scenario& s) {
    std::string out = "{\n";
    out += "  \"n_sectors\": " + std::to_string(s.n_sectors) + ",\n";
    out += "  \"fov_half_width\": " + std::to_string(s.fov_half_width) + ",\n";
    out += "  \"dt\": " + format_number(s.dt) + ",\n";
    out += "  \"resources\": [";
    for (std::size_t i = 0; i < s.resources.size(); ++i) {
        out += i == 0 ? "" : ", ";
        out += format_number(s.resources[i]);
    }
    out += "],\n  \"tasks\": [";
    for (std::size_t i = 0; i < s.tasks.size(); ++i) {
        const auto& t = s.tasks[i];
        out += i == 0 ? "\n" : ",\n";
        out += "    {\"id\": " + std::to_string(t.id) + ", \"phi\": " + format_number(t.direction.phi) +
               ", \"theta\": " + format_number(t.direction.theta) +
               ", \"duration\": " + format_number(t.duration) + "}";
    }
    out += s.tasks.empty() ? "]\n}\n" : "\n  ]\n}\n";
    return out;
}

Scenario scenario_from_json(const std::string& text) {
    const json doc = parse_json(text);
    if (!doc.is_object()) throw ParseError("expected a JSON object", 1, "");

    Scenario s;
    s.n_sectors = as_unsigned(require(doc, "n_sectors", ""), "n_sectors", line_of_key(text, "n_sectors"));
    if (s.n_sectors == 0) throw ParseError("must be positive", line_of_key(text, "n_sectors"), "n_sectors");
    s.fov_half_width = as_unsigned(require(doc, "fov_half_width", ""), "fov_half_width",
                                   line_of_key(text, "fov_half_width"));
    s.dt = as_number(require(doc, "dt", ""), "dt", line_of_key(text, "dt"));

    const json& res = require(doc, "resources", "");
    if (!res.is_array()) throw ParseError("expected an array", line_of_key(text, "resources"), "resources");
    for (std::size_t i = 0; i < res.size(); ++i)
        s.resources.push_back(as_number(res[i], "resources[" + std::to_string(i) + "]", line_of_key(text, "resources")));

    const json& tasks = require(doc, "tasks", "");
    if (!tasks.is_array()) throw ParseError("expected an array", line_of_key(text, "tasks"), "tasks");
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        const std::string where = "tasks[" + std::to_string(i) + "]";
        const json& t = tasks[i];
        if (!t.is_object()) throw ParseError("expected an object", line_of_key(text, "id", i), where);
        const auto line = line_of_key(text, "phi", i);
        SurveillanceTask task;
        task.id = as_unsigned(require(t, "id", where), where + ".id", line);
        task.direction.phi = as_number(require(t, "phi", where), where + ".phi", line);
        task.direction.theta = as_number(require(t, "theta", where), where + ".theta", line);
        task.duration = as_number(require(t, "duration", where), where + ".duration", line);
        if (!(task.direction.phi >= 0.0 && task.direction.phi < kTwoPi))
            throw ParseError("azimuth outside [0, 2pi)", line, where + ".phi");
        task.home_sector = sector_of_direction(task.direction.phi, s.n_sectors);
        s.tasks.push_back(task);
    }
    require_valid(s);
    return s;
}

// ---- partition ----------------------------------------------------------

std::string partition_to_json(const SchedulePartition& p) {
    json bins = json::array();
    for (const auto& bin : p.bins) {
        json entries = json::array();
        for (TaskId id : bin) {
            auto it = p.phase.find(id);
            entries.push_back({{"id", id}, {"phase", it == p.phase.end() ? "own-sector" : to_string(it->second)}});
        }
        bins.push_back(std::move(entries));
    }
    json doc = {{"n_sectors", p.bins.size()}, {"bins", std::move(bins)}};
    return doc.dump(2) + "\n";
}

SchedulePartition partition_from_json(const std::string& text) {
    const json doc = parse_json(text);
    const auto n = as_unsigned(require(doc, "n_sectors", ""), "n_sectors", line_of_key(text, "n_sectors"));
    const json& bins = require(doc, "bins", "");
    if (!bins.is_array() || bins.size() != n)
        throw ParseError("expected an array of n_sectors bins", line_of_key(text, "bins"), "bins");
    SchedulePartition p;
    p.bins.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::string where = "bins[" + std::to_string(i) + "]";
        if (!bins[i].is_array()) throw ParseError("expected an array", std::nullopt, where);
        for (std::size_t k = 0; k < bins[i].size(); ++k) {
            const std::string entry = where + "[" + std::to_string(k) + "]";
            const json& e = bins[i][k];
            const TaskId id = as_unsigned(require(e, "id", entry), entry + ".id", std::nullopt);
            const json& phase = require(e, "phase", entry);
            if (!phase.is_string()) throw ParseError("expected a string", std::nullopt, entry + ".phase");
            try {
                p.phase[id] = phase_from_string(phase.get<std::string>());
            } catch (const InvalidInput& err) {
                throw ParseError(err.what(), std::nullopt, entry + ".phase");
            }
            p.bins[i].push_back(id);
        }
    }
    return p;
}

// ---- CSV ----------------------------------------------------------------

namespace {

struct CsvRow {
    std::size_t line;
    std::vector<std::string> cells;
};

std::vector<CsvRow> parse_csv(const std::string& text, const std::vector<std::string>& header) {
    std::istringstream in(text);
    std::string line;
    std::vector<CsvRow> rows;
    std::size_t line_no = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        if (!saw_header) {
            if (cells != header) throw ParseError("unexpected CSV header", line_no, "");
            saw_header = true;
            continue;
        }
        if (cells.size() != header.size())
            throw ParseError("expected " + std::to_string(header.size()) + " fields", line_no, "");
        rows.push_back(CsvRow{line_no, std::move(cells)});
    }
    if (!saw_header) throw ParseError("missing CSV header", line_no == 0 ? 1 : line_no, "");
    return rows;
}

double cell_number(const CsvRow& row, std::size_t col, const std::vector<std::string>& header) {
    const std::string& c = row.cells[col];
    char* end = nullptr;
    const double v = std::strtod(c.c_str(), &end);
    if (c.empty() || end != c.c_str() + c.size()) throw ParseError("expected a number", row.line, header[col]);
    return v;
}

std::uint64_t cell_unsigned(const CsvRow& row, std::size_t col, const std::vector<std::string>& header) {
    const std::string& c = row.cells[col];
    char* end = nullptr;
    const auto v = std::strtoull(c.c_str(), &end, 10);
    if (c.empty() || c.front() == '-' || end != c.c_str() + c.size())
        throw ParseError("expected a non-negative integer", row.line, header[col]);
    return v;
}

const std::vector<std::string> kLoadHeader = {"sector", "absolute_load", "target", "relative_load"};
const std::vector<std::string> kTraceHeader = {"pass",     "rotation", "sector",   "task_id",
                                               "start_offset", "duration", "timestamp"};
const std::vector<std::string> kRevisitHeader = {"task_id", "home_sector", "exec_sector", "interval_s",
                                                 "interval_rot"};

std::string join_header(const std::vector<std::string>& h) {
    std::string out;
    for (std::size_t i = 0; i < h.size(); ++i) out += (i ? "," : "") + h[i];
    return out + "\n";
}

}  // namespace

std::string load_report_to_csv(const LoadReport& r) {
    std::string out = join_header(kLoadHeader);
    for (std::size_t i = 0; i < r.sectors.size(); ++i) {
        const auto& row = r.sectors[i];
        out += std::to_string(i) + "," + format_number(row.absolute_load) + "," + format_number(row.target) + "," +
               format_number(row.relative_load) + "\n";
    }
    return out;
}

LoadReport load_report_from_csv(const std::string& text, std::span<const double> resources) {
    LoadReport r;
    for (const auto& row : parse_csv(text, kLoadHeader)) {
        const auto idx = cell_unsigned(row, 0, kLoadHeader);
        if (idx != r.sectors.size()) throw ParseError("sectors must be listed in order", row.line, "sector");
        SectorLoad s;
        s.absolute_load = cell_number(row, 1, kLoadHeader);
        s.target = cell_number(row, 2, kLoadHeader);
        s.relative_load = cell_number(row, 3, kLoadHeader);
        s.infinite = std::isinf(s.relative_load);
        r.sectors.push_back(s);
    }
    summarize(r, std::vector<double>(resources.begin(), resources.end()));
    return r;
}

std::string trace_to_csv(const SimulationTrace& t) {
    std::string out = join_header(kTraceHeader);
    for (const auto& rec : t.records) {
        out += std::to_string(rec.pass) + "," + std::to_string(rec.rotation) + "," + std::to_string(rec.sector) + "," +
               std::to_string(rec.task_id) + "," + format_number(rec.start_offset) + "," +
               format_number(rec.duration) + "," + format_number(rec.timestamp) + "\n";
    }
    return out;
}

SimulationTrace trace_from_csv(const std::string& text) {
    SimulationTrace t;
    std::map<TaskId, std::size_t> runs;
    for (const auto& row : parse_csv(text, kTraceHeader)) {
        ExecutionRecord rec;
        rec.pass = cell_unsigned(row, 0, kTraceHeader);
        rec.rotation = cell_unsigned(row, 1, kTraceHeader);
        rec.sector = cell_unsigned(row, 2, kTraceHeader);
        rec.task_id = cell_unsigned(row, 3, kTraceHeader);
        rec.start_offset = cell_number(row, 4, kTraceHeader);
        rec.duration = cell_number(row, 5, kTraceHeader);
        rec.timestamp = cell_number(row, 6, kTraceHeader);
        rec.cycle = runs[rec.task_id]++;
        t.illumination[rec.task_id].push_back(rec.timestamp);
        t.records.push_back(rec);
    }
    if (runs.empty()) return t;

    t.cycles = std::numeric_limits<std::size_t>::max();
    for (const auto& [id, n] : runs) t.cycles = std::min(t.cycles, n);
    std::vector<std::map<TaskId, std::size_t>> pass_of(t.cycles);
    for (const auto& rec : t.records)
        if (rec.cycle < t.cycles) pass_of[rec.cycle][rec.task_id] = rec.pass;
    for (const auto& cycle : pass_of) {
        std::size_t last = 0;
        for (const auto& [id, pass] : cycle) last = std::max(last, pass);
        t.cycle_completion_passes.push_back(static_cast<std::int64_t>(last));
    }
    t.completion_pass = t.cycle_completion_passes.front();
    return t;
}

std::string revisit_stats_to_csv(const RevisitStats& r) {
    std::string out = join_header(kRevisitHeader);
    for (const auto& iv : r.intervals) {
        out += std::to_string(iv.task_id) + "," + std::to_string(iv.home_sector) + "," +
               std::to_string(iv.exec_sector) + "," + format_number(iv.interval_s) + "," +
               format_number(iv.interval_rot) + "\n";
    }
    return out;
}

std::vector<RevisitInterval> revisit_intervals_from_csv(const std::string& text) {
    std::vector<RevisitInterval> out;
    for (const auto& row : parse_csv(text, kRevisitHeader)) {
        RevisitInterval iv;
        iv.task_id = cell_unsigned(row, 0, kRevisitHeader);
        iv.home_sector = cell_unsigned(row, 1, kRevisitHeader);
        iv.exec_sector = cell_unsigned(row, 2, kRevisitHeader);
        iv.interval_s = cell_number(row, 3, kRevisitHeader);
        iv.interval_rot = cell_number(row, 4, kRevisitHeader);
        out.push_back(iv);
    }
    return out;
}

// ---- files --------------------------------------------------------------

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidInput("cannot write " + path.string());
    out << text;
    if (!out) throw InvalidInput("failed writing " + path.string());
}

Scenario read_scenario(const std::filesystem::path& path) { return scenario_from_json(read_text(path)); }
void write_scenario(const Scenario& s, const std::filesystem::path& path) { write_text(path, scenario_to_json(s)); }
SchedulePartition read_partition(const std::filesystem::path& path) { return partition_from_json(read_text(path)); }
void write_partition(const SchedulePartition& p, const std::filesystem::path& path) {
    write_text(path, partition_to_json(p));
}
void write_load_report(const LoadReport& r, const std::filesystem::path& path) {
    write_text(path, load_report_to_csv(r));
}
void write_trace(const SimulationTrace& t, const std::filesystem::path& path) { write_text(path, trace_to_csv(t)); }
void write_revisit_stats(const RevisitStats& r, const std::filesystem::path& path) {
    write_text(path, revisit_stats_to_csv(r));
}

}  // namespace sectorsched
