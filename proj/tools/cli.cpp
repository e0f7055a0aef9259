#include "sectorsched/cli.hpp"

#include "sectorsched/errors.hpp"
#include "sectorsched/exact_oracle.hpp"
#include "sectorsched/greedy_scheduler.hpp"
#include "sectorsched/load_optimum.hpp"
#include "sectorsched/rotation_simulator.hpp"
#include "sectorsched/scenario_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <iostream>
#include <optional>
#include <thread>

namespace sectorsched::cli {

namespace fs = std::filesystem;

namespace {

double worst_revisit(const SimulationTrace& trace, const Scenario& s) {
    if (s.tasks.empty()) return 0.0;
    return revisit_stats(trace, s).max_rotations;
}

ComparisonRow simulated_row(const Scenario& s, SimPolicy policy, const SchedulePartition* partition,
                            std::size_t cycles) {
    const auto trace = simulate(s, policy, partition, cycles);
    ComparisonRow row;
    row.policy = std::string(to_string(policy));
    const auto realized = partition != nullptr ? *partition
                          : policy == SimPolicy::broadside ? broadside_baseline(s)
                                                           : realized_partition(s, trace);
    row.max_relative_load = load_report(s, realized).max_relative_load;
    row.worst_revisit_rotations = worst_revisit(trace, s);
    row.completion_pass = trace.completion_pass;
    return row;
}

std::vector<Hotspot> parse_hotspots(const std::vector<std::string>& specs) {
    std::vector<Hotspot> out;
    for (const auto& spec : specs) {
        Hotspot h;
        char tail = 0;
        unsigned long long sector = 0;
        if (std::sscanf(spec.c_str(), "%llu:%lf:%lf%c", &sector, &h.resource_multiplier, &h.task_multiplier,
                        &tail) != 3)
            throw InvalidInput("hotspot '" + spec + "' is not SECTOR:RESOURCE_MUL:TASK_MUL");
        h.sector = static_cast<SectorIndex>(sector);
        out.push_back(h);
    }
    return out;
}

fs::path sibling(const fs::path& out, const std::string& suffix) {
    fs::path p = out;
    p.replace_extension();
    return fs::path(p.string() + suffix);
}

Scenario load(const std::string& path, std::optional<std::size_t> fov) {
    auto s = read_scenario(path);
    if (fov) s.fov_half_width = *fov;
    return s;
}

std::string rows_to_text(const std::vector<ComparisonRow>& rows, const std::string& format) {
    if (format == "json") {
        nlohmann::json doc = nlohmann::json::array();
        for (const auto& r : rows)
            doc.push_back({{"policy", r.policy},
                           {"max_relative_load", format_number(r.max_relative_load)},
                           {"worst_revisit_rotations", format_number(r.worst_revisit_rotations)},
                           {"completion_pass", r.completion_pass}});
        return doc.dump(2) + "\n";
    }
    std::string out = "policy,max_relative_load,worst_revisit_rotations,completion_pass\n";
    for (const auto& r : rows)
        out += r.policy + "," + format_number(r.max_relative_load) + "," + format_number(r.worst_revisit_rotations) +
               "," + std::to_string(r.completion_pass) + "\n";
    return out;
}

struct ReportRow {
    std::size_t fov = 0;
    std::string policy;
    std::size_t seeds = 0;
    double mean_max_relative_load = 0.0;
    double max_max_relative_load = 0.0;
    double mean_worst_revisit_rotations = 0.0;
    double max_worst_revisit_rotations = 0.0;
    double mean_completion_pass = 0.0;
};

std::string report_to_text(const std::vector<ReportRow>& rows, const std::string& format) {
    if (format == "json") {
        nlohmann::json doc = nlohmann::json::array();
        for (const auto& r : rows)
            doc.push_back({{"fov", r.fov},
                           {"policy", r.policy},
                           {"seeds", r.seeds},
                           {"mean_max_relative_load", format_number(r.mean_max_relative_load)},
                           {"max_max_relative_load", format_number(r.max_max_relative_load)},
                           {"mean_worst_revisit_rotations", format_number(r.mean_worst_revisit_rotations)},
                           {"max_worst_revisit_rotations", format_number(r.max_worst_revisit_rotations)},
                           {"mean_completion_pass", format_number(r.mean_completion_pass)}});
        return doc.dump(2) + "\n";
    }
    std::string out =
        "fov,policy,seeds,mean_max_relative_load,max_max_relative_load,mean_worst_revisit_rotations,"
        "max_worst_revisit_rotations,mean_completion_pass\n";
    for (const auto& r : rows)
        out += std::to_string(r.fov) + "," + r.policy + "," + std::to_string(r.seeds) + "," +
               format_number(r.mean_max_relative_load) + "," + format_number(r.max_max_relative_load) + "," +
               format_number(r.mean_worst_revisit_rotations) + "," + format_number(r.max_worst_revisit_rotations) +
               "," + format_number(r.mean_completion_pass) + "\n";
    return out;
}

// Evaluates fn(i) for i in [0, count) on `jobs` threads; results in index order.
template <typename Fn>
auto parallel_map(std::size_t count, std::size_t jobs, Fn fn) {
    using Result = decltype(fn(std::size_t{0}));
    std::vector<std::optional<Result>> results(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                results[i] = fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < std::max<std::size_t>(jobs, 1); ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    std::vector<Result> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        if (errors[i]) std::rethrow_exception(errors[i]);
        out.push_back(std::move(*results[i]));
    }
    return out;
}

}  // namespace

std::vector<ComparisonRow> compare_policies(const Scenario& s, std::size_t cycles, bool with_exact,
                                            std::string* note) {
    if (cycles < 2) throw InvalidInput("comparison needs at least two cycles");
    std::vector<ComparisonRow> rows;
    const auto greedy = equalize(s);
    rows.push_back(simulated_row(s, SimPolicy::partition_driven, &greedy, cycles));
    rows.push_back(simulated_row(s, SimPolicy::broadside, nullptr, cycles));
    rows.push_back(simulated_row(s, SimPolicy::edf, nullptr, cycles));
    if (!with_exact) return rows;
    try {
        const auto sol = exact_min_passes(s);
        ComparisonRow row;
        row.policy = sol.optimal ? "exact" : "exact-unproven";
        SchedulePartition p;
        p.bins.resize(s.n_sectors);
        for (const auto& [id, a] : sol.assignments) p.bins[a.sector].push_back(id);
        row.max_relative_load = load_report(s, p).max_relative_load;
        row.worst_revisit_rotations = worst_revisit(replay_assignment(s, sol, cycles), s);
        row.completion_pass = sol.objective;
        rows.push_back(row);
    } catch (const HorizonExceeded&) {
        throw;
    } catch (const LimitsExceeded& e) {
        if (note) *note = std::string("exact oracle skipped: ") + e.what();
    }
    return rows;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sector load equalization for rotating multifunction radars"};
    app.name("sectorsched");
    app.require_subcommand(1);

    // gen
    GenParams gen;
    std::string gen_out;
    std::vector<std::string> hotspots;
    auto* gen_cmd = app.add_subcommand("gen", "generate a random scenario");
    gen_cmd->add_option("--seed", gen.seed, "random seed");
    gen_cmd->add_option("--out", gen_out, "scenario file to write")->required();
    gen_cmd->add_option("--sectors", gen.n_sectors, "number of sectors N");
    gen_cmd->add_option("--fov", gen.fov_half_width, "field-of-view half width n");
    gen_cmd->add_option("--dt", gen.dt, "pass duration, seconds");
    gen_cmd->add_option("--tasks-min", gen.tasks_min);
    gen_cmd->add_option("--tasks-max", gen.tasks_max);
    gen_cmd->add_option("--duration-min", gen.duration_min);
    gen_cmd->add_option("--duration-max", gen.duration_max);
    gen_cmd->add_option("--resource-min", gen.resource_min);
    gen_cmd->add_option("--resource-max", gen.resource_max);
    gen_cmd->add_option("--hotspot", hotspots, "SECTOR:RESOURCE_MUL:TASK_MUL, repeatable");

    // shared flags
    std::string scenario_path, out_path, format = "csv", policy = "greedy", partition_path, side_path;
    std::optional<std::size_t> fov;
    std::size_t cycles = 3;
    bool exact = false;
    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    };

    auto* schedule_cmd = app.add_subcommand("schedule", "assign tasks to sectors");
    schedule_cmd->add_option("--scenario", scenario_path)->required();
    schedule_cmd->add_option("--out", out_path, "partition file to write")->required();
    schedule_cmd->add_option("--report", side_path, "load report (default: <out>.load.csv)");
    schedule_cmd->add_option("--policy", policy)->check(CLI::IsMember({"greedy", "broadside", "edf"}));
    schedule_cmd->add_option("--fov", fov, "override the scenario's field of view");
    add_format(schedule_cmd);

    auto* simulate_cmd = app.add_subcommand("simulate", "run the rotating antenna over a schedule");
    simulate_cmd->add_option("--scenario", scenario_path)->required();
    simulate_cmd->add_option("--out", out_path, "trace CSV to write")->required();
    simulate_cmd->add_option("--stats", side_path, "revisit CSV (default: <out>.revisit.csv)");
    simulate_cmd->add_option("--partition", partition_path, "partition file for the greedy policy");
    simulate_cmd->add_option("--policy", policy)->check(CLI::IsMember({"greedy", "broadside", "edf"}));
    simulate_cmd->add_option("--cycles", cycles)->check(CLI::PositiveNumber);
    simulate_cmd->add_option("--fov", fov);

    auto* compare_cmd = app.add_subcommand("compare", "greedy vs broadside vs EDF (vs exact)");
    compare_cmd->add_option("--scenario", scenario_path)->required();
    compare_cmd->add_option("--out", out_path)->required();
    compare_cmd->add_option("--cycles", cycles)->check(CLI::Range(2, 1000000));
    compare_cmd->add_flag("--exact", exact, "include the exact oracle when within limits");
    compare_cmd->add_option("--fov", fov);
    add_format(compare_cmd);

    GenParams batch;
    std::size_t count = 20;
    std::size_t jobs = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::size_t> fovs;
    auto* report_cmd = app.add_subcommand("report", "aggregate policies over a batch of seeds");
    report_cmd->add_option("--seed", batch.seed, "first seed");
    report_cmd->add_option("--count", count, "number of seeds")->check(CLI::PositiveNumber);
    report_cmd->add_option("--sectors", batch.n_sectors);
    report_cmd->add_option("--fov", fovs, "field-of-view half widths, repeatable");
    report_cmd->add_option("--cycles", cycles)->check(CLI::Range(2, 1000000));
    report_cmd->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
    report_cmd->add_option("--out", out_path)->required();
    add_format(report_cmd);

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    }

    try {
        if (*gen_cmd) {
            gen.hotspots = parse_hotspots(hotspots);
            write_scenario(generate(gen), gen_out);
        } else if (*schedule_cmd) {
            const auto s = load(scenario_path, fov);
            if (policy == "edf") throw InvalidInput("edf is an online policy with no partition");
            const auto partition = policy == "greedy" ? equalize(s) : broadside_baseline(s);
            const auto report = load_report(s, partition);
            write_partition(partition, out_path);
            const fs::path report_path =
                side_path.empty() ? sibling(out_path, format == "json" ? ".load.json" : ".load.csv") : fs::path(side_path);
            if (format == "json") {
                nlohmann::json doc = nlohmann::json::array();
                for (std::size_t i = 0; i < report.sectors.size(); ++i)
                    doc.push_back({{"sector", i},
                                   {"absolute_load", format_number(report.sectors[i].absolute_load)},
                                   {"target", format_number(report.sectors[i].target)},
                                   {"relative_load", format_number(report.sectors[i].relative_load)}});
                write_text(report_path, doc.dump(2) + "\n");
            } else {
                write_load_report(report, report_path);
            }
            out << "max relative load " << format_number(report.max_relative_load) << "\n";
        } else if (*simulate_cmd) {
            const auto s = load(scenario_path, fov);
            SimulationTrace trace;
            if (policy == "greedy") {
                const auto partition = partition_path.empty() ? equalize(s) : read_partition(partition_path);
                trace = simulate(s, SimPolicy::partition_driven, &partition, cycles);
            } else {
                if (!partition_path.empty()) throw InvalidInput("--partition only applies to the greedy policy");
                trace = simulate(s, policy == "edf" ? SimPolicy::edf : SimPolicy::broadside, nullptr, cycles);
            }
            for (const auto& w : trace.warnings) err << "warning: " << w << "\n";
            write_trace(trace, out_path);
            if (cycles >= 2) {
                const fs::path stats_path = side_path.empty() ? sibling(out_path, ".revisit.csv") : fs::path(side_path);
                const auto stats = revisit_stats(trace, s);
                write_revisit_stats(stats, stats_path);
                out << "worst revisit " << format_number(stats.max_rotations) << " rotations\n";
            }
        } else if (*compare_cmd) {
            const auto s = load(scenario_path, fov);
            std::string note;
            const auto rows = compare_policies(s, cycles, exact, &note);
            if (!note.empty()) err << note << "\n";
            write_text(out_path, rows_to_text(rows, format));
        } else if (*report_cmd) {
            if (fovs.empty()) fovs.push_back(batch.fov_half_width);
            std::vector<ReportRow> rows;
            for (std::size_t f : fovs) {
                auto per_seed = parallel_map(count, jobs, [&](std::size_t i) {
                    GenParams p = batch;
                    p.seed = batch.seed + i;
                    p.fov_half_width = f;
                    return compare_policies(generate(p), cycles, false);
                });
                for (std::size_t k = 0; k < per_seed.front().size(); ++k) {
                    ReportRow r;
                    r.fov = f;
                    r.policy = per_seed.front()[k].policy;
                    r.seeds = count;
                    for (const auto& seed_rows : per_seed) {
                        const auto& c = seed_rows[k];
                        r.mean_max_relative_load += c.max_relative_load;
                        r.max_max_relative_load = std::max(r.max_max_relative_load, c.max_relative_load);
                        r.mean_worst_revisit_rotations += c.worst_revisit_rotations;
                        r.max_worst_revisit_rotations =
                            std::max(r.max_worst_revisit_rotations, c.worst_revisit_rotations);
                        r.mean_completion_pass += static_cast<double>(c.completion_pass);
                    }
                    const auto n = static_cast<double>(count);
                    r.mean_max_relative_load /= n;
                    r.mean_worst_revisit_rotations /= n;
                    r.mean_completion_pass /= n;
                    rows.push_back(r);
                }
            }
            write_text(out_path, report_to_text(rows, format));
        }
    } catch (const InfeasibleScenario& e) {
        err << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const LimitsExceeded& e) {
        err << "limits exceeded: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitOk;
}

}  // namespace sectorsched::cli
