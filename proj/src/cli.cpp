#include "dpm/cli.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "dpm/bench.hpp"
#include "dpm/config.hpp"
#include "dpm/report.hpp"
#include "dpm/sweep.hpp"
#include "dpm/verify.hpp"

namespace dpm {

namespace {

namespace fs = std::filesystem;

struct ScenarioOptions {
    std::string preset;
    std::string config;
    std::optional<std::uint64_t> events;
    std::optional<std::uint64_t> seed;
    std::optional<double> delta_t;
    std::string slo;
};

void add_scenario_options(CLI::App& cmd, ScenarioOptions& o, bool with_slo) {
    auto* preset = cmd.add_option("--preset", o.preset, "Built-in scenario name (see `presets list`)");
    auto* config = cmd.add_option("--config", o.config, "Scenario JSON file");
    preset->excludes(config);
    cmd.add_option("--events", o.events, "Number of generated events")->check(CLI::PositiveNumber);
    cmd.add_option("--seed", o.seed, "Workload seed");
    cmd.add_option("--delta-t", o.delta_t, "Time between triggers")->check(CLI::PositiveNumber);
    if (with_slo) cmd.add_option("--slo", o.slo, "Objective as <cpu|memory|network>:<threshold>");
}

ServiceLevelObjective parse_slo(const std::string& text, ServiceLevelObjective slo) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw ConfigError("--slo expects <resource>:<threshold>");
    slo.resource = parse_resource(text.substr(0, colon));
    try {
        std::size_t used = 0;
        slo.threshold = std::stod(text.substr(colon + 1), &used);
        if (used != text.size() - colon - 1) throw std::invalid_argument("trailing");
    } catch (const std::logic_error&) {
        throw ConfigError("invalid SLO threshold '" + text.substr(colon + 1) + "'");
    }
    validate_slo(slo);
    return slo;
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> grid;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            grid.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument("trailing");
        } catch (const std::logic_error&) {
            throw ConfigError("invalid grid value '" + item + "'");
        }
    }
    validate_grid(grid);
    return grid;
}

ScenarioConfig apply_overrides(ScenarioConfig c, const ScenarioOptions& o) {
    if (o.events) {
        if (!c.workload.model) throw ConfigError("--events needs a generated workload");
        c.run.n_events = *o.events;
    }
    if (o.seed) c.run.seed = *o.seed;
    if (o.delta_t) c.run.delta_t = *o.delta_t;
    if (!o.slo.empty()) c.slo = parse_slo(o.slo, c.slo);
    validate_scenario(c);
    return c;
}

ScenarioConfig resolve_scenario(const ScenarioOptions& o) {
    if (o.preset.empty() && o.config.empty()) throw ConfigError("one of --preset or --config is required");
    auto base = o.preset.empty() ? load_scenario_file(o.config) : preset_by_name(o.preset);
    return apply_overrides(std::move(base), o);
}

/// Writes through a sibling temporary and renames it into place.
void write_atomically(const fs::path& path, const std::function<void(std::ostream&)>& body) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
        if (!file) throw ConfigError("cannot write " + tmp.string());
        body(file);
        file.flush();
        if (!file) throw ConfigError("failed writing " + tmp.string());
    }
    fs::rename(tmp, path);
}

struct RunOptions {
    ScenarioOptions scenario;
    std::string out = ".";
    bool verify = false;
    bool traces = false;
    bool plot = false;
};

int cmd_run(const RunOptions& o, std::ostream& out, std::ostream& err) {
    const auto config = resolve_scenario(o.scenario);
    const auto stream = make_stream(config);
    const auto outcome = simulate(config, stream);
    const fs::path dir = o.out;

    write_atomically(dir / "metrics.csv", [&](std::ostream& f) { write_metrics_csv(f, outcome.metrics); });
    write_atomically(dir / "summary.csv", [&](std::ostream& f) { write_summary_csv(f, outcome); });
    write_atomically(dir / "scenario.json", [&](std::ostream& f) { f << emit_scenario(config); });
    if (o.traces) write_atomically(dir / "traces.csv", [&](std::ostream& f) { write_traces_csv(f, outcome.result.traces); });
    if (o.plot) write_atomically(dir / "plot.csv", [&](std::ostream& f) { write_plot_csv(f, outcome.metrics); });

    out << config.name << ": " << stream.size() << " events, " << outcome.result.models.size() << " model requests, "
        << outcome.metrics.size() << " triggers\n";
    if (!o.verify) return exit_ok;

    const auto report = verify_outcome(config, stream, outcome);
    for (const auto& f : report.failures) err << "verify: " << f << "\n";
    out << "verify: " << (report.ok() ? "ok" : "FAILED") << " (" << report.models_checked << " models, "
        << report.steps_checked << " steps)\n";
    return report.ok() ? exit_ok : exit_failed_check;
}

struct SweepOptionsCli {
    ScenarioOptions scenario;
    std::string out = ".";
    std::string grid;
    std::string mode = "capacity";
    std::string search = "linear";
    unsigned jobs = 1;
    bool metrics = false;
};

int cmd_sweep(const SweepOptionsCli& o, std::ostream& out, std::ostream&) {
    const auto grid = parse_grid(o.grid);
    const auto config = resolve_scenario(o.scenario);
    const auto stream = make_stream(config);
    SweepOptions opts;
    opts.mode = o.search == "bisect" ? SearchMode::bisect : SearchMode::linear;
    opts.jobs = o.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : o.jobs;

    const bool capacity = o.mode == "capacity";
    const auto result = capacity ? load_capacity(config, stream, config.slo, grid, opts)
                                 : resource_demand(config, stream, config.slo, 1.0 / config.run.delta_t, grid, opts);

    const fs::path dir = o.out;
    write_atomically(dir / "sweep.csv", [&](std::ostream& f) { write_sweep_csv(f, result, config.slo); });
    if (o.metrics) {
        for (std::size_t i = 0; i < result.points.size(); ++i) {
            write_atomically(dir / ("sweep_point_" + std::to_string(i + 1) + ".csv"),
                             [&](std::ostream& f) { write_metrics_csv(f, result.points[i].metrics); });
        }
    }

    const char* label = capacity ? "capacity" : "demand";
    if (!result.selected) {
        out << label << ": infeasible\n";
        return exit_failed_check;
    }
    out << label << ": " << format_number(*result.selected) << "\n";
    return exit_ok;
}

struct CompareOptions {
    std::vector<std::string> presets;
    std::optional<std::uint64_t> events;
    std::optional<std::uint64_t> seed;
    std::optional<double> delta_t;
    std::string out = ".";
    bool verify = false;
};

int cmd_compare(const CompareOptions& o, std::ostream& out, std::ostream& err) {
    std::vector<std::string> names = o.presets;
    if (names.empty()) {
        for (auto a : all_algorithms()) names.push_back(factory_preset(a).name);
    }
    if (names.size() < 2) throw ConfigError("compare needs at least two presets");

    std::vector<ScenarioConfig> configs;
    for (const auto& n : names) {
        ScenarioOptions so;
        so.preset = n;
        so.events = o.events;
        so.seed = o.seed;
        so.delta_t = o.delta_t;
        configs.push_back(resolve_scenario(so));
    }
    for (std::size_t i = 1; i < configs.size(); ++i) {
        if (!same_workload(configs.front(), configs[i])) {
            throw WorkloadMismatch("presets '" + names.front() + "' and '" + names[i] + "' use different workloads");
        }
    }

    const auto stream = make_stream(configs.front());
    std::vector<std::pair<std::string, MetricsSeries>> runs;
    std::vector<std::pair<AlgorithmName, MetricsSeries>> by_algorithm;
    for (const auto& c : configs) {
        auto outcome = simulate(c, stream);
        runs.emplace_back(c.name, outcome.metrics);
        by_algorithm.emplace_back(c.algorithm, std::move(outcome.metrics));
    }
    const auto trends = trend_report(by_algorithm);

    const fs::path dir = o.out;
    write_atomically(dir / "compare.csv", [&](std::ostream& f) { write_compare_csv(f, runs); });
    write_atomically(dir / "trends.csv", [&](std::ostream& f) {
        f << "check,passed,detail\n";
        for (const auto& t : trends) f << '"' << t.name << "\"," << (t.passed ? "true" : "false") << ",\"" << t.detail << "\"\n";
    });

    bool all = true;
    for (const auto& t : trends) {
        out << (t.passed ? "PASS " : "FAIL ") << t.name;
        if (!t.detail.empty()) out << " [" << t.detail << "]";
        out << "\n";
        all = all && t.passed;
    }
    if (o.verify && !all) {
        err << "compare: trend check failed\n";
        return exit_failed_check;
    }
    return exit_ok;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Simulator for distributed directly-follows discovery", "dpm_bench"};
    app.require_subcommand(1);

    RunOptions run_opts;
    auto* run = app.add_subcommand("run", "Simulate one scenario and write metrics.csv and summary.csv");
    add_scenario_options(*run, run_opts.scenario, true);
    run->add_option("--out", run_opts.out, "Output directory");
    run->add_flag("--verify", run_opts.verify, "Check models against the offline oracle and costs against the topology");
    run->add_flag("--traces", run_opts.traces, "Also write traces.csv");
    run->add_flag("--plot", run_opts.plot, "Also write plot.csv");

    SweepOptionsCli sweep_opts;
    auto* sweep = app.add_subcommand("sweep", "Search load capacity or resource demand under an objective");
    add_scenario_options(*sweep, sweep_opts.scenario, true);
    sweep->add_option("--out", sweep_opts.out, "Output directory");
    sweep->add_option("--grid", sweep_opts.grid, "Comma-separated ascending grid")->required();
    sweep->add_option("--mode", sweep_opts.mode, "capacity: grid of loads; demand: grid of capacity scales at load 1/delta-t")
        ->check(CLI::IsMember({"capacity", "demand"}));
    sweep->add_option("--search", sweep_opts.search, "linear or bisect")->check(CLI::IsMember({"linear", "bisect"}));
    sweep->add_option("--jobs", sweep_opts.jobs, "Worker threads for linear sweeps (0: all cores)");
    sweep->add_flag("--metrics", sweep_opts.metrics, "Write per-point metrics");

    CompareOptions compare_opts;
    auto* compare = app.add_subcommand("compare", "Run several presets on one stream and check the expected trends");
    compare->add_option("--preset", compare_opts.presets, "Preset to include (repeatable; default: all factory presets)");
    compare->add_option("--events", compare_opts.events, "Number of generated events")->check(CLI::PositiveNumber);
    compare->add_option("--seed", compare_opts.seed, "Workload seed");
    compare->add_option("--delta-t", compare_opts.delta_t, "Time between triggers")->check(CLI::PositiveNumber);
    compare->add_option("--out", compare_opts.out, "Output directory");
    compare->add_flag("--verify", compare_opts.verify, "Exit with 2 when a trend check fails");

    auto* presets = app.add_subcommand("presets", "Built-in scenarios");
    presets->require_subcommand(1);
    auto* presets_list = presets->add_subcommand("list", "Print preset names");

    ScenarioOptions emit_opts;
    std::string emit_out;
    auto* config = app.add_subcommand("config", "Scenario documents");
    config->require_subcommand(1);
    auto* emit = config->add_subcommand("emit", "Print the effective scenario as JSON");
    add_scenario_options(*emit, emit_opts, true);
    emit->add_option("--out", emit_out, "Write to this file instead of standard output");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*run) return cmd_run(run_opts, out, err);
        if (*sweep) return cmd_sweep(sweep_opts, out, err);
        if (*compare) return cmd_compare(compare_opts, out, err);
        if (*presets_list) {
            for (const auto& n : preset_names()) out << n << "\n";
            return exit_ok;
        }
        if (*emit) {
            const auto text = emit_scenario(resolve_scenario(emit_opts));
            if (emit_out.empty()) out << text;
            else write_atomically(emit_out, [&](std::ostream& f) { f << text; });
            return exit_ok;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}

}  // namespace dpm
