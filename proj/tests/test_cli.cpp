#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dpm/bench.hpp"
#include "dpm/cli.hpp"
#include "dpm/config.hpp"

using namespace dpm;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code;
    std::string out, err;
};

CliResult cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    auto dir = fs::temp_directory_path() / ("dpm_cli_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(slurp(p));
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

std::size_t column(const std::vector<std::string>& header, const std::string& name) {
    return static_cast<std::size_t>(std::find(header.begin(), header.end(), name) - header.begin());
}

}  // namespace

TEST_CASE("run on the worked example verifies and reports 34 at trigger 2") {
    const auto dir = scratch("worked");
    auto r = cli({"run", "--preset", "worked-example", "--verify", "--out", dir.string()});
    CHECK(r.code == exit_ok);
    CHECK(r.out.find("verify: ok") != std::string::npos);
    const auto rows = read_csv(dir / "metrics.csv");
    REQUIRE(rows.size() == 4);
    CHECK(rows[0][0] == "trigger_index");
    CHECK(rows[0][2] == "processing_time");
    CHECK(rows[2][0] == "2");
    CHECK(rows[2][1] == "event");
    CHECK(rows[2][2] == "34.000000000");
    CHECK(rows[3][1] == "request");
    CHECK(rows[2][column(rows[0], "n0_net_util")] == "0.100000000");

    const auto summary = slurp(dir / "summary.csv");
    CHECK(summary.rfind("kind,from,to,value\nedge,a0,a1,1\n", 0) == 0);
    CHECK(fs::exists(dir / "scenario.json"));
    CHECK_FALSE(fs::exists(dir / "metrics.csv.tmp"));
}

TEST_CASE("run output is deterministic") {
    const auto a = scratch("det_a"), b = scratch("det_b");
    for (const auto& dir : {a, b}) {
        auto r = cli({"run", "--preset", "factory-cloud", "--events", "100", "--seed", "1", "--out", dir.string(),
                      "--traces", "--plot"});
        REQUIRE(r.code == exit_ok);
    }
    for (const char* f : {"metrics.csv", "summary.csv", "traces.csv", "plot.csv", "scenario.json"}) {
        INFO(f);
        CHECK(slurp(a / f) == slurp(b / f));
    }
}

TEST_CASE("memory columns are nondecreasing") {
    const auto dir = scratch("mem");
    REQUIRE(cli({"run", "--preset", "factory-edge", "--events", "1000", "--out", dir.string()}).code == exit_ok);
    const auto rows = read_csv(dir / "metrics.csv");
    for (std::size_t c = 0; c < rows[0].size(); ++c) {
        if (rows[0][c].find("_mem_util") == std::string::npos) continue;
        for (std::size_t r = 2; r < rows.size(); ++r) CHECK(std::stod(rows[r][c]) >= std::stod(rows[r - 1][c]));
    }
}

TEST_CASE("emitted config reproduces the run") {
    const auto dir = scratch("emit");
    auto e = cli({"config", "emit", "--preset", "factory-edgeminer", "--events", "200", "--seed", "3", "--out",
                  (dir / "s.json").string()});
    REQUIRE(e.code == exit_ok);
    REQUIRE(cli({"run", "--config", (dir / "s.json").string(), "--out", (dir / "a").string()}).code == exit_ok);
    REQUIRE(cli({"run", "--preset", "factory-edgeminer", "--events", "200", "--seed", "3", "--out",
                 (dir / "b").string()})
                .code == exit_ok);
    CHECK(slurp(dir / "a" / "metrics.csv") == slurp(dir / "b" / "metrics.csv"));
    CHECK(slurp(dir / "a" / "scenario.json") == slurp(dir / "s.json"));

    auto stdout_emit = cli({"config", "emit", "--preset", "worked-example"});
    CHECK(parse_scenario(stdout_emit.out) == worked_example_preset());
}

TEST_CASE("usage and config errors exit with 1") {
    CHECK(cli({}).code == exit_usage);
    CHECK(cli({"frobnicate"}).code == exit_usage);
    CHECK(cli({"run"}).code == exit_usage);
    CHECK(cli({"run", "--preset", "nope"}).code == exit_usage);
    CHECK(cli({"run", "--preset", "worked-example", "--config", "x.json"}).code == exit_usage);
    CHECK(cli({"run", "--config", "/nonexistent.json"}).code == exit_usage);
    CHECK(cli({"run", "--preset", "worked-example", "--events", "5"}).code == exit_usage);
    CHECK(cli({"run", "--preset", "factory-edge", "--slo", "network"}).code == exit_usage);
    CHECK(cli({"run", "--preset", "factory-edge", "--slo", "network:2"}).code == exit_usage);
    CHECK(cli({"sweep", "--preset", "factory-edge", "--grid", ""}).code == exit_usage);
    CHECK(cli({"sweep", "--preset", "factory-edge", "--grid", "2,1"}).code == exit_usage);
    CHECK(cli({"sweep", "--preset", "factory-edge", "--grid", "1", "--mode", "speed"}).code == exit_usage);
    CHECK(cli({"compare", "--preset", "factory-edge"}).code == exit_usage);
    CHECK(cli({"--help"}).code == exit_ok);

    const auto dir = scratch("bad");
    std::ofstream(dir / "bad.json") << "{\"topology\": 3}";
    auto r = cli({"run", "--config", (dir / "bad.json").string()});
    CHECK(r.code == exit_usage);
    CHECK_FALSE(r.err.empty());
}

TEST_CASE("presets list") {
    auto r = cli({"presets", "list"});
    CHECK(r.code == exit_ok);
    std::string expected;
    for (const auto& n : preset_names()) expected += n + "\n";
    CHECK(r.out == expected);
}

TEST_CASE("sweep reports the grid maximum when everything passes") {
    const auto dir = scratch("sweep_max");
    auto r = cli({"sweep", "--preset", "factory-cloud", "--events", "200", "--grid", "0.5,1,2", "--out", dir.string()});
    CHECK(r.code == exit_ok);
    CHECK(r.out == "capacity: 2.000000000\n");
    const auto rows = read_csv(dir / "sweep.csv");
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == std::vector<std::string>{"grid_value", "slo_resource", "threshold", "satisfied", "peak_utilization"});
    CHECK(rows[3][3] == "true");
}

TEST_CASE("infeasible demand exits with 2") {
    const auto dir = scratch("sweep_inf");
    auto r = cli({"sweep", "--preset", "factory-edge", "--events", "200", "--mode", "demand", "--delta-t", "0.01",
                  "--grid", "1,2", "--out", dir.string()});
    CHECK(r.code == exit_failed_check);
    CHECK(r.out == "demand: infeasible\n");
}

TEST_CASE("parallel sweeps write identical files") {
    const auto a = scratch("par_a"), b = scratch("par_b");
    for (auto [dir, jobs] : {std::pair{a, "1"}, std::pair{b, "4"}}) {
        REQUIRE(cli({"sweep", "--preset", "factory-fog", "--events", "300", "--grid", "1,2,4,8,16,32", "--jobs", jobs,
                     "--metrics", "--out", dir.string()})
                    .code == exit_ok);
    }
    CHECK(slurp(a / "sweep.csv") == slurp(b / "sweep.csv"));
    for (int i = 1; i <= 6; ++i) {
        const auto f = "sweep_point_" + std::to_string(i) + ".csv";
        CHECK(slurp(a / f) == slurp(b / f));
    }
}

TEST_CASE("compare writes joined curves and passes the trend report") {
    const auto dir = scratch("compare");
    auto r = cli({"compare", "--verify", "--out", dir.string()});
    CHECK(r.code == exit_ok);
    CHECK(r.out.find("FAIL") == std::string::npos);
    const auto rows = read_csv(dir / "compare.csv");
    REQUIRE(rows.size() == 1101);
    CHECK(rows[0].size() == 2 + 4 * 4);
    CHECK(column(rows[0], "factory-edgeminer_net_mean") < rows[0].size());
    CHECK(fs::exists(dir / "trends.csv"));
}
