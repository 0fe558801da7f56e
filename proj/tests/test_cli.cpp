#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "fdsched/errors.hpp"
#include "fdsched/scenario.hpp"
#include "json.hpp"

using namespace fdsched;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::initializer_list<std::string> args) {
    std::vector<std::string> storage{"fdsched"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : storage) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("fdsched-cli-" + std::to_string(std::rand()) + "-" +
                                            std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("axis value lists") {
    CHECK(cli::parse_axis_values("0,1,2,3,4") == std::vector<double>{0, 1, 2, 3, 4});
    CHECK(cli::parse_axis_values("-6..-1") == std::vector<double>{-6, -5, -4, -3, -2, -1});
    CHECK(cli::parse_axis_values("3..1") == std::vector<double>{3, 2, 1});
    CHECK(cli::parse_axis_values("30,40,...,90") == std::vector<double>{30, 40, 50, 60, 70, 80, 90});
    CHECK(cli::parse_axis_values("0.5") == std::vector<double>{0.5});
    CHECK_THROWS_AS(cli::parse_axis_values(""), ConfigError);
    CHECK_THROWS_AS(cli::parse_axis_values("1,,2"), ConfigError);
    CHECK_THROWS_AS(cli::parse_axis_values("30,...,90"), ConfigError);
    CHECK_THROWS_AS(cli::parse_axis_values("30,40,...,95"), ConfigError);
    CHECK_THROWS_AS(cli::parse_axis_values("x"), ConfigError);
}

TEST_CASE("scheduler lists") {
    CHECK(cli::parse_schedulers("tdma,fdp") == std::vector<SchedulerKind>{SchedulerKind::Tdma, SchedulerKind::Fdp});
    CHECK_THROWS_AS(cli::parse_schedulers(""), ConfigError);
    CHECK_THROWS_AS(cli::parse_schedulers("tdma,greedy"), ConfigError);
}

TEST_CASE("help lists defaults with units") {
    const auto r = invoke({"sweep-sigma", "--help"});
    CHECK(r.code == 0);
    for (const char* needle : {"[Gbps]", "[us]", "[deg]", "[dBm/MHz]", "[mW]", "[MHz]", "[-6..-1]", "[90]", "[0.001]",
                               "[2000]", "[18]", "[850]", "[30]", "[-134]", "[1200]", "[1000]"}) {
        CAPTURE(needle);
        CHECK(r.out.find(needle) != std::string::npos);
    }
}

TEST_CASE("usage errors exit 2 and write nothing") {
    TempDir dir;
    const auto out = (dir.path / "rows.csv").string();
    CHECK(invoke({}).code == cli::kExitUsage);
    CHECK(invoke({"frobnicate"}).code == cli::kExitUsage);
    CHECK(invoke({"sweep-flows", "--trials", "many"}).code == cli::kExitUsage);
    CHECK(invoke({"sweep-flows", "--schedulers", "", "--out", out}).code == cli::kExitUsage);
    CHECK(invoke({"sweep-flows", "--schedulers", "bogus", "--out", out}).code == cli::kExitUsage);
    CHECK(invoke({"sweep-beta", "--magnitudes", "1,,2", "--out", out}).code == cli::kExitUsage);
    CHECK(invoke({"run", "--format", "xml", "--out", out}).code == cli::kExitUsage);
    CHECK_FALSE(fs::exists(out));
}

TEST_CASE("validation and io failures exit 1") {
    TempDir dir;
    CHECK(invoke({"generate", "--bs", "1"}).code == cli::kExitFailure);
    CHECK(invoke({"run", "--scenario", (dir.path / "missing.json").string()}).code == cli::kExitFailure);
    CHECK(invoke({"sweep-flows", "--values", "10", "--trials", "1", "--out", (dir.path / "no/such/dir.csv").string()})
              .code == cli::kExitFailure);

    Scenario s = generate(1, GenerationParams{});
    s.flows[0].rx = s.flows[0].tx;
    const auto bad = dir.path / "bad.json";
    std::ofstream(bad) << to_json(s);
    const auto r = invoke({"validate", bad.string()});
    CHECK(r.code == cli::kExitFailure);
    CHECK(r.out.find("self-flow") != std::string::npos);
    CHECK(invoke({"run", "--scenario", bad.string()}).code == cli::kExitFailure);
}

TEST_CASE("generate, validate, run") {
    TempDir dir;
    const auto scenario = dir.path / "s.json";
    REQUIRE(invoke({"generate", "--seed", "5", "--flows", "12", "--out", scenario.string()}).code == 0);
    const std::string text = slurp(scenario);
    CHECK(scenario_from_json(text) == [] {
        GenerationParams p;
        p.num_flows = 12;
        return generate(5, p);
    }());

    const auto v = invoke({"validate", scenario.string()});
    CHECK(v.code == 0);
    CHECK(v.out == "ok\n");

    const auto r = invoke({"run", "--scenario", scenario.string(), "--schedule-dir", dir.path.string()});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("scheduler,axis,axis_value,trial,seed,completed,throughput_gbps\n", 0) == 0);
    CHECK(fs::exists(dir.path / "proposed-fd.schedule.json"));
    CHECK(fs::exists(dir.path / "fdp.schedule.json"));
    CHECK(slurp(scenario) == text);

    const auto j = invoke({"run", "--scenario", scenario.string(), "--format", "json", "--schedulers", "tdma"});
    CHECK(j.code == 0);
    const auto parsed = nlohmann::json::parse(j.out);
    REQUIRE(parsed.size() == 1);
    CHECK(parsed[0]["scheduler"] == "tdma");
}

TEST_CASE("sweep output is byte-identical across runs and worker counts") {
    TempDir dir;
    const auto a = dir.path / "a.csv";
    const auto b = dir.path / "b.csv";
    const auto agg = dir.path / "agg.csv";
    REQUIRE(invoke({"sweep-sigma", "--magnitudes=-4..-2", "--flows", "15", "--trials", "3", "--workers", "1",
                    "--quiet", "--out", a.string(), "--aggregate-out", agg.string()})
                .code == 0);
    REQUIRE(invoke({"sweep-sigma", "--magnitudes", "-4..-2", "--flows", "15", "--trials", "3", "--workers", "3",
                    "--out", b.string()})
                .code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(agg).rfind("scheduler,axis_value,mean_completed", 0) == 0);

    const auto to_stdout = invoke({"sweep-sigma", "--magnitudes", "-4..-2", "--flows", "15", "--trials", "3", "--quiet"});
    CHECK(to_stdout.out == slurp(a));
    CHECK(to_stdout.err.empty());
}

TEST_CASE("progress goes to stderr only") {
    const auto r = invoke({"sweep-flows", "--values", "5,6", "--trials", "2", "--schedulers", "tdma"});
    CHECK(r.code == 0);
    CHECK(r.err.find("4/4") != std::string::npos);
    CHECK(r.out.find('[') == std::string::npos);
}

TEST_CASE("output directory from the environment") {
    TempDir dir;
    ::setenv(cli::kOutputDirEnv, dir.path.string().c_str(), 1);
    const auto r = invoke({"sweep-beta", "--magnitudes", "0,1", "--flows", "10", "--trials", "2", "--quiet"});
    ::unsetenv(cli::kOutputDirEnv);
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    CHECK(fs::exists(dir.path / "sweep-beta.csv"));
    CHECK(fs::exists(dir.path / "sweep-beta_aggregate.csv"));
}

TEST_CASE("oracle command") {
    TempDir dir;
    const auto path = dir.path / "tiny.json";
    REQUIRE(invoke({"generate", "--flows", "3", "--bs", "4", "--slots", "5", "--qos-low", "0.2", "--qos-high", "0.8",
                    "--out", path.string()})
                .code == 0);
    const auto r = invoke({"oracle", path.string()});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    const int best = j["optimum"].get<int>();
    for (const auto& [name, count] : j["schedulers"].items()) CHECK(count.get<int>() <= best);

    const auto big = dir.path / "big.json";
    REQUIRE(invoke({"generate", "--flows", "9", "--out", big.string()}).code == 0);
    CHECK(invoke({"oracle", big.string()}).code == cli::kExitFailure);
}

}  // TEST_SUITE
