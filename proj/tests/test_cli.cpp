#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace std::string_literals;
namespace fs = std::filesystem;

namespace {

const std::string kCli = HEXREC_CLI_PATH;
const fs::path kScenarioDir = HEXREC_SCENARIO_DIR;

struct CommandResult {
    int exit_code = -1;
    std::string output;
};

CommandResult run(const std::string& args) {
    const fs::path out = fs::temp_directory_path() / "hexrec_cli_out.txt";
    const std::string cmd = kCli + " " + args + " > " + out.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    std::ifstream in(out);
    std::ostringstream os;
    os << in.rdbuf();
    return {WEXITSTATUS(status), os.str()};
}

fs::path work_dir() {
    const fs::path dir = fs::temp_directory_path() / "hexrec_cli_test";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

/// A small scenario (reduced population/generations) for fast CLI runs.
fs::path write_small_scenario(const std::string& name, const std::string& morphology) {
    const fs::path p = work_dir() / (name + ".json");
    std::ofstream out(p);
    out << R"({
  "name": ")" << name << R"(",
  "morphology": ")" << morphology << R"(",
  "geometry": ")" << (kScenarioDir / "geometry" / "default.json").string() << R"(",
  "de": {"population_size": 8, "generations": 4},
  "seeds": [7],
  "out_dir": ")" << (work_dir() / ("runs_" + name)).string() << R"("
})";
    return p;
}

}  // namespace

TEST_CASE("dry run prints the schedule and exits cleanly") {
    const auto r = run("recover --scenario " + (kScenarioDir / "leg_4.json").string() +
                       " --dry-run");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("sigma=3") != std::string::npos);
    CHECK(r.output.find("swings") != std::string::npos);
}

TEST_CASE("unrecoverable morphology exits 1 citing the side condition") {
    const fs::path p = write_small_scenario("unrec", "101011");
    const auto r = run("recover --scenario " + p.string());
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("even-indexed side") != std::string::npos);
}

TEST_CASE("config errors exit 2") {
    CHECK(run("recover --scenario /nonexistent/path.json").exit_code == 2);
    const fs::path bad = work_dir() / "bad.json";
    std::ofstream(bad) << "{ nope";
    CHECK(run("recover --scenario " + bad.string()).exit_code == 2);
    CHECK(run("replay --params /nonexistent/params.json").exit_code == 2);
}

TEST_CASE("recover produces the four artifacts per seed and replay reproduces them") {
    const fs::path scenario = write_small_scenario("smoke", "111011");
    const auto r = run("recover --scenario " + scenario.string());
    REQUIRE(r.exit_code == 0);

    const fs::path seed_dir = work_dir() / "runs_smoke" / "seed_7";
    for (const char* name :
         {"result.json", "convergence.csv", "trajectory.csv", "params.json"}) {
        CHECK(fs::exists(seed_dir / name));
    }

    SUBCASE("a second run is byte-identical") {
        const std::string traj_before = slurp(seed_dir / "trajectory.csv");
        const std::string result_before = slurp(seed_dir / "result.json");
        const auto again = run("recover --scenario " + scenario.string());
        REQUIRE(again.exit_code == 0);
        CHECK(slurp(seed_dir / "trajectory.csv") == traj_before);
        CHECK(slurp(seed_dir / "result.json") == result_before);
    }

    SUBCASE("replay of the saved params matches the trajectory artifact") {
        const fs::path replay_csv = work_dir() / "replayed.csv";
        const auto rr = run("replay --params " + (seed_dir / "params.json").string() +
                            " --geometry " +
                            (kScenarioDir / "geometry" / "default.json").string() + " --out " +
                            replay_csv.string());
        REQUIRE(rr.exit_code == 0);
        CHECK(slurp(replay_csv) == slurp(seed_dir / "trajectory.csv"));
    }

    SUBCASE("joint and tip exports are written on request") {
        const auto rr = run("replay --params " + (seed_dir / "params.json").string() +
                            " --out " + (work_dir() / "t.csv").string() + " --joints " +
                            (work_dir() / "joints.csv").string() + " --tips " +
                            (work_dir() / "tips.csv").string());
        REQUIRE(rr.exit_code == 0);
        const std::string joints = slurp(work_dir() / "joints.csv");
        CHECK(joints.find("t,leg,hip_yaw,femur_pitch,tibia_pitch") == 0);
        const std::string tips = slurp(work_dir() / "tips.csv");
        CHECK(tips.find("leg,k,x,y,z") == 0);
    }
}

TEST_CASE("seed override and parallel seed execution") {
    const fs::path scenario = write_small_scenario("par", "110111");
    const auto serial = run("recover --scenario " + scenario.string() + " --seed 3,5");
    REQUIRE(serial.exit_code == 0);
    const fs::path base = work_dir() / "runs_par";
    const std::string s3 = slurp(base / "seed_3" / "result.json");
    const std::string s5 = slurp(base / "seed_5" / "result.json");
    CHECK(!s3.empty());
    CHECK(s3 != s5);

    const auto parallel =
        run("recover --scenario " + scenario.string() + " --seed 3,5 --parallel 2");
    REQUIRE(parallel.exit_code == 0);
    CHECK(slurp(base / "seed_3" / "result.json") == s3);
    CHECK(slurp(base / "seed_5" / "result.json") == s5);
}

TEST_CASE("degrees flag changes the printed summary only") {
    const fs::path scenario = write_small_scenario("deg", "111011");
    const auto rad = run("recover --scenario " + scenario.string());
    REQUIRE(rad.exit_code == 0);
    const std::string traj = slurp(work_dir() / "runs_deg" / "seed_7" / "trajectory.csv");
    const auto deg = run("recover --scenario " + scenario.string() + " --degrees");
    REQUIRE(deg.exit_code == 0);
    CHECK(deg.output.find(" deg") != std::string::npos);
    CHECK(rad.output.find(" rad") != std::string::npos);
    // Stored artifacts identical regardless of the display flag.
    CHECK(slurp(work_dir() / "runs_deg" / "seed_7" / "trajectory.csv") == traj);
}
