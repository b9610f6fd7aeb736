#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hexrec/scenario_runner.hpp"

namespace {

int recover_command(const std::string& scenario_path, hexrec::RunOptions opt,
                    const std::vector<std::uint64_t>& seeds, const std::string& out_dir) {
    if (!seeds.empty()) opt.seed_override = seeds;
    if (!out_dir.empty()) opt.out_override = out_dir;
    const hexrec::Scenario sc = hexrec::load_scenario(scenario_path);
    return hexrec::run_scenario(sc, opt, std::cout);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gait recovery for damaged hexapods: plans a stable gait "
                 "sequence, then optimizes leg trajectories against a "
                 "quasi-static locomotion simulation"};
    app.require_subcommand(1);

    // recover
    std::string scenario_path;
    std::vector<std::uint64_t> seeds;
    std::string out_dir;
    hexrec::RunOptions run_opt;
    auto* recover = app.add_subcommand("recover", "run recovery for a scenario config");
    recover->add_option("--scenario", scenario_path, "scenario JSON file")->required();
    recover->add_option("--seed", seeds, "seed list overriding the scenario's seeds")
        ->delimiter(',');
    recover->add_option("--out", out_dir, "output directory override");
    recover->add_flag("--dry-run", run_opt.dry_run,
                      "print the planned gait sequence and exit");
    recover->add_flag("--degrees", run_opt.degrees,
                      "print angles in degrees (stored artifacts stay in radians)");
    recover->add_option("--parallel", run_opt.parallel_seeds, "run up to N seeds concurrently")
        ->check(CLI::PositiveNumber);

    // replay
    hexrec::ReplayOptions replay_opt;
    std::string params_path, morphology, geometry_path, joints_csv, tips_csv;
    auto* replay = app.add_subcommand("replay", "re-simulate a saved parameter set");
    replay->add_option("--params", params_path, "params JSON produced by recover")->required();
    replay->add_option("--morphology", morphology,
                       "morphology string, e.g. 110111 (default: from the params file)");
    replay->add_option("--geometry", geometry_path, "geometry JSON (default: built-in)");
    replay->add_option("--out", replay_opt.out_csv, "trajectory CSV output path");
    replay->add_option("--joints", joints_csv, "also write per-leg joint angles CSV");
    replay->add_option("--tips", tips_csv, "also write one cycle of tip references CSV");
    replay->add_flag("--degrees", replay_opt.degrees, "print angles in degrees");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        // Usage and option errors fall under the config-error exit contract.
        return code == 0 ? 0 : hexrec::kExitConfigError;
    }

    try {
        if (recover->parsed()) {
            return recover_command(scenario_path, run_opt, seeds, out_dir);
        }
        replay_opt.params_path = params_path;
        if (!morphology.empty()) replay_opt.morphology = morphology;
        if (!geometry_path.empty()) replay_opt.geometry = geometry_path;
        if (!joints_csv.empty()) replay_opt.joints_csv = joints_csv;
        if (!tips_csv.empty()) replay_opt.tips_csv = tips_csv;
        return hexrec::run_replay(replay_opt, std::cout);
    } catch (const hexrec::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return hexrec::kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return hexrec::kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return hexrec::kExitConfigError;
    }
}
