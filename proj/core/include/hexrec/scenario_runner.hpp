#pragma once

#include <iosfwd>
#include <optional>

#include "hexrec/config_io.hpp"

namespace hexrec {

/// CLI exit codes, a stable contract.
enum ExitCode : int {
    kExitOk = 0,
    kExitUnrecoverable = 1,
    kExitConfigError = 2,
};

struct RunOptions {
    bool dry_run = false;
    bool degrees = false;   // display conversion only; stored artifacts stay SI/radians
    int parallel_seeds = 1;
    std::optional<std::vector<std::uint64_t>> seed_override;
    std::optional<std::filesystem::path> out_override;
};

/// Run every seed of the scenario and write per-seed artifacts
/// (result.json, convergence.csv, trajectory.csv, params.json) into
/// <out_dir>/seed_<seed>/.
int run_scenario(const Scenario& sc, const RunOptions& opt, std::ostream& log);

struct ReplayOptions {
    std::filesystem::path params_path;
    std::optional<std::string> morphology;           // default: as recorded in the params file
    std::optional<std::filesystem::path> geometry;   // default: built-in geometry
    std::filesystem::path out_csv = "replay_trajectory.csv";
    std::optional<std::filesystem::path> joints_csv; // per-leg joint angles via the leg IK
    std::optional<std::filesystem::path> tips_csv;   // one cycle of tip references
    bool degrees = false;
};

/// Re-simulate a saved parameter set; byte-identical to the recovery run's
/// trajectory artifact for the same inputs.
int run_replay(const ReplayOptions& opt, std::ostream& log);

}  // namespace hexrec
