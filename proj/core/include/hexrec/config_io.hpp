#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hexrec/de_optimizer.hpp"

namespace hexrec {

/// Raised for malformed or unreadable configuration and artifact files.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Joint-controller gains carried through configs as metadata; the
/// quasi-static engine does not consume them.
struct ServoPid {
    double kp = 500.0;
    double kd = 1.0;
    double ki = 10.0;
};

/// One batch experiment: a damaged morphology plus every knob of the
/// recovery run and the seeds to repeat it with.
struct Scenario {
    std::string name;
    Morphology morphology = Morphology::healthy();
    RobotGeometry geometry = RobotGeometry::defaults();
    double gait_period = 2.0;
    ParamBounds bounds = ParamBounds::defaults();
    ObjectiveWeights weights;
    SimConfig sim;
    DeConfig de;  // seed field is overridden per run
    std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    std::filesystem::path out_dir;
    std::optional<ServoPid> servo_pid;
};

RobotGeometry load_geometry(const std::filesystem::path& path);
Scenario load_scenario(const std::filesystem::path& path);

/// A recovered parameter set together with everything needed to re-simulate
/// it deterministically.
struct SavedParams {
    GaitParams params;
    Morphology morphology = Morphology::healthy();
    double gait_period = 2.0;
    SimConfig sim;
};

void save_params(const std::filesystem::path& path, const SavedParams& sp);
SavedParams load_params(const std::filesystem::path& path);

void write_result_json(const std::filesystem::path& path, const Scenario& sc,
                       const RecoveryResult& result);
void write_convergence_csv(const std::filesystem::path& path, const RecoveryResult& result);
void write_trajectory_csv_file(const std::filesystem::path& path, const BodyTrajectory& traj);

}  // namespace hexrec
