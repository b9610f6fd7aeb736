#include "hexrec/config_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hexrec/csv.hpp"

namespace hexrec {

using nlohmann::json;

namespace {

json parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open " + path.string());
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("parse error in " + path.string() + ": " + e.what());
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot write " + path.string());
    }
    out << text;
}

template <typename T>
void maybe_get(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

std::array<double, kNumLegs> get_leg_array(const json& j, const char* key) {
    const auto v = j.at(key).get<std::vector<double>>();
    if (v.size() != kNumLegs) {
        throw ConfigError(std::string(key) + " must have 6 entries");
    }
    std::array<double, kNumLegs> out{};
    std::copy(v.begin(), v.end(), out.begin());
    return out;
}

}  // namespace

RobotGeometry load_geometry(const std::filesystem::path& path) {
    const json j = parse_file(path);
    RobotGeometry g = RobotGeometry::defaults();
    try {
        if (j.contains("link_lengths")) {
            const auto rows = j.at("link_lengths").get<std::vector<std::vector<double>>>();
            if (rows.size() != kNumLegs) throw ConfigError("link_lengths must have 6 rows");
            for (int i = 0; i < kNumLegs; ++i) {
                if (rows[i].size() != 3) throw ConfigError("each link_lengths row needs 3 values");
                g.links[i] = {rows[i][0], rows[i][1], rows[i][2]};
            }
        }
        if (j.contains("hip_positions")) {
            const auto rows = j.at("hip_positions").get<std::vector<std::vector<double>>>();
            if (rows.size() != kNumLegs) throw ConfigError("hip_positions must have 6 rows");
            for (int i = 0; i < kNumLegs; ++i) {
                if (rows[i].size() != 2) throw ConfigError("each hip position needs 2 values");
                g.hip_xy[i] = Eigen::Vector2d(rows[i][0], rows[i][1]);
            }
        }
        if (j.contains("side_sign")) g.side_sign = get_leg_array(j, "side_sign");
        if (j.contains("com_offset")) {
            const auto v = j.at("com_offset").get<std::vector<double>>();
            if (v.size() != 3) throw ConfigError("com_offset needs 3 values");
            g.com_offset = Eigen::Vector3d(v[0], v[1], v[2]);
        }
        maybe_get(j, "body_height", g.body_height);
        if (j.contains("tip_z0")) g.tip_z0 = get_leg_array(j, "tip_z0");
        maybe_get(j, "step_depth", g.step_depth);
        if (j.contains("adjacency")) {
            const auto rows = j.at("adjacency").get<std::vector<std::vector<int>>>();
            if (rows.size() != kNumLegs) throw ConfigError("adjacency must have 6 rows");
            for (int i = 0; i < kNumLegs; ++i) {
                if (rows[i].size() != 2) throw ConfigError("each adjacency row needs 2 legs");
                g.adjacency[i] = {rows[i][0], rows[i][1]};
            }
        }
        g.validate();
    } catch (const json::exception& e) {
        throw ConfigError("bad geometry in " + path.string() + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError("bad geometry in " + path.string() + ": " + e.what());
    }
    return g;
}

namespace {

DeConfig de_from_json(const json& j) {
    DeConfig de;
    maybe_get(j, "population_size", de.population_size);
    maybe_get(j, "generations", de.generations);
    maybe_get(j, "crossover_rate", de.crossover_rate);
    maybe_get(j, "mutation_factor", de.mutation_factor);
    maybe_get(j, "eval_threads", de.eval_threads);
    maybe_get(j, "force_one_gene", de.force_one_gene);
    if (j.contains("stall_generations") && !j.at("stall_generations").is_null()) {
        de.stall_generations = j.at("stall_generations").get<int>();
    }
    return de;
}

SimConfig sim_from_json(const json& j) {
    SimConfig sim;
    maybe_get(j, "sim_time", sim.sim_time);
    maybe_get(j, "steps_per_cycle", sim.steps_per_cycle);
    maybe_get(j, "margin_tol", sim.margin_tol);
    maybe_get(j, "fall_dwell_time", sim.fall_dwell_time);
    maybe_get(j, "hard_margin", sim.hard_margin);
    return sim;
}

json sim_to_json(const SimConfig& sim) {
    return json{{"sim_time", sim.sim_time},
                {"steps_per_cycle", sim.steps_per_cycle},
                {"margin_tol", sim.margin_tol},
                {"fall_dwell_time", sim.fall_dwell_time},
                {"hard_margin", sim.hard_margin}};
}

}  // namespace

Scenario load_scenario(const std::filesystem::path& path) {
    const json j = parse_file(path);
    Scenario sc;
    try {
        sc.name = j.at("name").get<std::string>();
        sc.morphology = Morphology::from_string(j.at("morphology").get<std::string>());
        if (j.contains("geometry")) {
            std::filesystem::path gp = j.at("geometry").get<std::string>();
            if (gp.is_relative()) gp = path.parent_path() / gp;
            sc.geometry = load_geometry(gp);
        }
        maybe_get(j, "gait_period", sc.gait_period);
        if (sc.gait_period <= 0.0) throw ConfigError("gait_period must be positive");
        if (j.contains("de")) sc.de = de_from_json(j.at("de"));
        if (j.contains("sim")) sc.sim = sim_from_json(j.at("sim"));
        if (j.contains("weights")) {
            const json& w = j.at("weights");
            maybe_get(w, "forward", sc.weights.w_forward);
            maybe_get(w, "lateral", sc.weights.w_lateral);
            maybe_get(w, "yaw", sc.weights.w_yaw);
            maybe_get(w, "roll", sc.weights.w_roll);
            maybe_get(w, "pitch", sc.weights.w_pitch);
        }
        if (j.contains("bounds")) {
            const auto lo = j.at("bounds").at("lower").get<std::vector<double>>();
            const auto hi = j.at("bounds").at("upper").get<std::vector<double>>();
            if (lo.size() != GaitParams::kDim || hi.size() != GaitParams::kDim) {
                throw ConfigError("bounds vectors must have 14 entries");
            }
            sc.bounds = ParamBounds(Eigen::Map<const Eigen::VectorXd>(lo.data(), lo.size()),
                                    Eigen::Map<const Eigen::VectorXd>(hi.data(), hi.size()));
        }
        if (j.contains("seeds")) {
            sc.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
            if (sc.seeds.empty()) throw ConfigError("seed list must not be empty");
        }
        sc.out_dir = j.value("out_dir", "runs/" + sc.name);
        if (j.contains("servo_pid")) {
            ServoPid pid;
            const json& p = j.at("servo_pid");
            maybe_get(p, "kp", pid.kp);
            maybe_get(p, "kd", pid.kd);
            maybe_get(p, "ki", pid.ki);
            sc.servo_pid = pid;
        }
    } catch (const json::exception& e) {
        throw ConfigError("bad scenario in " + path.string() + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError("bad scenario in " + path.string() + ": " + e.what());
    }
    return sc;
}

void save_params(const std::filesystem::path& path, const SavedParams& sp) {
    json j;
    j["schema_version"] = 1;
    j["morphology"] = sp.morphology.to_string();
    j["gait_period"] = sp.gait_period;
    j["sim"] = sim_to_json(sp.sim);
    j["tip_y0"] = sp.params.tip_y0;
    j["tip_x0"] = sp.params.tip_x0;
    j["step_length"] = sp.params.step_length;
    j["step_height"] = sp.params.step_height;
    write_text_file(path, j.dump(2) + "\n");
}

SavedParams load_params(const std::filesystem::path& path) {
    const json j = parse_file(path);
    SavedParams sp;
    try {
        sp.morphology = Morphology::from_string(j.at("morphology").get<std::string>());
        sp.gait_period = j.at("gait_period").get<double>();
        sp.sim = sim_from_json(j.at("sim"));
        const auto y0 = j.at("tip_y0").get<std::vector<double>>();
        const auto x0 = j.at("tip_x0").get<std::vector<double>>();
        if (y0.size() != kNumLegs || x0.size() != kNumLegs) {
            throw ConfigError("tip offset arrays must have 6 entries");
        }
        std::copy(y0.begin(), y0.end(), sp.params.tip_y0.begin());
        std::copy(x0.begin(), x0.end(), sp.params.tip_x0.begin());
        sp.params.step_length = j.at("step_length").get<double>();
        sp.params.step_height = j.at("step_height").get<double>();
    } catch (const json::exception& e) {
        throw ConfigError("bad parameter file " + path.string() + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError("bad parameter file " + path.string() + ": " + e.what());
    }
    return sp;
}

void write_result_json(const std::filesystem::path& path, const Scenario& sc,
                       const RecoveryResult& result) {
    json j;
    j["schema_version"] = 1;
    j["scenario"] = sc.name;
    j["morphology"] = sc.morphology.to_string();
    j["seed"] = result.seed;
    j["sigma"] = result.sigma;
    j["best_f"] = result.best_f;
    j["evaluations"] = result.evaluations;
    j["fell"] = result.best_fell;
    j["metrics"] = json{{"x_final", result.best_metrics.x_final},
                        {"y_final", result.best_metrics.y_final},
                        {"yaw_final", result.best_metrics.yaw_final},
                        {"roll_amp", result.best_metrics.roll_amp},
                        {"pitch_amp", result.best_metrics.pitch_amp}};
    j["params"] = json{{"tip_y0", result.best_params.tip_y0},
                       {"tip_x0", result.best_params.tip_x0},
                       {"step_length", result.best_params.step_length},
                       {"step_height", result.best_params.step_height}};
    j["history"] = result.history;
    if (sc.servo_pid) {
        j["servo_pid"] =
            json{{"kp", sc.servo_pid->kp}, {"kd", sc.servo_pid->kd}, {"ki", sc.servo_pid->ki}};
    }
    write_text_file(path, j.dump(2) + "\n");
}

void write_convergence_csv(const std::filesystem::path& path, const RecoveryResult& result) {
    std::ostringstream os;
    os << "generation,best_f\n";
    for (std::size_t g = 0; g < result.history.size(); ++g) {
        os << g + 1 << ',' << csv::num(result.history[g]) << '\n';
    }
    write_text_file(path, os.str());
}

void write_trajectory_csv_file(const std::filesystem::path& path, const BodyTrajectory& traj) {
    std::ostringstream os;
    write_trajectory_csv(os, traj);
    write_text_file(path, os.str());
}

}  // namespace hexrec
