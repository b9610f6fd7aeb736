#include "hexrec/scenario_runner.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "hexrec/csv.hpp"
#include "hexrec/kinematics.hpp"

namespace hexrec {

namespace {

double display_angle(double rad, bool degrees) {
    return degrees ? rad * 180.0 / std::numbers::pi : rad;
}

std::string summary_line(const RecoveryResult& r, bool degrees) {
    std::ostringstream os;
    os << std::setprecision(4) << "seed " << r.seed << ": best_f=" << r.best_f
       << " y=" << r.best_metrics.y_final << " x=" << r.best_metrics.x_final
       << " yaw=" << display_angle(r.best_metrics.yaw_final, degrees)
       << (degrees ? " deg" : " rad") << " fell=" << (r.best_fell ? "yes" : "no")
       << " evals=" << r.evaluations;
    return os.str();
}

void write_seed_artifacts(const Scenario& sc, const RecoveryResult& result,
                          const std::filesystem::path& seed_dir) {
    write_result_json(seed_dir / "result.json", sc, result);
    write_convergence_csv(seed_dir / "convergence.csv", result);

    SavedParams sp;
    sp.params = result.best_params;
    sp.morphology = sc.morphology;
    sp.gait_period = sc.gait_period;
    sp.sim = sc.sim;
    save_params(seed_dir / "params.json", sp);

    const GaitSchedule schedule =
        plan_sequence(sc.morphology, sc.gait_period, {sc.geometry.adjacency, &sc.geometry});
    const BodyTrajectory traj =
        simulate(sc.morphology, schedule, result.best_params, sc.geometry, sc.sim);
    write_trajectory_csv_file(seed_dir / "trajectory.csv", traj);
}

void print_schedule(const Scenario& sc, std::ostream& log) {
    const GaitSchedule s = plan_sequence(sc.morphology, sc.gait_period, {sc.geometry.adjacency, &sc.geometry});
    log << "morphology " << sc.morphology.to_string() << ": sigma=" << s.sigma()
        << " period=" << s.period() << "s duty=" << s.duty_factor() << "\n";
    for (int leg = 1; leg <= kNumLegs; ++leg) {
        const auto w = s.swing_window(leg);
        if (!w) continue;
        log << "  leg " << leg << " swings [" << w->first << ", " << w->second << ")\n";
    }
    log << s.to_json() << "\n";
}

}  // namespace

int run_scenario(const Scenario& sc_in, const RunOptions& opt, std::ostream& log) {
    Scenario sc = sc_in;
    if (opt.seed_override) sc.seeds = *opt.seed_override;
    if (opt.out_override) sc.out_dir = *opt.out_override;

    const auto assessment = classify_morphology(sc.morphology);
    if (assessment.cls == DamageClass::Unrecoverable) {
        log << "scenario " << sc.name << ": unrecoverable morphology "
            << sc.morphology.to_string() << ": " << unrecoverable_reason(sc.morphology) << "\n";
        return kExitUnrecoverable;
    }

    if (opt.dry_run) {
        log << "scenario " << sc.name << " (dry run)\n";
        print_schedule(sc, log);
        return kExitOk;
    }

    const int n_seeds = static_cast<int>(sc.seeds.size());
    std::vector<RecoveryResult> results(n_seeds);
    std::vector<std::string> errors(n_seeds);

    const auto run_one = [&](int i, const ProgressSink& progress) {
        RecoverySetup setup;
        setup.morphology = sc.morphology;
        setup.geometry = sc.geometry;
        setup.gait_period = sc.gait_period;
        setup.base_bounds = sc.bounds;
        setup.weights = sc.weights;
        setup.sim = sc.sim;
        setup.de = sc.de;
        setup.de.seed = sc.seeds[i];
        results[i] = run_recovery(setup, progress);
        write_seed_artifacts(sc, results[i], sc.out_dir / ("seed_" + std::to_string(sc.seeds[i])));
    };

    if (opt.parallel_seeds <= 1) {
        for (int i = 0; i < n_seeds; ++i) {
            log << "scenario " << sc.name << " seed " << sc.seeds[i] << "\n";
            run_one(i, [&](const GenerationLog& g) {
                log << "  gen " << g.generation << "/" << sc.de.generations
                    << " best_f=" << g.best_f << " mean_f=" << g.mean_f
                    << " feasible=" << g.feasible_count << "/" << sc.de.population_size << "\n";
            });
            log << "  " << summary_line(results[i], opt.degrees) << "\n";
        }
    } else {
        // Seeds are independent; artifacts go to per-seed directories, logs
        // are buffered and emitted in seed order after the join.
        std::vector<std::thread> pool;
        std::atomic<int> next{0};
        const int workers = std::min(opt.parallel_seeds, n_seeds);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (int i = next.fetch_add(1); i < n_seeds; i = next.fetch_add(1)) {
                    try {
                        run_one(i, {});
                    } catch (const std::exception& e) {
                        errors[i] = e.what();
                    }
                }
            });
        }
        for (auto& t : pool) t.join();
        for (int i = 0; i < n_seeds; ++i) {
            if (!errors[i].empty()) throw std::runtime_error(errors[i]);
            log << "scenario " << sc.name << " " << summary_line(results[i], opt.degrees) << "\n";
        }
    }
    return kExitOk;
}

namespace {

void write_joints_csv(const std::filesystem::path& path, const Morphology& m,
                      const GaitSchedule& s, const GaitParams& p, const RobotGeometry& g,
                      const SimConfig& sim) {
    const int ng = sim.steps_per_cycle;
    const double dt = s.period() / ng;
    const int n_steps = static_cast<int>(std::llround(sim.sim_time / dt));
    std::ostringstream os;
    os << "t,leg,hip_yaw,femur_pitch,tibia_pitch\n";
    for (int j = 0; j <= n_steps; ++j) {
        for (int leg : m.functional_legs()) {
            const int offset = *s.slot(leg) * (ng / s.sigma());
            const int k = ((j - offset) % ng + ng) % ng + 1;
            const Eigen::Vector3d body_tip = body_tip_position(leg, k, p, s, g, ng);
            const JointAngles q = inverse_kinematics(hip_frame_point(body_tip, leg, g), leg, g);
            os << csv::num(j * dt) << ',' << leg << ',' << csv::num(q.hip_yaw) << ','
               << csv::num(q.femur_pitch) << ',' << csv::num(q.tibia_pitch) << '\n';
        }
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << os.str();
}

}  // namespace

int run_replay(const ReplayOptions& opt, std::ostream& log) {
    const SavedParams saved = load_params(opt.params_path);
    const Morphology m =
        opt.morphology ? Morphology::from_string(*opt.morphology) : saved.morphology;
    const RobotGeometry g =
        opt.geometry ? load_geometry(*opt.geometry) : RobotGeometry::defaults();

    if (classify_morphology(m).cls == DamageClass::Unrecoverable) {
        log << "unrecoverable morphology " << m.to_string() << ": " << unrecoverable_reason(m)
            << "\n";
        return kExitUnrecoverable;
    }
    const ParamBounds bounds = build_bounds(m, ParamBounds::defaults(), g.adjacency);
    if (!bounds.contains(saved.params.to_vector(), 1e-12)) {
        throw ConfigError("saved parameters violate the bounds for morphology " + m.to_string());
    }

    const GaitSchedule schedule = plan_sequence(m, saved.gait_period, {g.adjacency, &g});
    const BodyTrajectory traj = simulate(m, schedule, saved.params, g, saved.sim);
    write_trajectory_csv_file(opt.out_csv, traj);

    if (opt.joints_csv) {
        write_joints_csv(*opt.joints_csv, m, schedule, saved.params, g, saved.sim);
    }
    if (opt.tips_csv) {
        std::vector<TipTrajectory> tips;
        for (int leg : m.functional_legs()) {
            tips.push_back(
                build_tip_trajectory(leg, saved.params, schedule, g, saved.sim.steps_per_cycle));
        }
        std::ostringstream os;
        write_tip_csv(os, tips);
        std::ofstream out(*opt.tips_csv, std::ios::binary);
        if (!out) throw ConfigError("cannot write " + opt.tips_csv->string());
        out << os.str();
    }

    const Metrics metrics = extract_metrics(traj);
    log << "replayed " << opt.params_path.string() << " on " << m.to_string()
        << ": y=" << metrics.y_final << " x=" << metrics.x_final
        << " yaw=" << display_angle(metrics.yaw_final, opt.degrees)
        << (opt.degrees ? " deg" : " rad") << " fell=" << (traj.fell ? "yes" : "no") << "\n";
    return kExitOk;
}

}  // namespace hexrec
