#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "hexrec/objective.hpp"
#include "hexrec/rng.hpp"
#include "hexrec/trajectory.hpp"

namespace hexrec {

struct DeConfig {
    int population_size = 30;
    int generations = 60;
    double crossover_rate = 0.6;
    double mutation_factor = 0.5;
    std::uint64_t seed = 1;
    int eval_threads = 1;  // fitness evaluations per generation run concurrently when > 1
    std::optional<int> stall_generations;  // optional early stop window, off by default
    bool force_one_gene = false;  // binomial crossover variant that always takes >= 1 mutant gene
};

struct GenerationLog {
    int generation = 0;  // 1-based
    double best_f = 0.0;
    double mean_f = 0.0;
    int feasible_count = 0;
};

using ProgressSink = std::function<void(const GenerationLog&)>;

struct RecoveryResult {
    GaitParams best_params;
    double best_f = 0.0;
    std::vector<double> history;  // best objective after each generation, non-decreasing
    std::int64_t evaluations = 0;
    std::uint64_t seed = 0;
    int sigma = 0;
    Metrics best_metrics;
    bool best_fell = false;
    bool best_feasible = false;
};

/// Everything one optimization run needs.
struct RecoverySetup {
    Morphology morphology = Morphology::healthy();
    RobotGeometry geometry = RobotGeometry::defaults();
    double gait_period = 2.0;
    ParamBounds base_bounds = ParamBounds::defaults();
    ObjectiveWeights weights;
    SimConfig sim;
    DeConfig de;
};

namespace de {

/// Uniform population in the box, resampling exact duplicates so candidates
/// are unique. Degenerate (zero-measure) boxes fall back to duplicates with a
/// warning on stderr.
std::vector<Eigen::VectorXd> init_population(const Eigen::VectorXd& lower,
                                             const Eigen::VectorXd& upper, int pop_size,
                                             std::uint64_t seed);

/// Current-to-best mutant: x_k + f*(x_best - x_k) + f*(x_r1 - x_r2).
Eigen::VectorXd mutant_vector(const Eigen::VectorXd& xk, const Eigen::VectorXd& xbest,
                              const Eigen::VectorXd& xr1, const Eigen::VectorXd& xr2, double f);

/// Draws r1, r2 distinct from each other, from k and from best, then forms
/// the mutant. Population size must be at least 4.
Eigen::VectorXd mutate(std::span<const Eigen::VectorXd> population, int k, int best, double f,
                       RngStream& rng);

/// Binomial crossover with explicit per-coordinate draws (r <= cr takes the
/// mutant gene).
Eigen::VectorXd crossover_with(const Eigen::VectorXd& x, const Eigen::VectorXd& v, double cr,
                               std::span<const double> draws,
                               std::optional<int> forced_gene = std::nullopt);

Eigen::VectorXd crossover(const Eigen::VectorXd& x, const Eigen::VectorXd& v, double cr,
                          RngStream& rng, bool force_one_gene = false);

Eigen::VectorXd clamp_to_bounds(Eigen::VectorXd v, const Eigen::VectorXd& lower,
                                const Eigen::VectorXd& upper);

/// Greedy selection for maximization; the trial wins ties.
inline bool trial_wins(double f_current, double f_trial) { return f_current <= f_trial; }

}  // namespace de

/// Plan the gait for the damaged morphology, then optimize the trajectory
/// parameters with differential evolution against the quasi-static
/// simulation. Throws std::invalid_argument for unrecoverable morphologies.
RecoveryResult run_recovery(const RecoverySetup& setup, const ProgressSink& progress = {});

}  // namespace hexrec
