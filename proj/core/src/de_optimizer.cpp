#include "hexrec/de_optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <iostream>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "hexrec/gait_sequencer.hpp"
#include "hexrec/locomotion_sim.hpp"

namespace hexrec {

namespace de {

std::vector<Eigen::VectorXd> init_population(const Eigen::VectorXd& lower,
                                             const Eigen::VectorXd& upper, int pop_size,
                                             std::uint64_t seed) {
    if (lower.size() != upper.size()) {
        throw std::invalid_argument("bound vectors must have equal length");
    }
    const auto dim = lower.size();
    std::vector<Eigen::VectorXd> pop;
    pop.reserve(pop_size);
    bool warned = false;
    for (int i = 0; i < pop_size; ++i) {
        RngStream rng = make_stream(seed, 0, static_cast<std::uint64_t>(i));
        Eigen::VectorXd x(dim);
        constexpr int kMaxResample = 64;
        for (int attempt = 0; attempt < kMaxResample; ++attempt) {
            for (Eigen::Index m = 0; m < dim; ++m) x[m] = rng.uniform(lower[m], upper[m]);
            const bool duplicate =
                std::any_of(pop.begin(), pop.end(), [&](const Eigen::VectorXd& y) {
                    return (y.array() == x.array()).all();
                });
            if (!duplicate) break;
            if (attempt == kMaxResample - 1 && !warned) {
                std::cerr << "init_population: search box is degenerate, "
                             "population collapses to a single point\n";
                warned = true;
            }
        }
        pop.push_back(std::move(x));
    }
    return pop;
}

Eigen::VectorXd mutant_vector(const Eigen::VectorXd& xk, const Eigen::VectorXd& xbest,
                              const Eigen::VectorXd& xr1, const Eigen::VectorXd& xr2, double f) {
    return xk + f * (xbest - xk) + f * (xr1 - xr2);
}

Eigen::VectorXd mutate(std::span<const Eigen::VectorXd> population, int k, int best, double f,
                       RngStream& rng) {
    const int n = static_cast<int>(population.size());
    if (n < 4) {
        throw std::invalid_argument("mutation needs a population of at least 4");
    }
    int r1 = rng.uniform_int(n);
    while (r1 == k || r1 == best) r1 = rng.uniform_int(n);
    int r2 = rng.uniform_int(n);
    while (r2 == k || r2 == best || r2 == r1) r2 = rng.uniform_int(n);
    return mutant_vector(population[k], population[best], population[r1], population[r2], f);
}

Eigen::VectorXd crossover_with(const Eigen::VectorXd& x, const Eigen::VectorXd& v, double cr,
                               std::span<const double> draws, std::optional<int> forced_gene) {
    if (x.size() != v.size() || static_cast<Eigen::Index>(draws.size()) != x.size()) {
        throw std::invalid_argument("crossover dimension mismatch");
    }
    Eigen::VectorXd u = x;
    for (Eigen::Index m = 0; m < x.size(); ++m) {
        if (draws[m] <= cr || (forced_gene && *forced_gene == m)) u[m] = v[m];
    }
    return u;
}

Eigen::VectorXd crossover(const Eigen::VectorXd& x, const Eigen::VectorXd& v, double cr,
                          RngStream& rng, bool force_one_gene) {
    std::optional<int> forced;
    if (force_one_gene) forced = rng.uniform_int(static_cast<int>(x.size()));
    std::vector<double> draws(x.size());
    for (auto& d : draws) d = rng.uniform01();
    return crossover_with(x, v, cr, draws, forced);
}

Eigen::VectorXd clamp_to_bounds(Eigen::VectorXd v, const Eigen::VectorXd& lower,
                                const Eigen::VectorXd& upper) {
    v = v.cwiseMax(lower).cwiseMin(upper);
    return v;
}

}  // namespace de

namespace {

struct EvalRecord {
    double f = 0.0;
    Metrics metrics;
    bool fell = false;
    bool feasible = false;
};

EvalRecord evaluate_candidate(const Eigen::VectorXd& x, const RecoverySetup& setup,
                              const GaitSchedule& schedule) {
    EvalRecord rec;
    const GaitParams params = GaitParams::from_vector(x);
    if (!check_collision_constraint(params, setup.morphology, setup.geometry)) {
        return rec;  // infeasible: F = 0, simulation skipped
    }
    rec.feasible = true;
    const BodyTrajectory traj =
        simulate(setup.morphology, schedule, params, setup.geometry, setup.sim);
    rec.metrics = extract_metrics(traj);
    rec.fell = traj.fell;
    rec.f = objective_value(rec.metrics, setup.weights, traj.fell);
    return rec;
}

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
    if (threads <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    const int workers = std::min(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::atomic<int> next{0};
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

int argmax(const std::vector<double>& v) {
    return static_cast<int>(std::max_element(v.begin(), v.end()) - v.begin());
}

}  // namespace

RecoveryResult run_recovery(const RecoverySetup& setup, const ProgressSink& progress) {
    setup.geometry.validate();
    const auto& de_cfg = setup.de;
    if (de_cfg.population_size < 4) {
        throw std::invalid_argument("population size must be at least 4");
    }

    const GaitSchedule schedule = plan_sequence(
        setup.morphology, setup.gait_period, {setup.geometry.adjacency, &setup.geometry});
    const ParamBounds bounds =
        build_bounds(setup.morphology, setup.base_bounds, setup.geometry.adjacency);

    const int pop_size = de_cfg.population_size;
    std::vector<Eigen::VectorXd> population =
        de::init_population(bounds.lower, bounds.upper, pop_size, de_cfg.seed);
    std::vector<double> fitness(pop_size, 0.0);
    std::vector<EvalRecord> records(pop_size);

    std::int64_t evaluations = 0;
    const auto evaluate_into = [&](const std::vector<Eigen::VectorXd>& xs,
                                   std::vector<EvalRecord>& out) {
        parallel_for(static_cast<int>(xs.size()), de_cfg.eval_threads,
                     [&](int i) { out[i] = evaluate_candidate(xs[i], setup, schedule); });
        evaluations += static_cast<std::int64_t>(xs.size());
    };

    evaluate_into(population, records);
    for (int i = 0; i < pop_size; ++i) fitness[i] = records[i].f;

    RecoveryResult result;
    result.seed = de_cfg.seed;
    result.sigma = schedule.sigma();
    result.history.reserve(de_cfg.generations);

    std::vector<Eigen::VectorXd> trials(pop_size);
    std::vector<EvalRecord> trial_records(pop_size);

    double best_so_far = fitness[argmax(fitness)];
    int last_improvement = 0;

    for (int gen = 1; gen <= de_cfg.generations; ++gen) {
        const int best = argmax(fitness);
        for (int k = 0; k < pop_size; ++k) {
            RngStream rng = make_stream(de_cfg.seed, static_cast<std::uint64_t>(gen),
                                        static_cast<std::uint64_t>(k));
            Eigen::VectorXd mutant =
                de::mutate(population, k, best, de_cfg.mutation_factor, rng);
            Eigen::VectorXd trial = de::crossover(population[k], mutant, de_cfg.crossover_rate,
                                                  rng, de_cfg.force_one_gene);
            trials[k] = de::clamp_to_bounds(std::move(trial), bounds.lower, bounds.upper);
        }
        evaluate_into(trials, trial_records);
        for (int k = 0; k < pop_size; ++k) {
            if (de::trial_wins(fitness[k], trial_records[k].f)) {
                population[k] = trials[k];
                fitness[k] = trial_records[k].f;
                records[k] = trial_records[k];
            }
        }

        const int gen_best = argmax(fitness);
        const double gen_best_f = fitness[gen_best];
        result.history.push_back(gen_best_f);

        if (progress) {
            GenerationLog log;
            log.generation = gen;
            log.best_f = gen_best_f;
            log.mean_f = std::accumulate(fitness.begin(), fitness.end(), 0.0) / pop_size;
            log.feasible_count = static_cast<int>(
                std::count_if(records.begin(), records.end(),
                              [](const EvalRecord& r) { return r.feasible; }));
            progress(log);
        }

        if (gen_best_f > best_so_far + 1e-12) {
            best_so_far = gen_best_f;
            last_improvement = gen;
        }
        if (de_cfg.stall_generations && gen - last_improvement >= *de_cfg.stall_generations) {
            break;
        }
    }

    const int best = argmax(fitness);
    result.best_params = GaitParams::from_vector(population[best]);
    result.best_f = fitness[best];
    result.evaluations = evaluations;
    result.best_metrics = records[best].metrics;
    result.best_fell = records[best].fell;
    result.best_feasible = records[best].feasible;
    return result;
}

}  // namespace hexrec
