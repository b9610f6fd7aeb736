#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hexrec/de_optimizer.hpp"

using namespace hexrec;

namespace {

Eigen::VectorXd vec2(double a, double b) {
    Eigen::VectorXd v(2);
    v << a, b;
    return v;
}

RecoverySetup small_setup(const std::string& morphology, std::uint64_t seed, int generations,
                          int pop) {
    RecoverySetup setup;
    setup.morphology = Morphology::from_string(morphology);
    setup.de.seed = seed;
    setup.de.generations = generations;
    setup.de.population_size = pop;
    return setup;
}

bool same_result(const RecoveryResult& a, const RecoveryResult& b) {
    if (a.best_f != b.best_f || a.history != b.history || a.evaluations != b.evaluations) {
        return false;
    }
    for (int i = 0; i < kNumLegs; ++i) {
        if (a.best_params.tip_y0[i] != b.best_params.tip_y0[i]) return false;
        if (a.best_params.tip_x0[i] != b.best_params.tip_x0[i]) return false;
    }
    return a.best_params.step_length == b.best_params.step_length &&
           a.best_params.step_height == b.best_params.step_height &&
           a.best_metrics.y_final == b.best_metrics.y_final &&
           a.best_metrics.x_final == b.best_metrics.x_final;
}

}  // namespace

TEST_CASE("population initialization") {
    const auto bounds = ParamBounds::defaults();

    SUBCASE("uniform within bounds, unique, reproducible") {
        const auto pop = de::init_population(bounds.lower, bounds.upper, 50, 42);
        REQUIRE(pop.size() == 50);
        for (const auto& x : pop) {
            CHECK(bounds.contains(x));
        }
        for (std::size_t i = 0; i < pop.size(); ++i) {
            for (std::size_t j = i + 1; j < pop.size(); ++j) {
                CHECK((pop[i] - pop[j]).norm() > 0.0);
            }
        }
        const auto again = de::init_population(bounds.lower, bounds.upper, 50, 42);
        for (std::size_t i = 0; i < pop.size(); ++i) {
            CHECK((pop[i] - again[i]).norm() == 0.0);
        }
        const auto other = de::init_population(bounds.lower, bounds.upper, 50, 43);
        CHECK((pop[0] - other[0]).norm() > 0.0);
    }

    SUBCASE("degenerate box collapses to one point instead of looping") {
        const Eigen::VectorXd point = bounds.lower;
        const auto pop = de::init_population(point, point, 8, 1);
        REQUIRE(pop.size() == 8);
        for (const auto& x : pop) CHECK((x - point).norm() == 0.0);
    }
}

TEST_CASE("current-to-best mutation") {
    SUBCASE("worked 2-d example") {
        const auto v = de::mutant_vector(vec2(0, 0), vec2(1, 1), vec2(2, 0), vec2(0, 2), 0.5);
        CHECK(v[0] == doctest::Approx(1.5));
        CHECK(v[1] == doctest::Approx(-0.5));
    }

    SUBCASE("zero factor collapses to the parent") {
        std::vector<Eigen::VectorXd> pop = {vec2(0, 0), vec2(1, 1), vec2(2, 0), vec2(0, 2)};
        RngStream rng = make_stream(1, 1, 0);
        const auto v = de::mutate(pop, 0, 1, 0.0, rng);
        CHECK((v - pop[0]).norm() == 0.0);
    }

    SUBCASE("parent equal to best leaves only the difference term") {
        // All other members identical, so the difference term vanishes too.
        std::vector<Eigen::VectorXd> pop = {vec2(3, -1), vec2(5, 5), vec2(5, 5), vec2(5, 5)};
        RngStream rng = make_stream(1, 2, 0);
        const auto v = de::mutate(pop, 0, 0, 0.7, rng);
        CHECK((v - pop[0]).norm() == 0.0);
    }

    SUBCASE("population of three is too small") {
        std::vector<Eigen::VectorXd> pop = {vec2(0, 0), vec2(1, 1), vec2(2, 2)};
        RngStream rng = make_stream(1, 3, 0);
        CHECK_THROWS_AS(de::mutate(pop, 0, 1, 0.5, rng), std::invalid_argument);
    }

    SUBCASE("r1 and r2 avoid the parent and the best") {
        std::vector<Eigen::VectorXd> pop = {vec2(0, 0), vec2(1, 1), vec2(10, 10), vec2(-10, -10)};
        // With k=0 and best=1, r1 and r2 must be {2,3} in some order, so
        // each mutant coordinate is 0.5 +- 10.
        for (std::uint64_t g = 0; g < 50; ++g) {
            RngStream rng = make_stream(7, g, 0);
            const auto v = de::mutate(pop, 0, 1, 0.5, rng);
            CHECK(std::abs(std::abs(v[0] - 0.5) - 10.0) < 1e-12);
        }
    }
}

TEST_CASE("binomial crossover") {
    const Eigen::VectorXd x = vec2(1, 1);
    const Eigen::VectorXd v = vec2(5, 5);

    SUBCASE("worked example with pinned draws") {
        Eigen::VectorXd x3(3), v3(3);
        x3 << 1, 1, 1;
        v3 << 5, 5, 5;
        const std::vector<double> draws = {0.2, 0.9, 0.6};
        const auto u = de::crossover_with(x3, v3, 0.6, draws);
        CHECK(u[0] == 5);
        CHECK(u[1] == 1);
        CHECK(u[2] == 5);
    }

    SUBCASE("rate one takes the mutant, rate zero keeps the parent") {
        RngStream rng = make_stream(3, 1, 0);
        CHECK((de::crossover(x, v, 1.0, rng) - v).norm() == 0.0);
        for (int i = 0; i < 100; ++i) {
            CHECK((de::crossover(x, v, 0.0, rng) - x).norm() == 0.0);
        }
    }

    SUBCASE("forced gene always passes one mutant coordinate") {
        RngStream rng = make_stream(3, 2, 0);
        for (int i = 0; i < 100; ++i) {
            const auto u = de::crossover(x, v, 0.0, rng, true);
            CHECK(((u[0] == 5) != (u[1] == 5)));  // exactly one gene from v
        }
    }
}

TEST_CASE("bound repair clamps componentwise") {
    const auto bounds = ParamBounds::defaults();
    Eigen::VectorXd u = bounds.upper;
    u[6] = 0.20;    // above the 0.13 lateral cap
    u[4] = -0.10;   // below the -0.05 floor
    const auto r = de::clamp_to_bounds(u, bounds.lower, bounds.upper);
    CHECK(r[6] == 0.13);
    CHECK(r[4] == -0.05);
    const auto untouched = de::clamp_to_bounds(bounds.lower, bounds.lower, bounds.upper);
    CHECK((untouched - bounds.lower).norm() == 0.0);
}

TEST_CASE("greedy selection lets the trial win ties") {
    CHECK(de::trial_wins(0.5, 0.5));
    CHECK_FALSE(de::trial_wins(1.0, 0.2));
    CHECK(de::trial_wins(0.0, 0.1));
}

TEST_CASE("identity evolution with zero factor and zero crossover") {
    const auto bounds = ParamBounds::defaults();
    auto pop = de::init_population(bounds.lower, bounds.upper, 6, 5);
    const auto original = pop;
    for (int gen = 1; gen <= 3; ++gen) {
        for (int k = 0; k < 6; ++k) {
            RngStream rng = make_stream(5, gen, k);
            const auto v = de::mutate(pop, k, 0, 0.0, rng);
            const auto u = de::crossover(pop[k], v, 0.0, rng);
            // Ties go to the trial, but the trial equals the parent here.
            if (de::trial_wins(0.0, 0.0)) pop[k] = u;
        }
    }
    for (int k = 0; k < 6; ++k) {
        CHECK((pop[k] - original[k]).norm() == 0.0);
    }
}

TEST_CASE("full optimization runs") {
    SUBCASE("fixed seed reproduces the result bit for bit") {
        const auto a = run_recovery(small_setup("111111", 11, 5, 8));
        const auto b = run_recovery(small_setup("111111", 11, 5, 8));
        CHECK(same_result(a, b));
        CHECK(a.history.size() == 5);
        CHECK(a.evaluations == 8 * 6);
        CHECK(a.sigma == 2);
        const auto c = run_recovery(small_setup("111111", 12, 5, 8));
        CHECK_FALSE(same_result(a, c));
    }

    SUBCASE("history is non-decreasing and the best stays in bounds") {
        const auto r = run_recovery(small_setup("111011", 3, 12, 10));
        for (std::size_t i = 1; i < r.history.size(); ++i) {
            CHECK(r.history[i] >= r.history[i - 1]);
        }
        CHECK(r.best_f == r.history.back());
        const auto relaxed = build_bounds(Morphology::from_string("111011"),
                                          ParamBounds::defaults());
        CHECK(relaxed.contains(r.best_params.to_vector(), 1e-15));
        CHECK(r.best_f > 0.0);
        CHECK_FALSE(r.best_fell);
    }

    SUBCASE("parallel evaluation matches serial bit for bit") {
        auto setup = small_setup("011110", 4, 8, 12);
        const auto serial = run_recovery(setup);
        setup.de.eval_threads = 4;
        const auto parallel = run_recovery(setup);
        CHECK(same_result(serial, parallel));
    }

    SUBCASE("unrecoverable morphologies are refused") {
        CHECK_THROWS_AS(run_recovery(small_setup("101011", 1, 3, 6)), std::invalid_argument);
    }

    SUBCASE("stall window stops a flat run early") {
        auto setup = small_setup("111111", 9, 40, 6);
        // Degenerate box: every candidate is the same point, nothing improves.
        setup.base_bounds = ParamBounds(ParamBounds::defaults().lower,
                                        ParamBounds::defaults().lower);
        setup.de.stall_generations = 3;
        const auto r = run_recovery(setup);
        CHECK(r.history.size() == 3);
    }

    SUBCASE("progress sink sees every generation") {
        std::vector<GenerationLog> logs;
        run_recovery(small_setup("111111", 2, 4, 8),
                     [&](const GenerationLog& g) { logs.push_back(g); });
        REQUIRE(logs.size() == 4);
        CHECK(logs.front().generation == 1);
        CHECK(logs.back().generation == 4);
        CHECK(logs.back().feasible_count == 8);
        CHECK(logs.back().best_f >= logs.front().best_f);
    }

    SUBCASE("population below four is rejected") {
        CHECK_THROWS_AS(run_recovery(small_setup("111111", 1, 2, 3)), std::invalid_argument);
    }
}
