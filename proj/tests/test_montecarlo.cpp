#include <doctest.h>

#include <cmath>
#include <random>

#include "markov_ldp/errors.hpp"
#include "markov_ldp/montecarlo.hpp"
#include "markov_ldp/rate_function.hpp"
#include "test_support.hpp"

using namespace ldp;
using namespace ldp::testing;

TEST_CASE("empirical_trajectory") {
    const Generator q = symmetric_chain(3);
    const Measure mu0(q.space(), Eigen::Vector3d(0.5, 0.3, 0.2));
    const PathGrid one = empirical_trajectory(q, mu0, 1, GridShape{0.0, 1.0, 10}, 3);
    for (const auto& m : one.nodes()) CHECK(m.probs().maxCoeff() == 1.0);

    const PathGrid many = empirical_trajectory(q, mu0, 10000, GridShape{0.0, 2.0, 4}, 4);
    CHECK((many.front().probs() - mu0.probs()).cwiseAbs().maxCoeff() < 3 * std::sqrt(1.0 / 10000));
    const Measure law = evolve_law(q, mu0, 2.0);
    CHECK((many.back().probs() - law.probs()).cwiseAbs().maxCoeff() < 3 * std::sqrt(1.0 / 10000));

    const PathGrid again = empirical_trajectory(q, mu0, 10000, GridShape{0.0, 2.0, 4}, 4);
    for (std::size_t k = 0; k <= 4; ++k) CHECK(again.at(k).probs() == many.at(k).probs());
}

TEST_CASE("typical events do not decay and estimates are reproducible") {
    std::mt19937_64 gen(61);
    int within = 0;
    const int models = 8;
    for (int i = 0; i < models; ++i) {
        const Generator q = random_generator(gen, 2 + static_cast<std::size_t>(i % 3));
        const Measure mu0 = random_measure(gen, q.space());
        const BallEvent typical{evolve_law(q, mu0, 0.5), 0.5, 1.0};
        const DecayEstimate d = estimate_event_decay(q, mu0, typical, {20, 40, 80}, 200, 100 + i);
        if (std::abs(d.slope) <= 2 * d.slope_stderr + 1e-12) ++within;
        CHECK(ball_rate(q, mu0, typical) == 0.0);
        if (i == 0) {
            const DecayEstimate again = estimate_event_decay(q, mu0, typical, {20, 40, 80}, 200, 100);
            CHECK(again.hits == d.hits);
            CHECK(again.slope == d.slope);
            CHECK(again.slope_stderr == d.slope_stderr);
        }
    }
    CHECK(within >= models - 1);
}

TEST_CASE("a moderately rare event decays near its ball rate") {
    const Generator q = symmetric_chain(2);
    const Measure mu0 = Measure::point_mass(q.space(), 0);
    // Law at t = 1 is about (0.568, 0.432); ask for (0.8, 0.2).
    const BallEvent event{Measure(q.space(), Eigen::Vector2d(0.8, 0.2)), 1.0, 0.1};
    const DecayEstimate d = estimate_event_decay(q, mu0, event, {20, 40, 60, 80}, 4000, 9);
    const double predicted = ball_rate(q, mu0, event);
    CHECK(predicted > 0.0);
    CHECK(d.slope > 0.0);
    CHECK(d.slope <= predicted + 3 * d.slope_stderr + 0.05);
    for (double lp : d.log_probs) CHECK(lp <= 0.0);
}

TEST_CASE("ball_rate on the absorbing benchmark") {
    const Generator abs = absorbing_chain();
    const Measure da = Measure::point_mass(abs.space(), 0);
    const BallEvent event{da, 0.5, 0.05};
    const double expected = kl_bernoulli(0.025, 1 - std::exp(-0.5));
    CHECK(std::abs(ball_rate(abs, da, event) - expected) < 1e-6);
    CHECK(expected < 0.5);
}

TEST_CASE("estimate_event_decay errors") {
    const Generator abs = absorbing_chain();
    const Measure da = Measure::point_mass(abs.space(), 0);
    const BallEvent event{da, 0.5, 0.05};
    bool insufficient = false;
    try {
        estimate_event_decay(abs, da, event, {50, 100}, 200, 1);
    } catch (const InsufficientSamplingError& e) {
        insufficient = true;
        CHECK(e.kind() == ErrorKind::InsufficientSampling);
        CHECK(e.partial().hits.size() == 2);
        CHECK(e.partial().hits[1] == 0);
    }
    CHECK(insufficient);

    auto throws_param = [&](std::vector<std::size_t> ns, std::size_t reps) {
        try {
            estimate_event_decay(abs, da, event, ns, reps, 1);
        } catch (const LdpError& e) {
            return e.kind() == ErrorKind::InvalidParameter;
        }
        return false;
    };
    CHECK(throws_param({50, 100}, 10));
    CHECK(throws_param({100, 50}, 200));
    CHECK(throws_param({50}, 200));
}
