#include <doctest.h>

#include <cmath>
#include <random>

#include "markov_ldp/errors.hpp"
#include "markov_ldp/markov_core.hpp"
#include "markov_ldp/rng.hpp"
#include "test_support.hpp"

using namespace ldp;
using namespace ldp::testing;

namespace {

ErrorKind kind_of(const auto& fn) {
    try {
        fn();
    } catch (const LdpError& e) {
        return e.kind();
    }
    FAIL("no LdpError thrown");
    return ErrorKind::InternalError;
}

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

} // namespace

TEST_CASE("validate_generator recomputes the diagonal") {
    Eigen::MatrixXd r(2, 2);
    r << 123.0, 1.0, 0.0, -7.0;
    const Generator q = validate_generator({"a", "b"}, r);
    Eigen::MatrixXd expected(2, 2);
    expected << -1, 1, 0, 0;
    CHECK(q.matrix() == expected);

    const Generator q3 = validate_generator({"a", "b", "c"}, Eigen::MatrixXd::Ones(3, 3));
    for (std::size_t x = 0; x < 3; ++x) CHECK(q3.rate(x, x) == -2.0);
}

TEST_CASE("validate_generator rejects bad input") {
    Eigen::MatrixXd neg(2, 2);
    neg << 0, -1, 0, 0;
    CHECK(kind_of([&] { validate_generator({"a", "b"}, neg); }) == ErrorKind::InvalidRate);

    Eigen::MatrixXd nan(2, 2);
    nan << 0, NAN, 1, 0;
    CHECK(kind_of([&] { validate_generator({"a", "b"}, nan); }) == ErrorKind::MalformedModel);

    CHECK(kind_of([&] { validate_generator({"a", "b"}, Eigen::MatrixXd::Ones(2, 3)); }) ==
          ErrorKind::MalformedModel);
    CHECK(kind_of([&] { validate_generator({"a", "a"}, Eigen::MatrixXd::Ones(2, 2)); }) ==
          ErrorKind::MalformedModel);
    CHECK(kind_of([&] { validate_generator({"a"}, Eigen::MatrixXd::Ones(1, 1)); }) == ErrorKind::MalformedModel);
}

TEST_CASE("measure validation") {
    const StateSpace s({"a", "b"});
    CHECK(kind_of([&] { Measure(s, Eigen::Vector2d(0.6, 0.6)); }) == ErrorKind::MalformedModel);
    CHECK(kind_of([&] { Measure(s, Eigen::Vector2d(1.1, -0.1)); }) == ErrorKind::MalformedModel);
    const Measure m = Measure::from_numeric(s, Eigen::Vector2d(0.5 + 5e-10, 0.5 - 1e-13));
    CHECK(std::abs(m.probs().sum() - 1.0) < 1e-15);
    CHECK(m[1] >= 0.0);
    CHECK(kind_of([&] { Measure::from_numeric(s, Eigen::Vector2d(0.6, 0.5)); }) == ErrorKind::InternalError);
}

TEST_CASE("transition_matrix closed forms") {
    const Generator sym = symmetric_chain();
    CHECK(max_abs(transition_matrix(sym, 0.0).matrix() - Eigen::MatrixXd::Identity(2, 2)) == 0.0);
    for (double t : {0.1, 0.5, 1.0, 3.0, 20.0}) {
        CHECK(transition_matrix(sym, t)(0, 0) == doctest::Approx(0.5 * (1 + std::exp(-2 * t))).epsilon(1e-13));
    }
    const Generator abs = absorbing_chain();
    CHECK(std::abs(transition_matrix(abs, std::log(2.0))(0, 0) - 0.5) < 1e-13);
    CHECK(kind_of([&] { transition_matrix(sym, -1.0); }) == ErrorKind::InvalidTime);
}

TEST_CASE("transition_matrix agrees with a Pade exponential, including stiff chains") {
    std::mt19937_64 gen(11);
    for (int i = 0; i < 30; ++i) {
        const Generator q = random_generator(gen, 2 + static_cast<std::size_t>(i % 4), 3.0, 0.2);
        for (double t : {0.01, 0.7, 5.0}) {
            CHECK(max_abs(transition_matrix(q, t).matrix() - expm_oracle(q.matrix(), t)) < 1e-11);
        }
    }
    Eigen::MatrixXd stiff(3, 3);
    stiff << 0, 1000, 1, 0.01, 0, 500, 3, 0, 0;
    const Generator q = validate_generator(StateSpace::indexed(3), stiff);
    const Eigen::MatrixXd p = transition_matrix(q, 2.0).matrix();
    CHECK(max_abs(p - expm_oracle(q.matrix(), 2.0)) < 1e-9);
    CHECK(p.minCoeff() >= 0.0);
}

TEST_CASE("semigroup law") {
    std::mt19937_64 gen(12);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    for (int i = 0; i < 50; ++i) {
        const Generator q = random_generator(gen, 2 + static_cast<std::size_t>(i % 4));
        const double t = u(gen), s = u(gen);
        const Eigen::MatrixXd lhs = transition_matrix(q, t + s).matrix();
        const Eigen::MatrixXd rhs = transition_matrix(q, t).matrix() * transition_matrix(q, s).matrix();
        CHECK(max_abs(lhs - rhs) <= 1e-9);
    }
}

TEST_CASE("resolvent_matrix") {
    const Generator sym = symmetric_chain();
    Eigen::MatrixXd expected(2, 2);
    expected << 2, 1, 1, 2;
    expected /= 3.0;
    CHECK(max_abs(resolvent_matrix(sym, 1.0) - expected) < 1e-14);
    CHECK(max_abs(resolvent_matrix(sym, 1e-9) - Eigen::MatrixXd::Identity(2, 2)) < 1e-8);
    CHECK(kind_of([&] { resolvent_matrix(sym, 0.0); }) == ErrorKind::InvalidParameter);
    CHECK(kind_of([&] { resolvent_matrix(sym, -1.0); }) == ErrorKind::InvalidParameter);

    std::mt19937_64 gen(13);
    for (int i = 0; i < 40; ++i) {
        const Generator q = random_generator(gen, 2 + static_cast<std::size_t>(i % 4), 3.0, 0.2);
        const double lambda = 0.5 / std::max(q.max_exit_rate(), 1e-3);
        const Eigen::MatrixXd j = resolvent_matrix(q, lambda);
        const auto n = static_cast<Eigen::Index>(q.size());
        const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
        CHECK(max_abs((id - lambda * q.matrix()) * j - id) <= 1e-10);
        CHECK((j.rowwise().sum().array() - 1.0).abs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("evolve_law") {
    const Generator sym = symmetric_chain();
    const Measure da = Measure::point_mass(sym.space(), 0);
    CHECK(evolve_law(sym, da, 0.0).probs() == da.probs());
    for (double t : {0.2, 1.0, 4.0}) {
        const Measure m = evolve_law(sym, da, t);
        CHECK(std::abs(m[0] - 0.5 * (1 + std::exp(-2 * t))) < 1e-13);
        CHECK(std::abs(m[1] - 0.5 * (1 - std::exp(-2 * t))) < 1e-13);
    }
    std::mt19937_64 gen(14);
    std::uniform_real_distribution<double> ut(0.0, 10.0);
    for (int i = 0; i < 50; ++i) {
        const Generator q = random_generator(gen, 2 + static_cast<std::size_t>(i % 4), 3.0, 0.3);
        const Measure mu = random_measure(gen, q.space(), 0.0);
        const Measure m = evolve_law(q, mu, ut(gen));
        CHECK(m.probs().minCoeff() >= 0.0);
        CHECK(std::abs(m.probs().sum() - 1.0) <= 1e-10);
    }
    for (int i = 0; i < 20; ++i) {
        const Generator q = random_generator(gen, 2 + static_cast<std::size_t>(i % 4));
        const Measure pi = stationary_law(q);
        CHECK((q.matrix().transpose() * pi.probs()).cwiseAbs().maxCoeff() < 1e-12);
        for (double t : {0.3, 2.0, 50.0}) {
            CHECK((evolve_law(q, pi, t).probs() - pi.probs()).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("relative_entropy") {
    const StateSpace s({"a", "b"});
    const Measure da = Measure::point_mass(s, 0), db = Measure::point_mass(s, 1), u = Measure::uniform(s);
    CHECK(relative_entropy(u, u) == 0.0);
    CHECK(relative_entropy(da, da) == 0.0);
    CHECK(std::abs(relative_entropy(da, u) - std::log(2.0)) < 1e-15);
    CHECK(std::isinf(relative_entropy(da, db)));

    std::mt19937_64 gen(15);
    for (int i = 0; i < 200; ++i) {
        const StateSpace sp = StateSpace::indexed(2 + static_cast<std::size_t>(i % 4));
        const Measure mu = random_measure(gen, sp, 0.0), nu = random_measure(gen, sp, 0.01);
        const double l1 = (mu.probs() - nu.probs()).lpNorm<1>();
        CHECK(relative_entropy(mu, nu) >= 0.5 * l1 * l1 - 1e-15);
    }
}

TEST_CASE("sample_jump_path") {
    const Generator abs = absorbing_chain();
    const JumpPath from_b = sample_jump_path(abs, 1, 10.0, 1);
    CHECK(from_b.jump_times.empty());
    CHECK(from_b.states == std::vector<std::size_t>{1});

    const Generator q3 = symmetric_chain(3);
    CHECK(sample_jump_path(q3, 0, 5.0, 99) == sample_jump_path(q3, 0, 5.0, 99));
    CHECK(!(sample_jump_path(q3, 0, 5.0, 99) == sample_jump_path(q3, 0, 5.0, 100)));

    const JumpPath p = sample_jump_path(q3, 2, 5.0, 7);
    CHECK(p.states.size() == p.jump_times.size() + 1);
    for (std::size_t i = 0; i + 1 < p.states.size(); ++i) CHECK(p.states[i] != p.states[i + 1]);
    for (double tj : p.jump_times) CHECK((tj > 0.0 && tj <= 5.0));

    // Survival of one unit-rate clock.
    const double t = 0.7;
    const int trials = 100000;
    int survived = 0;
    for (int seed = 0; seed < trials; ++seed) {
        if (sample_jump_path(abs, 0, t, static_cast<std::uint64_t>(seed)).jump_times.empty()) ++survived;
    }
    const double p_hat = static_cast<double>(survived) / trials;
    const double p_true = std::exp(-t);
    const double sigma = std::sqrt(p_true * (1 - p_true) / trials);
    CHECK(std::abs(p_hat - p_true) < 3 * sigma);
}

TEST_CASE("jump target frequencies follow the rates") {
    Eigen::MatrixXd r(3, 3);
    r << 0, 1, 3, 1, 0, 1, 1, 1, 0;
    const Generator q = validate_generator(StateSpace::indexed(3), r);
    Rng rng(5);
    const int trials = 40000;
    int to2 = 0;
    for (int i = 0; i < trials; ++i) {
        const JumpPath p = sample_jump_path(q, 0, 100.0, rng);
        if (p.states.at(1) == 2) ++to2;
    }
    const double sigma = std::sqrt(0.75 * 0.25 / trials);
    CHECK(std::abs(to2 / static_cast<double>(trials) - 0.75) < 4 * sigma);
}

TEST_CASE("rng streams") {
    Rng a = Rng::for_stream(42, 3), b = Rng::for_stream(42, 3), c = Rng::for_stream(42, 4);
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    CHECK(x != c.next_u64());
    Rng u(1);
    double sum = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double v = u.uniform();
        CHECK_FALSE((v < 0.0 || v >= 1.0));
        sum += v;
    }
    CHECK(std::abs(sum / 100000 - 0.5) < 0.005);
}
