// Acceptance suite: one PASS/FAIL line per criterion. Exit status 1 when any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "markov_ldp/errors.hpp"
#include "markov_ldp/hamiltonian.hpp"
#include "markov_ldp/lagrangian.hpp"
#include "markov_ldp/montecarlo.hpp"
#include "markov_ldp/rate_function.hpp"
#include "markov_ldp/trajectory.hpp"
#include "test_support.hpp"

using namespace ldp;
using namespace ldp::testing;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::size_t random_size(std::mt19937_64& gen) { return std::uniform_int_distribution<std::size_t>(2, 5)(gen); }

Outcome duality_suite() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 gen(1001);
    double worst_dual = 0.0, worst_young = INFINITY, worst_l = 0.0;
    for (int i = 0; i < 200; ++i) {
        const Generator q = random_generator(gen, random_size(gen));
        const Measure mu = random_measure(gen, q.space());
        const Potential f = random_potential(gen, q.space(), 2.0);
        const Potential g = random_potential(gen, q.space(), 2.0);
        worst_dual = std::max(worst_dual, dual_check(q, mu, f));
        const Speed u = speed(q, mu, g);
        const double l = lagrangian_value(q, mu, u).value;
        worst_young = std::min(worst_young, inner(apply_hamiltonian(q, f), mu) + l - inner(f, u));
        worst_l = std::max(worst_l, std::abs(l - inner(pre_lagrangian(q, g), mu)));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = worst_dual < 1e-6 && worst_young >= -1e-8 && worst_l < 1e-6 && secs < 30.0;
    return {pass, fmt("max dual residual %.2e, min Young slack %.2e, max |L - <Lg,mu>| %.2e, %.2f s", worst_dual,
                      worst_young, worst_l, secs)};
}

Outcome resolvent_convergence() {
    const Generator q = symmetric_chain();
    const Potential f(q.space(), Eigen::Vector2d(0.0, 1.0));
    const Eigen::VectorXd exact = v_apply(q, f, 1.0).values();
    std::vector<double> errs;
    for (int n : {8, 64, 512}) errs.push_back((resolvent_iterate(q, f, 1.0, n).values() - exact).cwiseAbs().maxCoeff());
    const bool pass = errs[0] > errs[1] && errs[1] > errs[2] && errs[2] < 5e-3;
    return {pass, fmt("errors %.3e, %.3e, %.3e at n = 8, 64, 512", errs[0], errs[1], errs[2])};
}

Outcome nisio_equality() {
    std::mt19937_64 gen(1003);
    std::uniform_real_distribution<double> ut(0.1, 2.0);
    double worst = 0.0;
    std::vector<double> ratios;
    for (int i = 0; i < 50; ++i) {
        const Generator q = random_generator(gen, random_size(gen));
        const Measure mu0 = random_measure(gen, q.space(), 0.0);
        const Potential f = random_potential(gen, q.space(), 2.0);
        const double t = ut(gen);
        const double target = inner(Potential(q.space(), v_oracle(q, f.values(), t)), mu0);
        const double e1 = std::abs(doob_control_value(q, mu0, f, t, 1000) - target);
        const double e2 = std::abs(doob_control_value(q, mu0, f, t, 2000) - target);
        worst = std::max(worst, e1);
        if (e1 > 1e-9) ratios.push_back(e2 / e1);
    }
    std::sort(ratios.begin(), ratios.end());
    const double median = ratios.empty() ? NAN : ratios[ratios.size() / 2];
    const bool halves = !ratios.empty() && median >= 0.35 && median <= 0.65;
    return {worst < 1e-3 && halves,
            fmt("max error %.2e at K = 1000; median err(2K)/err(K) = %.3f over %zu draws (halving needs 0.35..0.65)",
                worst, median, ratios.size())};
}

Outcome bridge_consistency() {
    std::mt19937_64 gen(1004);
    std::uniform_real_distribution<double> uw(0.05, 0.95), ut(0.3, 2.0);
    double worst_gap = 0.0, worst_end = 0.0;
    for (int i = 0; i < 20; ++i) {
        const Generator q = random_generator(gen, random_size(gen));
        const Measure mu0 = random_measure(gen, q.space(), 0.0);
        const double t = ut(gen), w = uw(gen);
        const Measure evolved = evolve_law(q, mu0, t);
        const Measure mu1(q.space(), w * evolved.probs() + (1 - w) * Measure::uniform(q.space()).probs());
        const BridgeResult b = optimal_bridge(q, mu0, mu1, t, 1000);
        worst_gap = std::max(worst_gap, std::abs(b.doob.action.value - b.rate));
        worst_end = std::max(worst_end, (b.doob.path.back().probs() - mu1.probs()).lpNorm<1>());
    }
    return {worst_gap < 1e-3 && worst_end < 2e-3,
            fmt("max |action - rate| %.2e, max endpoint l1 %.2e over 20 interior targets", worst_gap, worst_end)};
}

Outcome analytic_benchmark() {
    const Generator q = absorbing_chain();
    const Measure da = Measure::point_mass(q.space(), 0);
    double worst_rate = 0.0, worst_action = 0.0;
    for (double t : {0.25, 0.5, 1.0}) {
        worst_rate = std::max(worst_rate, std::abs(conditional_rate(q, da, da, t).value - t));
        const PathGrid hold(q.space(), 0.0, t, std::vector<Measure>(201, da));
        worst_action = std::max(worst_action, std::abs(path_action(q, hold).value - t));
    }
    const double l = lagrangian_value(q, da, Speed(q.space(), Eigen::Vector2d::Zero())).value;
    const bool pass = worst_rate < 1e-4 && worst_action < 2e-3 && std::abs(l - 1.0) < 1e-6;
    return {pass, fmt("max |I_t - t| %.2e, max |action - t| %.2e, |L(delta_a, 0) - 1| %.2e", worst_rate, worst_action,
                      std::abs(l - 1.0))};
}

Outcome partition_consistency() {
    std::mt19937_64 gen(1006);
    double worst_drop = 0.0, worst_gap = 0.0;
    for (int i = 0; i < 10; ++i) {
        const Generator q = random_generator(gen, random_size(gen));
        const Measure mu0 = random_measure(gen, q.space());
        const Measure p0 = i % 2 == 0 ? mu0 : random_measure(gen, q.space());
        const Potential f = random_potential(gen, q.space(), 2.0);
        const DoobPath doob = doob_forward(q, mu0, doob_flow(q, f, 1.0, 256));
        double prev = -INFINITY, last = 0.0;
        for (std::size_t cells : {1, 2, 4, 8, 16}) {
            last = partition_rate(q, doob.path, uniform_partition(doob.path, cells), p0);
            worst_drop = std::max(worst_drop, prev - last);
            prev = last;
        }
        worst_gap = std::max(worst_gap, std::abs(last - (relative_entropy(mu0, p0) + doob.action.value)));
    }
    return {worst_drop <= 1e-6 && worst_gap < 1e-2,
            fmt("largest decrease under refinement %.2e, max |rate_16 - (H + action)| %.2e", worst_drop, worst_gap)};
}

Outcome entropy_decomposition() {
    std::mt19937_64 gen(1007);
    std::uniform_real_distribution<double> ut(0.1, 2.0);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const Generator q = random_generator(gen, random_size(gen));
        const Measure mu0 = random_measure(gen, q.space(), 0.0);
        const Potential f = random_potential(gen, q.space(), 1.0);
        worst = std::max(worst, entropy_identity_check(q, mu0, f, ut(gen), 1000));
    }
    return {worst < 1e-3, fmt("max residual %.2e at K = 1000", worst)};
}

Outcome monte_carlo_trend() {
    const auto start = std::chrono::steady_clock::now();
    const Generator q = absorbing_chain();
    const Measure da = Measure::point_mass(q.space(), 0);
    const std::vector<std::size_t> ns{50, 100, 200, 400};
    const std::uint64_t seed = 20240601;

    const BallEvent control{evolve_law(q, da, 0.5), 0.5, 0.5};
    const DecayEstimate c = estimate_event_decay(q, da, control, ns, 2000, seed);
    const bool control_ok = std::abs(c.slope) <= 2 * c.slope_stderr + 1e-12;

    const BallEvent event{da, 0.5, 0.05};
    const double predicted = ball_rate(q, da, event);
    std::string main_detail;
    bool main_ok = false;
    try {
        const DecayEstimate d = estimate_event_decay(q, da, event, ns, 2000, seed);
        main_ok = std::abs(d.slope - predicted) <= 0.25 * predicted;
        main_detail = fmt("slope %.4f +- %.4f vs ball-corrected rate %.4f", d.slope, d.slope_stderr, predicted);
    } catch (const InsufficientSamplingError& e) {
        std::string hits;
        for (auto h : e.partial().hits) hits += (hits.empty() ? "" : ",") + std::to_string(h);
        main_detail = fmt("insufficient sampling: hits {%s} of 2000 at n = 50,100,200,400; ball-corrected rate %.4f",
                          hits.c_str(), predicted);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {main_ok && control_ok && secs < 120.0,
            main_detail + fmt("; control slope %.2e +- %.2e; %.1f s", c.slope, c.slope_stderr, secs)};
}

Outcome barrel_check() {
    std::mt19937_64 gen(1009);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int m = 0; m < 10; ++m) {
        const Generator q = random_generator(gen, random_size(gen));
        const double rho = barrel_radius(q);
        for (int i = 0; i < 10000; ++i) {
            Eigen::VectorXd g(static_cast<Eigen::Index>(q.size()));
            // Every fourth sample sits on a corner of the ball, where |Hg| peaks.
            for (auto& v : g) v = i % 4 == 0 ? (u(gen) < 0 ? -rho : rho) : rho * u(gen);
            worst = std::max(worst, apply_hamiltonian(q, Potential(q.space(), g)).sup_norm());
        }
    }
    return {worst <= 1.0 + 1e-12, fmt("max |Hg| = %.6f over 10 models x 10^4 samples", worst)};
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 duality suite", duality_suite},
        {"2 resolvent convergence", resolvent_convergence},
        {"3 Nisio equality", nisio_equality},
        {"4 bridge consistency", bridge_consistency},
        {"5 analytic benchmark", analytic_benchmark},
        {"6 partition/integral consistency", partition_consistency},
        {"7 entropy decomposition", entropy_decomposition},
        {"8 Monte Carlo LDP trend", monte_carlo_trend},
        {"9 barrel check", barrel_check},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s  criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
