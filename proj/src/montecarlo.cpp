#include "markov_ldp/montecarlo.hpp"

#include <cmath>
#include <limits>
#include <span>

namespace ldp {

namespace {

constexpr double kWilsonZ = 1.96;

std::size_t draw_initial(const Measure& mu0, Rng& rng) {
    const Eigen::VectorXd& p = mu0.probs();
    return rng.categorical(std::span<const double>(p.data(), static_cast<std::size_t>(p.size())));
}

// Standard error of -log(p) from the Wilson score interval of h successes in r trials.
double wilson_log_sigma(std::size_t h, std::size_t r) {
    const double n = static_cast<double>(r);
    const double p = static_cast<double>(h) / n;
    const double z2 = kWilsonZ * kWilsonZ;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = kWilsonZ / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    const double lo = std::max(center - half, std::numeric_limits<double>::min());
    const double hi = std::min(center + half, 1.0);
    return (std::log(hi) - std::log(lo)) / (2.0 * kWilsonZ);
}

} // namespace

double l1_distance(const Measure& a, const Measure& b) {
    require_same_space(a.space(), b.space(), "l1_distance");
    return (a.probs() - b.probs()).cwiseAbs().sum();
}

PathGrid empirical_trajectory(const Generator& q, const Measure& mu0, std::size_t copies, const GridShape& grid,
                              std::uint64_t seed) {
    require_same_space(q.space(), mu0.space(), "empirical_trajectory");
    if (copies < 1) throw LdpError(ErrorKind::InvalidParameter, "need at least one copy");
    if (grid.intervals < 1 || !(grid.t1 > grid.t0)) {
        throw LdpError(ErrorKind::InvalidParameter, "invalid grid shape");
    }
    const auto n = static_cast<Eigen::Index>(q.size());
    const std::size_t nodes = grid.intervals + 1;
    const double horizon = grid.t1 - grid.t0;
    std::vector<Eigen::VectorXd> counts(nodes, Eigen::VectorXd::Zero(n));
    for (std::size_t i = 0; i < copies; ++i) {
        Rng rng = Rng::for_stream(seed, i);
        const std::size_t x0 = draw_initial(mu0, rng);
        const JumpPath path = sample_jump_path(q, x0, horizon, rng);
        for (std::size_t k = 0; k < nodes; ++k) {
            const double s = horizon * static_cast<double>(k) / static_cast<double>(grid.intervals);
            counts[k](static_cast<Eigen::Index>(path.state_at(s))) += 1.0;
        }
    }
    std::vector<Measure> measures;
    measures.reserve(nodes);
    for (auto& c : counts) measures.push_back(Measure::from_numeric(q.space(), c / static_cast<double>(copies)));
    return PathGrid(q.space(), grid.t0, grid.t1, std::move(measures));
}

DecayEstimate estimate_event_decay(const Generator& q, const Measure& mu0, const BallEvent& event,
                                   const std::vector<std::size_t>& n_values, std::size_t reps, std::uint64_t seed) {
    require_same_space(q.space(), mu0.space(), "estimate_event_decay");
    require_same_space(q.space(), event.target.space(), "estimate_event_decay");
    if (reps < 100) throw LdpError(ErrorKind::InvalidParameter, "need at least 100 replicas per n");
    if (n_values.size() < 2) throw LdpError(ErrorKind::InvalidParameter, "need at least two n values");
    for (std::size_t i = 0; i < n_values.size(); ++i) {
        if (n_values[i] < 1 || (i > 0 && n_values[i] <= n_values[i - 1])) {
            throw LdpError(ErrorKind::InvalidParameter, "n values must be positive and strictly increasing");
        }
    }
    if (!(event.time > 0.0) || !(event.radius > 0.0)) {
        throw LdpError(ErrorKind::InvalidParameter, "event time and radius must be positive");
    }

    const auto ns = static_cast<Eigen::Index>(q.size());
    DecayEstimate est;
    est.n_values = n_values;
    est.reps = reps;
    Eigen::VectorXd counts(ns);
    for (std::size_t j = 0; j < n_values.size(); ++j) {
        const std::size_t n = n_values[j];
        const std::uint64_t level_seed = Rng::for_stream(seed, j).next_u64();
        std::size_t hits = 0;
        for (std::size_t r = 0; r < reps; ++r) {
            Rng rng = Rng::for_stream(level_seed, r);
            counts.setZero();
            for (std::size_t c = 0; c < n; ++c) {
                const std::size_t x0 = draw_initial(mu0, rng);
                counts(static_cast<Eigen::Index>(sample_state_at(q, x0, event.time, rng))) += 1.0;
            }
            const double dist = (counts / static_cast<double>(n) - event.target.probs()).cwiseAbs().sum();
            if (dist < event.radius) ++hits;
        }
        est.hits.push_back(hits);
        est.log_probs.push_back(hits == 0 ? -std::numeric_limits<double>::infinity()
                                          : std::log(static_cast<double>(hits) / static_cast<double>(reps)));
        est.log_sigmas.push_back(hits == 0 ? std::numeric_limits<double>::infinity() : wilson_log_sigma(hits, reps));
    }
    for (std::size_t j = 0; j < n_values.size(); ++j) {
        if (est.hits[j] == 0) {
            throw InsufficientSamplingError("no hits observed at n = " + std::to_string(n_values[j]) + " with " +
                                                std::to_string(reps) + " replicas",
                                            est);
        }
    }

    // Weighted least squares of y = -log P on n with weights 1 / sigma^2.
    double sw = 0.0, swx = 0.0, swy = 0.0, swxx = 0.0, swxy = 0.0;
    for (std::size_t j = 0; j < n_values.size(); ++j) {
        const double w = 1.0 / (est.log_sigmas[j] * est.log_sigmas[j]);
        const double x = static_cast<double>(n_values[j]);
        const double y = -est.log_probs[j];
        sw += w;
        swx += w * x;
        swy += w * y;
        swxx += w * x * x;
        swxy += w * x * y;
    }
    const double det = sw * swxx - swx * swx;
    est.slope = (sw * swxy - swx * swy) / det;
    est.intercept = (swxx * swy - swx * swxy) / det;
    est.slope_stderr = std::sqrt(sw / det);
    return est;
}

double ball_rate(const Generator& q, const Measure& mu0, const BallEvent& event, const DualOptions& options) {
    const Measure typical = evolve_law(q, mu0, event.time);
    const double dist = l1_distance(typical, event.target);
    if (dist < event.radius) return 0.0;
    const double s = event.radius / dist;
    const Eigen::VectorXd point = event.target.probs() + s * (typical.probs() - event.target.probs());
    const RateResult r = conditional_rate(q, mu0, Measure::from_numeric(q.space(), point), event.time, options);
    return r.value;
}

} // namespace ldp
