#include "markov_ldp/hamiltonian.hpp"

#include <cmath>

namespace ldp {

Potential apply_hamiltonian(const Generator& q, const Potential& f) {
    require_same_space(q.space(), f.space(), "apply_hamiltonian");
    const std::size_t n = q.size();
    Eigen::VectorXd h = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    for (std::size_t x = 0; x < n; ++x) {
        double acc = 0.0;
        for (std::size_t y = 0; y < n; ++y) {
            if (y == x) continue;
            const double r = q.rate(x, y);
            if (r == 0.0) continue;
            acc += r * std::expm1(f[y] - f[x]);
        }
        h(static_cast<Eigen::Index>(x)) = acc;
    }
    return Potential(q.space(), std::move(h));
}

Potential apply_hamiltonian_conjugated(const Generator& q, const Potential& f) {
    require_same_space(q.space(), f.space(), "apply_hamiltonian_conjugated");
    // Shift by max f before exponentiating; H is invariant under constants.
    const Eigen::VectorXd e = (f.values().array() - f.values().maxCoeff()).exp().matrix();
    Eigen::VectorXd h = (q.matrix() * e).cwiseQuotient(e);
    return Potential(q.space(), std::move(h));
}

Generator tilted_generator(const Generator& q, const Potential& g) {
    require_same_space(q.space(), g.space(), "tilted_generator");
    const auto n = static_cast<Eigen::Index>(q.size());
    Eigen::MatrixXd rates = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index x = 0; x < n; ++x) {
        for (Eigen::Index y = 0; y < n; ++y) {
            if (x == y) continue;
            const double r = q.matrix()(x, y);
            if (r != 0.0) rates(x, y) = r * std::exp(g.values()(y) - g.values()(x));
        }
    }
    return validate_generator(q.space(), rates);
}

Potential apply_tilted_conjugated(const Generator& q, const Potential& g, const Potential& f) {
    require_same_space(q.space(), g.space(), "apply_tilted_conjugated");
    require_same_space(q.space(), f.space(), "apply_tilted_conjugated");
    const Eigen::VectorXd e = (g.values().array() - g.values().maxCoeff()).exp().matrix();
    const Eigen::VectorXd fe = f.values().cwiseProduct(e);
    Eigen::VectorXd out = (q.matrix() * fe).cwiseQuotient(e) - ((q.matrix() * e).cwiseQuotient(e)).cwiseProduct(f.values());
    return Potential(q.space(), std::move(out));
}

Potential apply_generator(const Generator& q, const Potential& f) {
    require_same_space(q.space(), f.space(), "apply_generator");
    return Potential(q.space(), q.matrix() * f.values());
}

Potential pre_lagrangian(const Generator& q, const Potential& g) {
    require_same_space(q.space(), g.space(), "pre_lagrangian");
    const std::size_t n = q.size();
    Eigen::VectorXd l = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    for (std::size_t x = 0; x < n; ++x) {
        double acc = 0.0;
        for (std::size_t y = 0; y < n; ++y) {
            if (y == x) continue;
            const double r = q.rate(x, y);
            if (r == 0.0) continue;
            const double d = g[y] - g[x];
            // e^d d - e^d + 1 >= 0, written to avoid cancellation near d = 0.
            acc += r * (std::exp(d) * d - std::expm1(d));
        }
        l(static_cast<Eigen::Index>(x)) = std::max(acc, 0.0);
    }
    return Potential(q.space(), std::move(l));
}

Eigen::VectorXd log_expectation(const Eigen::MatrixXd& transition, const Eigen::VectorXd& f) {
    const double shift = f.maxCoeff();
    const Eigen::VectorXd e = (f.array() - shift).exp().matrix();
    return ((transition * e).array().log() + shift).matrix();
}

Potential v_apply(const Generator& q, const Potential& f, double t) {
    require_same_space(q.space(), f.space(), "v_apply");
    if (t == 0.0) return f;
    const StochasticMatrix p = transition_matrix(q, t);
    return Potential(q.space(), log_expectation(p.matrix(), f.values()));
}

Potential nonlinear_resolvent(const Generator& q, const Potential& f, double lambda) {
    require_same_space(q.space(), f.space(), "nonlinear_resolvent");
    const Eigen::MatrixXd j = resolvent_matrix(q, lambda);
    return Potential(q.space(), log_expectation(j, f.values()));
}

Potential resolvent_iterate(const Generator& q, const Potential& f, double t, int n) {
    require_same_space(q.space(), f.space(), "resolvent_iterate");
    if (n < 1) throw LdpError(ErrorKind::InvalidParameter, "resolvent iteration count must be >= 1");
    if (!(t >= 0.0) || !std::isfinite(t)) throw LdpError(ErrorKind::InvalidTime, "time must be nonnegative");
    const auto steps = static_cast<long>(std::floor(static_cast<double>(n) * t + 1e-12));
    if (steps == 0) return f;
    const Eigen::MatrixXd j = resolvent_matrix(q, 1.0 / n);
    Eigen::VectorXd g = f.values();
    for (long k = 0; k < steps; ++k) g = log_expectation(j, g);
    return Potential(q.space(), std::move(g));
}

double barrel_radius(const Generator& q) {
    const double r = q.max_exit_rate();
    if (!(r > 0.0)) throw LdpError(ErrorKind::DegenerateModel, "generator has no positive rate");
    return 0.5 * std::log1p(1.0 / r);
}

} // namespace ldp
