#include "markov_ldp/lagrangian.hpp"

#include <cmath>

#include "markov_ldp/hamiltonian.hpp"

namespace ldp {

Speed::Speed(StateSpace space, Eigen::VectorXd u) : space_(std::move(space)), u_(std::move(u)) {
    if (u_.size() != static_cast<Eigen::Index>(space_.size())) {
        throw LdpError(ErrorKind::MalformedModel, "speed length does not match state count");
    }
    if (!u_.allFinite()) throw LdpError(ErrorKind::MalformedModel, "speed has non-finite entries");
    const double scale = std::max(1.0, u_.cwiseAbs().maxCoeff());
    if (std::abs(u_.sum()) > 1e-10 * scale) {
        throw LdpError(ErrorKind::InfeasibleSpeed, "speed has total mass " + std::to_string(u_.sum()));
    }
}

double inner(const Potential& f, const Speed& u) {
    require_same_space(f.space(), u.space(), "inner");
    return f.values().dot(u.values());
}

Speed speed(const Generator& q, const Measure& mu, const Potential& g) {
    require_same_space(q.space(), mu.space(), "speed");
    require_same_space(q.space(), g.space(), "speed");
    const std::size_t n = q.size();
    Eigen::VectorXd u = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    for (std::size_t x = 0; x < n; ++x) {
        if (mu[x] == 0.0) continue;
        for (std::size_t y = 0; y < n; ++y) {
            if (y == x || q.rate(x, y) == 0.0) continue;
            const double flux = mu[x] * q.rate(x, y) * std::exp(g[y] - g[x]);
            u(static_cast<Eigen::Index>(y)) += flux;
            u(static_cast<Eigen::Index>(x)) -= flux;
        }
    }
    return Speed(q.space(), std::move(u));
}

Speed forward_speed(const Generator& q, const Measure& mu) {
    return speed(q, mu, Potential::zero(q.space()));
}

namespace {

// Active edges (x, y) carry weight mu_x r(x,y) > 0.
struct EdgeList {
    std::vector<std::size_t> from, to;
    std::vector<double> weight;
};

EdgeList active_edges(const Generator& q, const Measure& mu) {
    EdgeList e;
    for (std::size_t x = 0; x < q.size(); ++x) {
        if (mu[x] == 0.0) continue;
        for (std::size_t y = 0; y < q.size(); ++y) {
            if (y == x) continue;
            const double w = mu[x] * q.rate(x, y);
            if (w > 0.0) {
                e.from.push_back(x);
                e.to.push_back(y);
                e.weight.push_back(w);
            }
        }
    }
    return e;
}

} // namespace

LagrangianResult lagrangian_value(const Generator& q, const Measure& mu, const Speed& u,
                                  const DualOptions& options) {
    require_same_space(q.space(), mu.space(), "lagrangian_value");
    require_same_space(q.space(), u.space(), "lagrangian_value");
    const std::size_t n = q.size();
    const EdgeList edges = active_edges(q, mu);
    const Eigen::VectorXd& uv = u.values();

    ConcaveProblem problem;
    problem.dim = n;
    problem.gauge_preference = {options.gauge_state};
    problem.value = [&](const Eigen::VectorXd& f) {
        double h = 0.0;
        for (std::size_t k = 0; k < edges.weight.size(); ++k) {
            h += edges.weight[k] * std::expm1(f(edges.to[k]) - f(edges.from[k]));
        }
        return f.dot(uv) - h;
    };
    problem.derivatives = [&](const Eigen::VectorXd& f, Eigen::VectorXd& grad, Eigen::MatrixXd& hess) {
        grad = uv;
        hess.setZero(n, n);
        for (std::size_t k = 0; k < edges.weight.size(); ++k) {
            const auto x = static_cast<Eigen::Index>(edges.from[k]);
            const auto y = static_cast<Eigen::Index>(edges.to[k]);
            const double w = edges.weight[k] * std::exp(f(y) - f(x));
            grad(y) -= w;
            grad(x) += w;
            hess(x, x) -= w;
            hess(y, y) -= w;
            hess(x, y) += w;
            hess(y, x) += w;
        }
    };

    const SolveResult solved = maximize_concave(problem, options);
    LagrangianResult out{.value = solved.value,
                         .maximizer = std::nullopt,
                         .last_iterate = Potential(q.space(), solved.argmax),
                         .status = solved.status,
                         .iterations = solved.iterations,
                         .gradient_norm = solved.gradient_norm};
    if (solved.status == SolveStatus::Attained) {
        bool unattained_component = false;
        for (std::size_t x = 0; x < n; ++x) {
            if (solved.arbitrary[x] && mu[x] == 0.0) unattained_component = true;
        }
        if (!unattained_component) out.maximizer = out.last_iterate;
        out.value = std::max(out.value, 0.0);
    }
    return out;
}

double dual_check(const Generator& q, const Measure& mu, const Potential& f, const DualOptions& options) {
    const double lhs = inner(apply_hamiltonian(q, f), mu);
    const Speed u = speed(q, mu, f);
    const LagrangianResult l = lagrangian_value(q, mu, u, options);
    return std::abs(lhs - (inner(f, u) - l.value));
}

} // namespace ldp
