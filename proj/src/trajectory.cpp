#include "markov_ldp/trajectory.hpp"

#include <cmath>

#include "markov_ldp/hamiltonian.hpp"

namespace ldp {

DoobFlow doob_flow(const Generator& q, const Potential& f, double t, std::size_t intervals) {
    require_same_space(q.space(), f.space(), "doob_flow");
    if (!(t > 0.0)) throw LdpError(ErrorKind::InvalidTime, "Doob flow horizon must be positive");
    if (intervals < 1) throw LdpError(ErrorKind::InvalidParameter, "Doob flow needs at least one interval");
    DoobFlow flow{q.space(), t, {}};
    flow.h.reserve(intervals + 1);
    const double dt = t / static_cast<double>(intervals);
    for (std::size_t k = 0; k < intervals; ++k) {
        flow.h.push_back(v_apply(q, f, t - static_cast<double>(k) * dt));
    }
    flow.h.push_back(f);
    return flow;
}

DoobPath doob_forward(const Generator& q, const Measure& mu0, const DoobFlow& flow,
                      const TrajectoryOptions& options) {
    require_same_space(q.space(), mu0.space(), "doob_forward");
    require_same_space(q.space(), flow.space, "doob_forward");
    const std::size_t steps = flow.intervals();
    const double dt = flow.dt();
    std::vector<Measure> nodes;
    nodes.reserve(steps + 1);
    nodes.push_back(mu0);
    for (std::size_t k = 0; k < steps; ++k) {
        const Potential frozen = options.freeze == FreezeRule::Midpoint ? v_apply(q, flow.h[k + 1], 0.5 * dt)
                                                                        : flow.h[k];
        const Generator tilted = tilted_generator(q, frozen);
        const StochasticMatrix step = transition_matrix(tilted, dt);
        Eigen::VectorXd next = step.matrix().transpose() * nodes.back().probs();
        if (next.minCoeff() < -1e-9) {
            throw LdpError(ErrorKind::IntegrationFailure,
                           "negative probability at step " + std::to_string(k));
        }
        next = next.cwiseMax(0.0);
        next /= next.sum();
        nodes.push_back(Measure(q.space(), std::move(next)));
    }
    PathGrid path(q.space(), 0.0, flow.horizon, std::move(nodes));
    ActionResult action = path_action(q, path, options.dual);
    return DoobPath{std::move(path), std::move(action)};
}

BridgeResult optimal_bridge(const Generator& q, const Measure& mu0, const Measure& mu1, double t,
                            std::size_t intervals, const BridgeOptions& options) {
    const RateResult rate = conditional_rate(q, mu0, mu1, t, options.trajectory.dual);
    if (!rate.finite()) {
        throw LdpError(ErrorKind::InfeasibleBridge, "target law is unreachable at finite cost");
    }
    BridgeStatus status = BridgeStatus::Exact;
    std::string warning;
    Eigen::VectorXd terminal;
    if (rate.maximizer) {
        terminal = rate.maximizer->values();
    } else {
        status = BridgeStatus::Boundary;
        terminal = rate.last_iterate.values().cwiseMax(-options.cap).cwiseMin(options.cap);
        warning = "BoundaryBridge: conditional-rate maximizer is unattained; terminal potential capped at " +
                  std::to_string(options.cap);
    }
    Potential f(q.space(), std::move(terminal));
    const double dual_value = inner(f, mu1) - inner(v_apply(q, f, t), mu0);
    DoobPath doob = doob_forward(q, mu0, doob_flow(q, f, t, intervals), options.trajectory);
    return BridgeResult{.doob = std::move(doob),
                        .rate = rate.value,
                        .terminal = std::move(f),
                        .status = status,
                        .gap_estimate = rate.value - dual_value,
                        .warning = std::move(warning)};
}

PathGrid zero_cost_path(const Generator& q, const Measure& mu0, double t, std::size_t intervals) {
    if (!(t > 0.0)) throw LdpError(ErrorKind::InvalidTime, "path horizon must be positive");
    if (intervals < 1) throw LdpError(ErrorKind::InvalidParameter, "path needs at least one interval");
    std::vector<Measure> nodes;
    nodes.reserve(intervals + 1);
    for (std::size_t k = 0; k <= intervals; ++k) {
        nodes.push_back(evolve_law(q, mu0, t * static_cast<double>(k) / static_cast<double>(intervals)));
    }
    return PathGrid(q.space(), 0.0, t, std::move(nodes));
}

double doob_control_value(const Generator& q, const Measure& mu0, const Potential& f, double t,
                          std::size_t intervals, const TrajectoryOptions& options) {
    const DoobPath doob = doob_forward(q, mu0, doob_flow(q, f, t, intervals), options);
    return inner(f, doob.path.back()) - doob.action.value;
}

double entropy_identity_check(const Generator& q, const Measure& mu0, const Potential& f, double t,
                              std::size_t intervals, const TrajectoryOptions& options) {
    // Initial density e^{-V(t)f} pins Q_0 = mu0, so H(Q_0 | P_0) = 0 and the
    // path-space entropy reduces to <f, gamma(t)> - <V(t) f, mu0>.
    const DoobPath doob = doob_forward(q, mu0, doob_flow(q, f, t, intervals), options);
    const double entropy = inner(f, doob.path.back()) - inner(v_apply(q, f, t), mu0);
    return std::abs(entropy - doob.action.value);
}

} // namespace ldp
