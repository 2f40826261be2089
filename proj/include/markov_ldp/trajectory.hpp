#pragma once

// Doob h-transform trajectories. For a terminal potential f on [0, t] the
// flow h(s) = V(t - s) f tilts the chain into a time-inhomogeneous chain
// with generators A^{h(s)}; its law solves gamma' = (A^{h(s)})' gamma and is
// the cheapest measure path that makes <f, gamma(t)> large.

#include <string>
#include <vector>

#include "markov_ldp/lagrangian.hpp"
#include "markov_ldp/rate_function.hpp"

namespace ldp {

struct DoobFlow {
    StateSpace space;
    double horizon = 0.0;
    std::vector<Potential> h; // h[k] = V(horizon - s_k) f on K+1 uniform nodes

    std::size_t intervals() const { return h.size() - 1; }
    double dt() const { return horizon / static_cast<double>(intervals()); }
};

// Which potential freezes the tilted generator over one step.
enum class FreezeRule {
    Left,     // h(s_k): first order in dt
    Midpoint, // h(s_k + dt/2) = V(dt/2) h(s_{k+1}): second order in dt
};

struct TrajectoryOptions {
    DualOptions dual;
    FreezeRule freeze = FreezeRule::Midpoint;
};

struct DoobPath {
    PathGrid path;
    ActionResult action;
};

DoobFlow doob_flow(const Generator& q, const Potential& f, double t, std::size_t intervals);

DoobPath doob_forward(const Generator& q, const Measure& mu0, const DoobFlow& flow,
                      const TrajectoryOptions& options = {});

enum class BridgeStatus {
    Exact,    // the conditional-rate maximizer was attained
    Boundary, // maximizer unattained; the bridge uses a capped terminal potential
};

struct BridgeOptions {
    TrajectoryOptions trajectory;
    // Sup-norm cap on the terminal potential of boundary bridges.
    double cap = 30.0;
};

struct BridgeResult {
    DoobPath doob;
    double rate = 0.0;  // I_t(mu1 | mu0)
    Potential terminal; // potential driving the bridge
    BridgeStatus status = BridgeStatus::Exact;
    // Duality gap of the terminal potential: rate - (<f, mu1> - <V(t) f, mu0>).
    double gap_estimate = 0.0;
    std::string warning;
};

// Throws InfeasibleBridge when the conditional rate is infinite.
BridgeResult optimal_bridge(const Generator& q, const Measure& mu0, const Measure& mu1, double t,
                            std::size_t intervals, const BridgeOptions& options = {});

PathGrid zero_cost_path(const Generator& q, const Measure& mu0, double t, std::size_t intervals);

// <f, gamma(t)> - action along the Doob path driven by f: the control value
// that must equal <V(t) f, mu0>.
double doob_control_value(const Generator& q, const Measure& mu0, const Potential& f, double t,
                          std::size_t intervals, const TrajectoryOptions& options = {});

// |<f, gamma(t)> - <V(t) f, mu0> - action| with the initial law pinned to mu0.
double entropy_identity_check(const Generator& q, const Measure& mu0, const Potential& f, double t,
                              std::size_t intervals, const TrajectoryOptions& options = {});

} // namespace ldp
