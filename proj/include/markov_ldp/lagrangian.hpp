#pragma once

// The Lagrangian L(mu, u) = sup_f { <f, u> - <Hf, mu> }: cost rate of moving
// the law mu with velocity u. Its gradient in f is u - rho(mu, f), with
// rho(mu, g) = (A^g)' mu the velocity of the g-tilted forward equation.

#include <optional>

#include "markov_ldp/concave_solver.hpp"
#include "markov_ldp/markov_core.hpp"

namespace ldp {

/// Zero-mass signed vector: a velocity of probability vectors.
class Speed {
public:
    // Throws InfeasibleSpeed when the entries do not sum to zero (within 1e-10, relative to max |u|).
    Speed(StateSpace space, Eigen::VectorXd u);

    const StateSpace& space() const noexcept { return space_; }
    std::size_t size() const noexcept { return space_.size(); }
    const Eigen::VectorXd& values() const noexcept { return u_; }
    double operator[](std::size_t x) const { return u_(static_cast<Eigen::Index>(x)); }

private:
    StateSpace space_;
    Eigen::VectorXd u_;
};

struct DualOptions : SolverOptions {
    // State whose potential is pinned to zero.
    std::size_t gauge_state = 0;
};

struct LagrangianResult {
    double value = 0.0; // +infinity for infeasible speeds
    std::optional<Potential> maximizer; // empty when the supremum is not attained
    Potential last_iterate;
    SolveStatus status = SolveStatus::Attained;
    int iterations = 0;
    double gradient_norm = 0.0;

    bool attained() const { return maximizer.has_value(); }
};

Speed speed(const Generator& q, const Measure& mu, const Potential& g);

// Velocity of the untilted forward equation, Q' mu.
Speed forward_speed(const Generator& q, const Measure& mu);

LagrangianResult lagrangian_value(const Generator& q, const Measure& mu, const Speed& u,
                                  const DualOptions& options = {});

// |<Hf, mu> - (<f, rho(mu,f)> - L(mu, rho(mu,f)))|
double dual_check(const Generator& q, const Measure& mu, const Potential& f, const DualOptions& options = {});

double inner(const Potential& f, const Speed& u);

} // namespace ldp
