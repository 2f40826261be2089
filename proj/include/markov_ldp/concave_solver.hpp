#pragma once

// Damped Newton ascent for smooth concave objectives whose Hessian has the
// structure of a (generalized) graph Laplacian: flat directions are constant
// shifts on connected blocks, and suprema may be attained only at infinity.

#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace ldp {

struct SolverOptions {
    double gradient_tol = 1e-9;
    int max_iters = 200;
    // Iterates leaving this sup-norm ball trigger the divergence rule.
    double divergence_norm = 50.0;
    // Objective values above this are reported as +infinity (1/eps, eps = 1e-6).
    double divergence_value = 1e6;
    // Per-step improvement separating "unbounded" from "converging at infinity".
    double improvement_tol = 1e-10;
    // Newton step size below which a small gradient counts as converged.
    double step_tol = 1e-6;
    double max_step = 5.0;
};

struct ConcaveProblem {
    std::size_t dim = 0;
    std::function<double(const Eigen::VectorXd&)> value;
    // Gradient and Hessian of the objective (the Hessian is negative semidefinite).
    std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&, Eigen::MatrixXd&)> derivatives;
    // Coordinates pinned to zero by the caller.
    std::vector<std::size_t> fixed;
    // Preferred gauge coordinates for flat blocks discovered by the solver.
    std::vector<std::size_t> gauge_preference;
};

enum class SolveStatus {
    Attained,      // gradient vanished at a finite point
    BoundaryValue, // objective converged while the iterate escaped to infinity
    Unbounded,     // supremum is +infinity
};

struct SolveResult {
    SolveStatus status = SolveStatus::Attained;
    double value = 0.0; // +infinity when Unbounded
    Eigen::VectorXd argmax; // last iterate (the maximizer when Attained)
    // Coordinates that do not enter the objective at all.
    std::vector<bool> arbitrary;
    int iterations = 0;
    double gradient_norm = 0.0;
};

// Starts from zero. Throws NumericalFailure when neither convergence nor
// divergence evidence appears within max_iters.
SolveResult maximize_concave(const ConcaveProblem& problem, const SolverOptions& options);

} // namespace ldp
