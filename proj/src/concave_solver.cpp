#include "markov_ldp/concave_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "markov_ldp/errors.hpp"

namespace ldp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();

struct FlatBlockScan {
    bool unbounded = false;
    std::vector<std::size_t> new_gauges;
    std::vector<std::size_t> singletons;
};

// Connected blocks of the free coordinates under the Hessian sparsity
// pattern. A block whose indicator the Hessian annihilates is an affine
// direction: unbounded if the slope along it is nonzero, otherwise flat and
// pinned at a gauge coordinate.
FlatBlockScan scan_flat_blocks(const Eigen::VectorXd& grad, const Eigen::MatrixXd& hess,
                               const std::vector<bool>& is_fixed,
                               const std::vector<std::size_t>& preference) {
    const std::size_t n = is_fixed.size();
    const double scale = 1.0 + hess.cwiseAbs().maxCoeff();
    const double grad_scale = std::max(1.0, grad.cwiseAbs().maxCoeff());
    FlatBlockScan scan;
    std::vector<int> block(n, -1);
    int nblocks = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (is_fixed[s] || block[s] >= 0) continue;
        std::vector<std::size_t> members{s};
        block[s] = nblocks;
        for (std::size_t k = 0; k < members.size(); ++k) {
            const std::size_t i = members[k];
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i || is_fixed[j] || block[j] >= 0) continue;
                if (hess(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) != 0.0) {
                    block[j] = nblocks;
                    members.push_back(j);
                }
            }
        }
        ++nblocks;

        double residual = 0.0;
        double slope = 0.0;
        for (std::size_t i : members) {
            double row = 0.0;
            for (std::size_t j : members) {
                row += hess(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            }
            residual = std::max(residual, std::abs(row));
            slope += grad(static_cast<Eigen::Index>(i));
        }
        if (residual > 1e-12 * scale) continue;
        if (std::abs(slope) > 1e-10 * grad_scale) {
            scan.unbounded = true;
            return scan;
        }
        std::size_t gauge = *std::min_element(members.begin(), members.end());
        for (std::size_t p : preference) {
            if (std::find(members.begin(), members.end(), p) != members.end()) {
                gauge = p;
                break;
            }
        }
        scan.new_gauges.push_back(gauge);
        if (members.size() == 1) scan.singletons.push_back(gauge);
    }
    return scan;
}

} // namespace

SolveResult maximize_concave(const ConcaveProblem& problem, const SolverOptions& options) {
    const std::size_t n = problem.dim;
    SolveResult result;
    result.argmax = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    result.arbitrary.assign(n, false);

    std::vector<bool> is_fixed(n, false);
    for (std::size_t i : problem.fixed) is_fixed.at(i) = true;

    Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    Eigen::VectorXd grad(static_cast<Eigen::Index>(n));
    Eigen::MatrixXd hess(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    problem.derivatives(x, grad, hess);

    const FlatBlockScan scan = scan_flat_blocks(grad, hess, is_fixed, problem.gauge_preference);
    if (scan.unbounded) {
        result.status = SolveStatus::Unbounded;
        result.value = kInf;
        result.gradient_norm = grad.cwiseAbs().maxCoeff();
        return result;
    }
    for (std::size_t g : scan.new_gauges) is_fixed[g] = true;
    for (std::size_t s : scan.singletons) result.arbitrary[s] = true;

    std::vector<Eigen::Index> free;
    for (std::size_t i = 0; i < n; ++i) {
        if (!is_fixed[i]) free.push_back(static_cast<Eigen::Index>(i));
    }
    const auto m = static_cast<Eigen::Index>(free.size());

    double val = problem.value(x);
    if (m == 0) {
        result.value = val;
        result.gradient_norm = 0.0;
        return result;
    }

    Eigen::VectorXd g(m);
    Eigen::MatrixXd neg_h(m, m);
    for (int it = 0; it < options.max_iters; ++it) {
        if (it > 0) problem.derivatives(x, grad, hess);
        for (Eigen::Index a = 0; a < m; ++a) {
            g(a) = grad(free[a]);
            for (Eigen::Index b = 0; b < m; ++b) neg_h(a, b) = -hess(free[a], free[b]);
        }
        const double gnorm = g.cwiseAbs().maxCoeff();
        result.iterations = it;
        result.gradient_norm = gnorm;

        Eigen::VectorXd d;
        Eigen::LDLT<Eigen::MatrixXd> ldlt(neg_h);
        bool newton_ok = ldlt.info() == Eigen::Success && ldlt.isPositive() &&
                         ldlt.vectorD().minCoeff() > 0.0;
        if (newton_ok) {
            d = ldlt.solve(g);
            newton_ok = d.allFinite() && g.dot(d) > 0.0;
        }
        if (!newton_ok) d = g; // steepest ascent on a singular Hessian

        const double dnorm = d.cwiseAbs().maxCoeff();
        if (gnorm <= options.gradient_tol && dnorm <= options.step_tol) {
            result.status = SolveStatus::Attained;
            result.value = val;
            result.argmax = x;
            return result;
        }
        if (dnorm > options.max_step) d *= options.max_step / dnorm;

        const double slope = g.dot(d);
        const double roundoff = 8.0 * kEps * (1.0 + std::abs(val));
        double alpha = 1.0;
        bool accepted = false;
        Eigen::VectorXd trial = x;
        double trial_val = val;
        while (alpha > 1e-12) {
            trial = x;
            for (Eigen::Index a = 0; a < m; ++a) trial(free[a]) += alpha * d(a);
            trial_val = problem.value(trial);
            if (std::isfinite(trial_val) && trial_val >= val + 1e-4 * alpha * slope - roundoff) {
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted) {
            if (gnorm <= std::sqrt(options.gradient_tol)) {
                result.status = SolveStatus::Attained;
                result.value = val;
                result.argmax = x;
                return result;
            }
            std::ostringstream os;
            os << "line search stalled at iteration " << it << " with gradient norm " << gnorm;
            throw LdpError(ErrorKind::NumericalFailure, os.str());
        }

        const double improvement = trial_val - val;
        x = trial;
        val = trial_val;
        result.argmax = x;
        if (val > options.divergence_value) {
            result.status = SolveStatus::Unbounded;
            result.value = kInf;
            result.iterations = it + 1;
            return result;
        }
        if (x.cwiseAbs().maxCoeff() > options.divergence_norm) {
            result.iterations = it + 1;
            if (improvement > options.improvement_tol) {
                result.status = SolveStatus::Unbounded;
                result.value = kInf;
            } else {
                result.status = SolveStatus::BoundaryValue;
                result.value = val;
            }
            return result;
        }
    }
    std::ostringstream os;
    os << "no convergence within " << options.max_iters << " iterations (gradient norm "
       << result.gradient_norm << ")";
    throw LdpError(ErrorKind::NumericalFailure, os.str());
}

} // namespace ldp
