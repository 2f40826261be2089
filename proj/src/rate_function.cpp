#include "markov_ldp/rate_function.hpp"

#include <cmath>
#include <limits>

#include "markov_ldp/hamiltonian.hpp"

namespace ldp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

RateResult to_rate_result(const SolveResult& solved, const StateSpace& space, std::size_t offset = 0) {
    const auto n = static_cast<Eigen::Index>(space.size());
    Potential last(space, solved.argmax.segment(static_cast<Eigen::Index>(offset), n));
    RateResult out{.value = solved.value,
                   .maximizer = std::nullopt,
                   .last_iterate = last,
                   .status = solved.status,
                   .iterations = solved.iterations};
    if (solved.status == SolveStatus::Attained) {
        out.maximizer = last;
        out.value = std::max(out.value, 0.0);
    }
    return out;
}

} // namespace

// ---------------------------------------------------------------------------

PathGrid::PathGrid(StateSpace space, double t0, double t1, std::vector<Measure> nodes)
    : space_(std::move(space)), t0_(t0), t1_(t1), nodes_(std::move(nodes)) {
    if (!(t1_ > t0_) || !std::isfinite(t0_) || !std::isfinite(t1_)) {
        throw LdpError(ErrorKind::InvalidTime, "path grid needs t0 < t1");
    }
    if (nodes_.size() < 2) throw LdpError(ErrorKind::InvalidParameter, "path grid needs at least one interval");
    for (const auto& m : nodes_) require_same_space(space_, m.space(), "PathGrid");
}

double PathGrid::time(std::size_t k) const {
    return t0_ + (t1_ - t0_) * static_cast<double>(k) / static_cast<double>(intervals());
}

Partition::Partition(std::vector<double> times) : times_(std::move(times)) {
    if (times_.empty()) throw LdpError(ErrorKind::InvalidParameter, "partition is empty");
    for (std::size_t i = 0; i < times_.size(); ++i) {
        if (!std::isfinite(times_[i])) throw LdpError(ErrorKind::InvalidTime, "partition time is not finite");
        if (i > 0 && !(times_[i] > times_[i - 1])) {
            throw LdpError(ErrorKind::InvalidTime, "partition times must be strictly increasing");
        }
    }
}

// ---------------------------------------------------------------------------

RateResult conditional_rate(const Generator& q, const Measure& mu, const Measure& nu, double t,
                            const DualOptions& options) {
    require_same_space(q.space(), mu.space(), "conditional_rate");
    require_same_space(q.space(), nu.space(), "conditional_rate");
    if (!(t > 0.0)) throw LdpError(ErrorKind::InvalidTime, "conditional rate needs t > 0");
    const std::size_t n = q.size();
    const Eigen::MatrixXd p = transition_matrix(q, t).matrix();

    std::vector<Eigen::Index> rows;
    for (std::size_t x = 0; x < n; ++x) {
        if (mu[x] > 0.0) rows.push_back(static_cast<Eigen::Index>(x));
    }
    const Eigen::VectorXd& nuv = nu.probs();
    const Eigen::VectorXd& muv = mu.probs();

    ConcaveProblem problem;
    problem.dim = n;
    problem.gauge_preference = {options.gauge_state};
    problem.value = [&](const Eigen::VectorXd& f) {
        const Eigen::VectorXd v = log_expectation(p, f);
        double acc = 0.0;
        for (Eigen::Index x : rows) acc += muv(x) * v(x);
        return f.dot(nuv) - acc;
    };
    problem.derivatives = [&](const Eigen::VectorXd& f, Eigen::VectorXd& grad, Eigen::MatrixXd& hess) {
        grad = nuv;
        hess.setZero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        const double shift = f.maxCoeff();
        const Eigen::VectorXd e = (f.array() - shift).exp().matrix();
        for (Eigen::Index x : rows) {
            Eigen::VectorXd pi = p.row(x).transpose().cwiseProduct(e);
            pi /= pi.sum();
            grad -= muv(x) * pi;
            hess.diagonal() -= muv(x) * pi;
            hess.noalias() += muv(x) * pi * pi.transpose();
        }
    };
    return to_rate_result(maximize_concave(problem, options), q.space());
}

// ---------------------------------------------------------------------------

RateResult joint_rate(const Generator& q, const Measure& mu0, const Partition& partition,
                      const std::vector<Measure>& marginals, const DualOptions& options) {
    require_same_space(q.space(), mu0.space(), "joint_rate");
    const std::size_t k = partition.size();
    if (marginals.size() != k + 1) {
        throw LdpError(ErrorKind::InvalidParameter, "joint_rate needs one marginal per time plus the initial law");
    }
    if (!(partition.times().front() > 0.0)) {
        throw LdpError(ErrorKind::InvalidTime, "joint_rate partition times must be positive");
    }
    for (const auto& m : marginals) require_same_space(q.space(), m.space(), "joint_rate");

    const std::size_t n = q.size();
    const auto ni = static_cast<Eigen::Index>(n);
    const std::size_t blocks = k + 1;
    const std::size_t dim = n * blocks;

    // transitions[i] maps time i-1 to time i; transitions[0] is unused.
    std::vector<Eigen::MatrixXd> transitions(blocks);
    double prev = 0.0;
    for (std::size_t i = 1; i < blocks; ++i) {
        const double tau = partition.times()[i - 1];
        transitions[i] = transition_matrix(q, tau - prev).matrix();
        prev = tau;
    }

    Eigen::VectorXd nu_all(static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < blocks; ++i) nu_all.segment(static_cast<Eigen::Index>(i) * ni, ni) = marginals[i].probs();
    const Eigen::VectorXd& mu0v = mu0.probs();

    auto block = [&](const Eigen::VectorXd& f, std::size_t i) {
        return f.segment(static_cast<Eigen::Index>(i) * ni, ni);
    };

    // Backward recursion g_k = f_k, g_{i-1} = f_{i-1} + V(t_i - t_{i-1}) g_i; returns log E[...].
    auto backward = [&](const Eigen::VectorXd& f, std::vector<Eigen::VectorXd>& g) {
        g.assign(blocks, Eigen::VectorXd());
        g[k] = block(f, k);
        for (std::size_t i = k; i >= 1; --i) g[i - 1] = block(f, i - 1) + log_expectation(transitions[i], g[i]);
        double shift = -std::numeric_limits<double>::infinity();
        for (Eigen::Index x = 0; x < ni; ++x) {
            if (mu0v(x) > 0.0) shift = std::max(shift, g[0](x));
        }
        double z = 0.0;
        for (Eigen::Index x = 0; x < ni; ++x) {
            if (mu0v(x) > 0.0) z += mu0v(x) * std::exp(g[0](x) - shift);
        }
        return shift + std::log(z);
    };

    ConcaveProblem problem;
    problem.dim = dim;
    problem.value = [&](const Eigen::VectorXd& f) {
        std::vector<Eigen::VectorXd> g;
        return f.dot(nu_all) - backward(f, g);
    };
    problem.derivatives = [&](const Eigen::VectorXd& f, Eigen::VectorXd& grad, Eigen::MatrixXd& hess) {
        std::vector<Eigen::VectorXd> g;
        const double log_z = backward(f, g);
        // Tilted chain: initial law m_0 and transition kernels K_i.
        std::vector<Eigen::VectorXd> m(blocks);
        std::vector<Eigen::MatrixXd> kern(blocks);
        m[0] = Eigen::VectorXd::Zero(ni);
        for (Eigen::Index x = 0; x < ni; ++x) {
            if (mu0v(x) > 0.0) m[0](x) = mu0v(x) * std::exp(g[0](x) - log_z);
        }
        for (std::size_t i = 1; i < blocks; ++i) {
            const Eigen::VectorXd vg = g[i - 1] - block(f, i - 1);
            kern[i].resize(ni, ni);
            for (Eigen::Index x = 0; x < ni; ++x) {
                for (Eigen::Index y = 0; y < ni; ++y) {
                    const double pxy = transitions[i](x, y);
                    kern[i](x, y) = pxy == 0.0 ? 0.0 : pxy * std::exp(g[i](y) - vg(x));
                }
            }
            m[i] = kern[i].transpose() * m[i - 1];
        }
        grad.resize(static_cast<Eigen::Index>(dim));
        hess.setZero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
        for (std::size_t i = 0; i < blocks; ++i) {
            const auto oi = static_cast<Eigen::Index>(i) * ni;
            grad.segment(oi, ni) = marginals[i].probs() - m[i];
            Eigen::MatrixXd diag_block = -(m[i] * m[i].transpose());
            diag_block.diagonal() += m[i];
            hess.block(oi, oi, ni, ni) = -diag_block;
            Eigen::MatrixXd joint = m[i].asDiagonal();
            for (std::size_t j = i + 1; j < blocks; ++j) {
                joint = joint * kern[j];
                const auto oj = static_cast<Eigen::Index>(j) * ni;
                const Eigen::MatrixXd cov = joint - m[i] * m[j].transpose();
                hess.block(oi, oj, ni, ni) = -cov;
                hess.block(oj, oi, ni, ni) = -cov.transpose();
            }
        }
    };

    // Pin one coordinate per time block inside the support of that block's law.
    Eigen::VectorXd reach = mu0v;
    for (std::size_t i = 0; i < blocks; ++i) {
        if (i > 0) reach = transitions[i].transpose() * reach;
        std::size_t gauge = options.gauge_state;
        if (!(reach(static_cast<Eigen::Index>(gauge)) > 0.0)) {
            for (std::size_t x = 0; x < n; ++x) {
                if (reach(static_cast<Eigen::Index>(x)) > 0.0) {
                    gauge = x;
                    break;
                }
            }
        }
        problem.fixed.push_back(i * n + gauge);
    }

    const SolveResult solved = maximize_concave(problem, options);
    RateResult out = to_rate_result(solved, q.space(), 0);
    if (solved.status != SolveStatus::Unbounded) out.value = std::max(solved.value, 0.0);
    return out;
}

// ---------------------------------------------------------------------------

ActionResult path_action(const Generator& q, const PathGrid& path, const DualOptions& options) {
    require_same_space(q.space(), path.space(), "path_action");
    const double dt = path.dt();
    ActionResult out;
    out.cell_actions.reserve(path.intervals());
    for (std::size_t c = 0; c < path.intervals(); ++c) {
        const Eigen::VectorXd& a = path.at(c).probs();
        const Eigen::VectorXd& b = path.at(c + 1).probs();
        const Measure mid = Measure::from_numeric(q.space(), 0.5 * (a + b));
        Eigen::VectorXd u = (b - a) / dt;
        // Node masses agree to 1e-10; remove that drift from the difference quotient.
        u.array() -= u.sum() / static_cast<double>(u.size());
        const LagrangianResult l = lagrangian_value(q, mid, Speed(q.space(), std::move(u)), options);
        if (!std::isfinite(l.value)) {
            out.value = kInf;
            out.first_infinite_cell = c;
            return out;
        }
        out.cell_actions.push_back(dt * l.value);
    }
    double total = 0.0;
    for (double v : out.cell_actions) total += v;
    out.value = total;
    return out;
}

namespace {

std::size_t node_index(const PathGrid& path, double t) {
    const double pos = (t - path.t0()) / path.dt();
    const double rounded = std::round(pos);
    if (rounded < 1.0 || rounded > static_cast<double>(path.intervals()) || std::abs(pos - rounded) > 0.5) {
        throw LdpError(ErrorKind::InvalidParameter, "partition time " + std::to_string(t) + " is not a grid node in (t0, t1]");
    }
    return static_cast<std::size_t>(rounded);
}

} // namespace

double partition_rate(const Generator& q, const PathGrid& path, const Partition& partition, const Measure& p0,
                      const DualOptions& options) {
    require_same_space(q.space(), path.space(), "partition_rate");
    double total = relative_entropy(path.front(), p0);
    if (!std::isfinite(total)) return kInf;
    std::size_t prev = 0;
    for (double t : partition.times()) {
        const std::size_t node = node_index(path, t);
        if (node <= prev) throw LdpError(ErrorKind::InvalidParameter, "partition times map to repeated grid nodes");
        const RateResult r = conditional_rate(q, path.at(prev), path.at(node), path.time(node) - path.time(prev), options);
        if (!r.finite()) return kInf;
        total += r.value;
        prev = node;
    }
    return total;
}

Partition uniform_partition(const PathGrid& path, std::size_t cells) {
    if (cells == 0 || path.intervals() % cells != 0) {
        throw LdpError(ErrorKind::InvalidParameter, "partition cell count must divide the grid interval count");
    }
    std::vector<double> times;
    const std::size_t stride = path.intervals() / cells;
    for (std::size_t j = 1; j <= cells; ++j) times.push_back(path.time(j * stride));
    return Partition(std::move(times));
}

} // namespace ldp
