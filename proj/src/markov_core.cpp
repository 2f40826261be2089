#include "markov_ldp/markov_core.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace ldp {

namespace {

constexpr double kRowSumTol = 1e-12;
constexpr double kMeasureSumTol = 1e-10;
constexpr double kDriftRenormalize = 1e-12;
constexpr double kDriftFatal = 1e-8;
constexpr double kPoissonTail = 1e-13;

std::string fmt_entry(std::size_t x, std::size_t y) {
    std::ostringstream os;
    os << "(" << x << "," << y << ")";
    return os.str();
}

// Mass-drift rule shared by every numerically produced probability vector.
void repair_probability(Eigen::Ref<Eigen::VectorXd> p, std::string_view context) {
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (p(i) < 0.0) {
            if (p(i) < -kDriftRenormalize) {
                throw LdpError(ErrorKind::InternalError,
                               std::string(context) + ": negative probability " + std::to_string(p(i)));
            }
            p(i) = 0.0;
        }
    }
    const double drift = std::abs(p.sum() - 1.0);
    if (drift > kDriftFatal) {
        throw LdpError(ErrorKind::InternalError,
                       std::string(context) + ": probability mass drift " + std::to_string(drift));
    }
    if (drift > kDriftRenormalize) p /= p.sum();
}

} // namespace

// ---------------------------------------------------------------------------
// StateSpace

StateSpace::StateSpace(std::vector<std::string> labels) {
    if (labels.size() < 2) {
        throw LdpError(ErrorKind::MalformedModel, "state space needs at least two states");
    }
    std::set<std::string> seen;
    for (const auto& l : labels) {
        if (!seen.insert(l).second) {
            throw LdpError(ErrorKind::MalformedModel, "duplicate state label '" + l + "'");
        }
    }
    labels_ = std::make_shared<const std::vector<std::string>>(std::move(labels));
}

StateSpace StateSpace::indexed(std::size_t size) {
    std::vector<std::string> labels;
    labels.reserve(size);
    for (std::size_t i = 0; i < size; ++i) labels.push_back("s" + std::to_string(i));
    return StateSpace(std::move(labels));
}

std::optional<std::size_t> StateSpace::index_of(std::string_view label) const {
    const auto& ls = *labels_;
    for (std::size_t i = 0; i < ls.size(); ++i) {
        if (ls[i] == label) return i;
    }
    return std::nullopt;
}

void require_same_space(const StateSpace& a, const StateSpace& b, std::string_view what) {
    if (!(a == b)) {
        throw LdpError(ErrorKind::MalformedModel, std::string(what) + ": state spaces differ");
    }
}

// ---------------------------------------------------------------------------
// Generator

double Generator::max_exit_rate() const {
    double m = 0.0;
    for (std::size_t x = 0; x < size(); ++x) m = std::max(m, exit_rate(x));
    return m;
}

Generator validate_generator(const StateSpace& space, const Eigen::MatrixXd& raw_rates) {
    const auto n = static_cast<Eigen::Index>(space.size());
    if (raw_rates.rows() != n || raw_rates.cols() != n) {
        std::ostringstream os;
        os << "rate matrix is " << raw_rates.rows() << "x" << raw_rates.cols() << ", expected " << n << "x"
           << n;
        throw LdpError(ErrorKind::MalformedModel, os.str());
    }
    Eigen::MatrixXd q = raw_rates;
    for (Eigen::Index x = 0; x < n; ++x) {
        double row = 0.0;
        for (Eigen::Index y = 0; y < n; ++y) {
            if (x == y) continue;
            const double r = q(x, y);
            if (!std::isfinite(r)) {
                throw LdpError(ErrorKind::MalformedModel, "non-finite rate at " + fmt_entry(x, y));
            }
            if (r < 0.0) {
                throw LdpError(ErrorKind::InvalidRate,
                               "negative rate " + std::to_string(r) + " at " + fmt_entry(x, y));
            }
            row += r;
        }
        q(x, x) = -row;
    }
    return Generator(space, std::move(q));
}

Generator validate_generator(std::vector<std::string> labels, const Eigen::MatrixXd& raw_rates) {
    return validate_generator(StateSpace(std::move(labels)), raw_rates);
}

// ---------------------------------------------------------------------------
// Measure / Potential / StochasticMatrix

Measure::Measure(StateSpace space, Eigen::VectorXd p) : space_(std::move(space)), p_(std::move(p)) {
    if (p_.size() != static_cast<Eigen::Index>(space_.size())) {
        throw LdpError(ErrorKind::MalformedModel, "probability vector length does not match state count");
    }
    for (Eigen::Index i = 0; i < p_.size(); ++i) {
        if (!std::isfinite(p_(i)) || p_(i) < 0.0) {
            throw LdpError(ErrorKind::MalformedModel, "probability entry " + std::to_string(i) + " is invalid");
        }
    }
    if (std::abs(p_.sum() - 1.0) > kMeasureSumTol) {
        throw LdpError(ErrorKind::MalformedModel, "probabilities sum to " + std::to_string(p_.sum()));
    }
}

Measure Measure::from_numeric(StateSpace space, Eigen::VectorXd p) {
    repair_probability(p, "measure");
    return Measure(std::move(space), std::move(p));
}

Measure Measure::uniform(const StateSpace& space) {
    const auto n = static_cast<Eigen::Index>(space.size());
    return Measure(space, Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n)));
}

Measure Measure::point_mass(const StateSpace& space, std::size_t x) {
    Eigen::VectorXd p = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(space.size()));
    p(static_cast<Eigen::Index>(x)) = 1.0;
    return Measure(space, std::move(p));
}

Potential::Potential(StateSpace space, Eigen::VectorXd f) : space_(std::move(space)), f_(std::move(f)) {
    if (f_.size() != static_cast<Eigen::Index>(space_.size())) {
        throw LdpError(ErrorKind::MalformedModel, "potential length does not match state count");
    }
    if (!f_.allFinite()) throw LdpError(ErrorKind::MalformedModel, "potential has non-finite entries");
}

Potential Potential::zero(const StateSpace& space) {
    return Potential(space, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(space.size())));
}

double inner(const Potential& f, const Measure& mu) {
    require_same_space(f.space(), mu.space(), "inner");
    return f.values().dot(mu.probs());
}

StochasticMatrix::StochasticMatrix(StateSpace space, Eigen::MatrixXd p)
    : space_(std::move(space)), p_(std::move(p)) {
    const auto n = static_cast<Eigen::Index>(space_.size());
    if (p_.rows() != n || p_.cols() != n) {
        throw LdpError(ErrorKind::MalformedModel, "stochastic matrix has wrong shape");
    }
    for (Eigen::Index x = 0; x < n; ++x) {
        Eigen::VectorXd row = p_.row(x).transpose();
        repair_probability(row, "transition row");
        p_.row(x) = row.transpose();
    }
}

std::size_t JumpPath::state_at(double t) const {
    const auto it = std::upper_bound(jump_times.begin(), jump_times.end(), t);
    return states[static_cast<std::size_t>(it - jump_times.begin())];
}

// ---------------------------------------------------------------------------
// Semigroup, resolvent, evolution

StochasticMatrix transition_matrix(const Generator& q, double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw LdpError(ErrorKind::InvalidTime, "transition time must be finite and nonnegative");
    }
    const auto n = static_cast<Eigen::Index>(q.size());
    const double lambda = q.max_exit_rate();
    if (t == 0.0 || lambda == 0.0) return StochasticMatrix(q.space(), Eigen::MatrixXd::Identity(n, n));

    // Uniformization on a piece of length t / 2^squarings with lambda * piece <= 1,
    // then repeated squaring. Every term is nonnegative.
    const double x = lambda * t;
    const int squarings = x > 1.0 ? static_cast<int>(std::ceil(std::log2(x))) : 0;
    const double xp = std::ldexp(x, -squarings);

    const Eigen::MatrixXd jump = Eigen::MatrixXd::Identity(n, n) + q.matrix() / lambda;
    double weight = std::exp(-xp);
    double cumulative = weight;
    Eigen::MatrixXd power = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd p = weight * power;
    for (int k = 1; 1.0 - cumulative >= kPoissonTail && k < 200; ++k) {
        weight *= xp / k;
        power = power * jump;
        p += weight * power;
        cumulative += weight;
    }
    for (int s = 0; s < squarings; ++s) p = p * p;
    return StochasticMatrix(q.space(), std::move(p));
}

Eigen::MatrixXd resolvent_matrix(const Generator& q, double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw LdpError(ErrorKind::InvalidParameter, "resolvent parameter must be positive");
    }
    const auto n = static_cast<Eigen::Index>(q.size());
    const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n) - lambda * q.matrix();
    return a.partialPivLu().solve(Eigen::MatrixXd::Identity(n, n));
}

Measure evolve_law(const Generator& q, const Measure& mu, double t) {
    require_same_space(q.space(), mu.space(), "evolve_law");
    const StochasticMatrix p = transition_matrix(q, t);
    Eigen::VectorXd out = p.matrix().transpose() * mu.probs();
    return Measure::from_numeric(q.space(), std::move(out));
}

Measure stationary_law(const Generator& q) {
    const auto n = static_cast<Eigen::Index>(q.size());
    Eigen::MatrixXd a(n + 1, n);
    a.topRows(n) = q.matrix().transpose();
    a.row(n).setOnes();
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n + 1);
    b(n) = 1.0;
    Eigen::VectorXd pi = a.colPivHouseholderQr().solve(b);
    return Measure::from_numeric(q.space(), std::move(pi));
}

double relative_entropy(const Measure& mu, const Measure& nu) {
    require_same_space(mu.space(), nu.space(), "relative_entropy");
    double h = 0.0;
    for (std::size_t x = 0; x < mu.size(); ++x) {
        if (mu[x] == 0.0) continue;
        if (nu[x] == 0.0) return std::numeric_limits<double>::infinity();
        h += mu[x] * std::log(mu[x] / nu[x]);
    }
    return std::max(h, 0.0);
}

// ---------------------------------------------------------------------------
// Sampling

namespace {

std::size_t draw_target(const Generator& q, std::size_t x, Rng& rng, std::vector<double>& weights) {
    weights.assign(q.size(), 0.0);
    for (std::size_t y = 0; y < q.size(); ++y) {
        if (y != x) weights[y] = q.rate(x, y);
    }
    return rng.categorical(weights);
}

} // namespace

JumpPath sample_jump_path(const Generator& q, std::size_t x0, double horizon, Rng& rng) {
    if (!(horizon > 0.0)) throw LdpError(ErrorKind::InvalidTime, "horizon must be positive");
    if (x0 >= q.size()) throw LdpError(ErrorKind::InvalidParameter, "initial state out of range");
    JumpPath path{q.space(), {}, {x0}, horizon};
    std::vector<double> weights;
    double t = 0.0;
    std::size_t x = x0;
    while (true) {
        const double exit = q.exit_rate(x);
        if (exit <= 0.0) break;
        t += rng.exponential(exit);
        if (t > horizon) break;
        x = draw_target(q, x, rng, weights);
        path.jump_times.push_back(t);
        path.states.push_back(x);
    }
    return path;
}

JumpPath sample_jump_path(const Generator& q, std::size_t x0, double horizon, std::uint64_t seed) {
    Rng rng(seed);
    return sample_jump_path(q, x0, horizon, rng);
}

std::size_t sample_state_at(const Generator& q, std::size_t x0, double horizon, Rng& rng) {
    std::vector<double> weights;
    double t = 0.0;
    std::size_t x = x0;
    while (true) {
        const double exit = q.exit_rate(x);
        if (exit <= 0.0) return x;
        t += rng.exponential(exit);
        if (t > horizon) return x;
        x = draw_target(q, x, rng, weights);
    }
}

} // namespace ldp
