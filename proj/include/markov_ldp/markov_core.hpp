#pragma once

// Finite-state continuous-time Markov chains: generators, the transition
// semigroup e^{tQ}, the linear resolvent, law evolution, relative entropy and
// jump-path sampling.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "markov_ldp/errors.hpp"
#include "markov_ldp/rng.hpp"

namespace ldp {

/// Ordered set of distinct state labels (at least two). Copies share the label storage.
class StateSpace {
public:
    explicit StateSpace(std::vector<std::string> labels);

    // States named "s0", "s1", ...
    static StateSpace indexed(std::size_t size);

    std::size_t size() const noexcept { return labels_->size(); }
    const std::string& label(std::size_t i) const { return (*labels_)[i]; }
    const std::vector<std::string>& labels() const noexcept { return *labels_; }
    std::optional<std::size_t> index_of(std::string_view label) const;

    friend bool operator==(const StateSpace& a, const StateSpace& b) {
        return a.labels_ == b.labels_ || *a.labels_ == *b.labels_;
    }

private:
    std::shared_ptr<const std::vector<std::string>> labels_;
};

void require_same_space(const StateSpace& a, const StateSpace& b, std::string_view what);

/// Rate matrix of a CTMC: nonnegative off-diagonal rates, zero row sums.
class Generator {
public:
    const StateSpace& space() const noexcept { return space_; }
    std::size_t size() const noexcept { return space_.size(); }
    const Eigen::MatrixXd& matrix() const noexcept { return q_; }
    double rate(std::size_t x, std::size_t y) const { return q_(x, y); }
    double exit_rate(std::size_t x) const { return -q_(x, x); }
    double max_exit_rate() const;

private:
    Generator(StateSpace space, Eigen::MatrixXd q) : space_(std::move(space)), q_(std::move(q)) {}
    friend Generator validate_generator(const StateSpace&, const Eigen::MatrixXd&);

    StateSpace space_;
    Eigen::MatrixXd q_;
};

/// Probability vector on a StateSpace.
class Measure {
public:
    // Throws MalformedModel unless entries are >= 0 and sum to 1 within 1e-10.
    Measure(StateSpace space, Eigen::VectorXd p);

    // Accepts the output of a numerical computation: clamps negatives above
    // -1e-12, renormalizes when the mass drift lies in (1e-12, 1e-8], and
    // throws InternalError on anything larger.
    static Measure from_numeric(StateSpace space, Eigen::VectorXd p);

    static Measure uniform(const StateSpace& space);
    static Measure point_mass(const StateSpace& space, std::size_t x);

    const StateSpace& space() const noexcept { return space_; }
    std::size_t size() const noexcept { return space_.size(); }
    const Eigen::VectorXd& probs() const noexcept { return p_; }
    double operator[](std::size_t x) const { return p_(static_cast<Eigen::Index>(x)); }

private:
    StateSpace space_;
    Eigen::VectorXd p_;
};

/// Real function on the states.
class Potential {
public:
    Potential(StateSpace space, Eigen::VectorXd f);

    static Potential zero(const StateSpace& space);

    const StateSpace& space() const noexcept { return space_; }
    std::size_t size() const noexcept { return space_.size(); }
    const Eigen::VectorXd& values() const noexcept { return f_; }
    double operator[](std::size_t x) const { return f_(static_cast<Eigen::Index>(x)); }
    double sup_norm() const { return f_.cwiseAbs().maxCoeff(); }

private:
    StateSpace space_;
    Eigen::VectorXd f_;
};

double inner(const Potential& f, const Measure& mu);

/// Row-stochastic matrix, e.g. the transition probabilities over a time span.
class StochasticMatrix {
public:
    StochasticMatrix(StateSpace space, Eigen::MatrixXd p);

    const StateSpace& space() const noexcept { return space_; }
    const Eigen::MatrixXd& matrix() const noexcept { return p_; }
    double operator()(std::size_t x, std::size_t y) const { return p_(x, y); }

private:
    StateSpace space_;
    Eigen::MatrixXd p_;
};

/// Piecewise-constant realization of the chain on [0, horizon].
struct JumpPath {
    StateSpace space;
    std::vector<double> jump_times;
    std::vector<std::size_t> states; // jump_times.size() + 1 entries
    double horizon = 0.0;

    std::size_t state_at(double t) const;
    friend bool operator==(const JumpPath&, const JumpPath&) = default;
};

// Off-diagonal entries are the rates; the diagonal is ignored and replaced by
// minus the row sum.
Generator validate_generator(const StateSpace& space, const Eigen::MatrixXd& raw_rates);
Generator validate_generator(std::vector<std::string> labels, const Eigen::MatrixXd& raw_rates);

StochasticMatrix transition_matrix(const Generator& q, double t);
Eigen::MatrixXd resolvent_matrix(const Generator& q, double lambda);
Measure evolve_law(const Generator& q, const Measure& mu, double t);
Measure stationary_law(const Generator& q);

// +infinity when mu is not absolutely continuous with respect to nu.
double relative_entropy(const Measure& mu, const Measure& nu);

JumpPath sample_jump_path(const Generator& q, std::size_t x0, double horizon, std::uint64_t seed);
JumpPath sample_jump_path(const Generator& q, std::size_t x0, double horizon, Rng& rng);

// State at `horizon` only; avoids storing the jump record.
std::size_t sample_state_at(const Generator& q, std::size_t x0, double horizon, Rng& rng);

} // namespace ldp
