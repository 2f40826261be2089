#pragma once

// Rate functions of the empirical-measure process:
//   I_t(nu | mu)   = sup_f { <f, nu> - <V(t)f, mu> }            conditional rate
//   joint rate     = sup_{f_0..f_k} sum <f_i, nu_i> - log E[e^{sum f_i(X(t_i))}]
//   path action    = int L(nu(s), nu'(s)) ds                    on a time grid
//   partition rate = H(nu(t0) | P0) + sum I_{t_i - t_{i-1}}(nu(t_i) | nu(t_{i-1}))

#include <optional>
#include <vector>

#include "markov_ldp/lagrangian.hpp"
#include "markov_ldp/markov_core.hpp"

namespace ldp {

/// Measure-valued path sampled at K+1 uniform nodes of [t0, t1].
class PathGrid {
public:
    PathGrid(StateSpace space, double t0, double t1, std::vector<Measure> nodes);

    const StateSpace& space() const noexcept { return space_; }
    double t0() const noexcept { return t0_; }
    double t1() const noexcept { return t1_; }
    std::size_t intervals() const noexcept { return nodes_.size() - 1; }
    double dt() const noexcept { return (t1_ - t0_) / static_cast<double>(intervals()); }
    double time(std::size_t k) const;
    const Measure& at(std::size_t k) const { return nodes_.at(k); }
    const std::vector<Measure>& nodes() const noexcept { return nodes_; }
    const Measure& front() const { return nodes_.front(); }
    const Measure& back() const { return nodes_.back(); }

private:
    StateSpace space_;
    double t0_;
    double t1_;
    std::vector<Measure> nodes_;
};

/// Strictly increasing observation times.
class Partition {
public:
    explicit Partition(std::vector<double> times);

    const std::vector<double>& times() const noexcept { return times_; }
    std::size_t size() const noexcept { return times_.size(); }

private:
    std::vector<double> times_;
};

struct RateResult {
    double value = 0.0;
    std::optional<Potential> maximizer;
    Potential last_iterate;
    SolveStatus status = SolveStatus::Attained;
    int iterations = 0;

    bool finite() const { return status != SolveStatus::Unbounded; }
};

struct ActionResult {
    double value = 0.0;
    std::vector<double> cell_actions; // dt * L per cell, up to the first infinite cell
    std::optional<std::size_t> first_infinite_cell;

    bool finite() const { return !first_infinite_cell.has_value(); }
};

RateResult conditional_rate(const Generator& q, const Measure& mu, const Measure& nu, double t,
                            const DualOptions& options = {});

// X(0) ~ mu0; marginals[0] is the law at time 0 and marginals[i] the law at partition.times()[i-1].
RateResult joint_rate(const Generator& q, const Measure& mu0, const Partition& partition,
                      const std::vector<Measure>& marginals, const DualOptions& options = {});

// Midpoint measure with the finite-difference speed on every cell.
ActionResult path_action(const Generator& q, const PathGrid& path, const DualOptions& options = {});

// Partition times must fall on grid nodes in (t0, t1].
double partition_rate(const Generator& q, const PathGrid& path, const Partition& partition, const Measure& p0,
                      const DualOptions& options = {});

// Times t0 + j (t1 - t0) / cells, j = 1..cells; cells must divide the grid's interval count.
Partition uniform_partition(const PathGrid& path, std::size_t cells);

} // namespace ldp
