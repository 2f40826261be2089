#pragma once

// Independent copies of the chain, their empirical measures, and plain Monte
// Carlo estimates of how fast P[L_n(t) in a ball] decays in n.

#include <cstdint>
#include <vector>

#include "markov_ldp/lagrangian.hpp"
#include "markov_ldp/markov_core.hpp"
#include "markov_ldp/rate_function.hpp"

namespace ldp {

struct GridShape {
    double t0 = 0.0;
    double t1 = 1.0;
    std::size_t intervals = 1;
};

// Copy i draws from Rng::for_stream(seed, i): its initial state from mu0, then its path.
PathGrid empirical_trajectory(const Generator& q, const Measure& mu0, std::size_t copies, const GridShape& grid,
                              std::uint64_t seed);

// Open l1 ball of the given radius around `target`, observed at `time`.
struct BallEvent {
    Measure target;
    double time = 1.0;
    double radius = 0.05;
};

struct DecayEstimate {
    std::vector<std::size_t> n_values;
    std::vector<double> log_probs;  // log of the hit fraction per n
    std::vector<double> log_sigmas; // Wilson-interval standard errors of -log P
    std::vector<std::size_t> hits;
    std::size_t reps = 0;
    double slope = 0.0; // weighted least-squares slope of -log P against n
    double intercept = 0.0;
    double slope_stderr = 0.0;
};

class InsufficientSamplingError : public LdpError {
public:
    InsufficientSamplingError(const std::string& what, DecayEstimate partial)
        : LdpError(ErrorKind::InsufficientSampling, what), partial_(std::move(partial)) {}

    // Counts for every n value; log_probs are -infinity where no hit was seen and no fit is made.
    const DecayEstimate& partial() const noexcept { return partial_; }

private:
    DecayEstimate partial_;
};

// Batch (j, r) for the j-th n value and replica r draws from
// Rng::for_stream(Rng::for_stream(seed, j).next_u64(), r).
// Throws InsufficientSamplingError when some n value sees no hits.
DecayEstimate estimate_event_decay(const Generator& q, const Measure& mu0, const BallEvent& event,
                                   const std::vector<std::size_t>& n_values, std::size_t reps, std::uint64_t seed);

// Conditional rate at the point of the ball boundary on the segment from the
// target towards the typical law; zero when the typical law lies in the ball.
// Upper bound for the infimum of I_t(. | mu0) over the ball.
double ball_rate(const Generator& q, const Measure& mu0, const BallEvent& event, const DualOptions& options = {});

double l1_distance(const Measure& a, const Measure& b);

} // namespace ldp
