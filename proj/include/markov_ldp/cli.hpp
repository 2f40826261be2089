#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "markov_ldp/lagrangian.hpp"
#include "markov_ldp/model_io.hpp"

namespace ldp {

struct CheckRow {
    std::string name;
    double observed = 0.0;  // worst error over the sampled cases
    double tolerance = 0.0;
    bool pass = false;
};

// Randomized invariant suite of all numerical modules on one model.
std::vector<CheckRow> run_check_suite(const Model& model, double t, std::uint64_t seed, const DualOptions& options);

// Exit codes: 0 success, 1 failed checks, 2 usage or parse errors, 3 model validation errors,
// 4 numerical failures.
int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int execute(int argc, char** argv);

} // namespace ldp
