#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hardy/io.hpp"
#include "hardy/mc_solver.hpp"

namespace hardy {

// Random data with Gaussian coefficients on modes |k| <= band.
BoundaryFunction random_smooth_data(const CircleDomain& domain, int cutoff, int band, std::mt19937_64& rng);
// Same on one component, projected onto L2_in.
ComponentFunction random_in_data(const CircleDomain& domain, int j, int cutoff, int band,
                                 std::mt19937_64& rng);

// Phi(c) for the distinguished component j, c in interleaved coordinates
// (k = -1..-N), built from the stored correction coefficients.
HoloFunction phi_function(const SolverOperator& solver, int j, const Vector& c);
// Calls fn on every component block of the solver and of its sub-solvers.
void for_each_block(const SolverOperator& solver, const std::function<void(const ComponentBlock&)>& fn);

struct CheckResult {
    std::string name;
    double value = 0.0;
    double bound = 0.0;
    bool lower = false;  // value must be >= bound instead of <=
    bool pass = false;
};

struct VerifyOptions {
    std::uint64_t seed = 7;
    int modes = 64;
    int trials = 3;
    int band = 8;
    int threads = 1;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool all_pass() const;
};

VerifyReport run_verify(const CircleDomain& domain, const VerifyOptions& options = {});
std::string verify_table(const VerifyReport& report);
json verify_to_json(const VerifyReport& report);

}  // namespace hardy
