#pragma once

#include <span>
#include <string>
#include <vector>

#include "hardy/mc_solver.hpp"

namespace hardy {

struct MetricSample {
    cplx w{};
    double ell = 0.0;
    double im_residual = 0.0;
    bool valid = true;
    std::string flag;  // reason when not valid
};

// Regular part at w of the Green-type function with pole 1/(z - w) and the
// Ising boundary condition. Requires distance >= margin / 2 from the boundary.
MetricSample ising_ell(const SolverOperator& solver, cplx w);

// ising_ell per point. Points outside the domain, too close to the boundary,
// or whose pole is not resolved at the solver cutoff are flagged
// ("outside", "near_boundary", "unresolved") instead of raising.
std::vector<MetricSample> metric_grid(const SolverOperator& solver, std::span<const cplx> grid,
                                      int threads = 1);

enum class SpinStructure { Even, Odd };

struct AnnulusReference {
    double value = 0.0;
    double tail_bound = 0.0;  // bound on the omitted terms |n| > K
    int terms = 0;
};

// Closed-form metric of the annulus 1 < |w| < R:
//   even: sum_n |w|^{2n} / (1 + R^{2n+1})
//   odd:  sum_n |w|^{2n+1} / (1 + R^{2n})
// truncated to |n| <= K.
AnnulusReference annulus_reference(cplx w, double outer_radius, SpinStructure structure, int terms = 40);

}  // namespace hardy
