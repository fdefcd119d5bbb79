#pragma once

#include <vector>

#include "hardy/boundary_data.hpp"
#include "hardy/holo.hpp"

namespace hardy {

struct OracleOptions {
    int taylor_degree = 32;
    int pole_degree = 32;
    int oversample = 2;
    // Optional permutation of the basis columns (identity when empty).
    std::vector<int> column_order;
    double max_condition = 1e10;
};

struct OracleResult {
    HoloFunction function;
    CVector coefficients;  // in `basis` order
    LaurentBasis basis;
    double max_residual = 0.0;       // max |Im((F - f) nu_half)| over the fit nodes
    double rms_residual = 0.0;       // arc-length weighted
    double held_out_residual = 0.0;  // weighted rms at the midpoints between fit nodes
    double condition = 0.0;          // of the column-scaled system
};

// Least-squares collocation: minimize the arc-length weighted sum over
// boundary nodes of |Im((F - f) nu_half)|^2 over a Laurent basis.
OracleResult solve_ls(const CircleDomain& domain, const BoundaryFunction& f,
                      const OracleOptions& options = {});

}  // namespace hardy
