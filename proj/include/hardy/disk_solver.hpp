#pragma once

#include "hardy/boundary_data.hpp"
#include "hardy/holo.hpp"

namespace hardy {

struct DiskSolveOptions {
    double tol_in = 1e-8;
    // Project the input onto L2_in before solving. With strict set, the
    // input is used as given (it must already pass the membership test).
    bool strict = false;
};

// Inverse of T on the unit disk: g(z) = 2 sum_{k>=0} c_k z^k.
// f must live on an outer component (sign +1) and lie in L2_in up to tol_in.
HoloFunction solve_unit_disk(const ComponentFunction& f, const DiskSolveOptions& opts = {});

// Same inverse on an arbitrary disk, conjugated by z -> (z - center) / radius.
HoloFunction solve_disk(const Circle& circle, const ComponentFunction& f,
                        const DiskSolveOptions& opts = {});

// Real matrix taking interleaved boundary coefficients (modes -M-1..M) to
// interleaved taylor coefficients (degree 0..M, scaled by the radius).
// Includes the projection onto L2_in.
Matrix disk_solver_matrix(int cutoff);

}  // namespace hardy
