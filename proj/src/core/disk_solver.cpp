#include "hardy/disk_solver.hpp"

#include <algorithm>
#include <cmath>

#include "hardy/error.hpp"

namespace hardy {

namespace {

ComponentFunction checked_input(const ComponentFunction& f, const DiskSolveOptions& opts) {
    if (f.sign() != 1) {
        throw Error(ErrorKind::Validation, "disk data must live on an outer component");
    }
    const double res = membership_residual(f, Side::In);
    if (res > opts.tol_in * std::max(1.0, f.norm())) {
        throw Error(ErrorKind::NotInLIn,
                    "boundary data not in L2_in (residual " + std::to_string(res) + ")");
    }
    return opts.strict ? f : project(f, Side::In);
}

}  // namespace

HoloFunction solve_unit_disk(const ComponentFunction& f, const DiskSolveOptions& opts) {
    return solve_disk(Circle({0.0, 0.0}, 1.0), f, opts);
}

HoloFunction solve_disk(const Circle& circle, const ComponentFunction& f,
                        const DiskSolveOptions& opts) {
    const ComponentFunction g = checked_input(f, opts);
    // Transporting 2 sum c_k w^k back along w = (z - a)/r with weight
    // sqrt(1/r) cancels the weight applied to the data, so the taylor block
    // in the scaled variable (z - a)/r carries 2 c_k directly.
    LaurentLeaf leaf;
    leaf.taylor = {circle.center, circle.radius, {}};
    for (int k = 0; k <= g.cutoff(); ++k) leaf.taylor.coeffs.push_back(2.0 * g.mode(k));
    return HoloFunction::leaf(std::move(leaf));
}

Matrix disk_solver_matrix(int cutoff) {
    const int modes = 2 * cutoff + 2;
    Matrix pick = Matrix::Zero(2 * (cutoff + 1), 2 * modes);
    for (int k = 0; k <= cutoff; ++k) {
        const int col = 2 * (k + cutoff + 1);
        pick(2 * k, col) = 2.0;
        pick(2 * k + 1, col + 1) = 2.0;
    }
    return pick * projection_matrix(cutoff, 1, Side::In);
}

}  // namespace hardy
