#include "hardy/metric.hpp"

#include <cmath>

#include "hardy/error.hpp"

namespace hardy {

MetricSample ising_ell(const SolverOperator& solver, cplx w) {
    const CircleDomain& domain = solver.domain();
    if (!domain.contains(w)) throw Error(ErrorKind::OutsideDomain, "metric point outside the domain");
    if (domain.distance_to_boundary(w) < 0.5 * domain.margin()) {
        throw Error(ErrorKind::PointTooCloseToBoundary,
                    "metric point closer than margin/2 to the boundary");
    }
    const BoundaryFunction f = restrict(HoloFunction::principal(w, {-1.0}), domain, solver.cutoff());
    const CVector coeffs = solver.solve_coefficients(f);
    const cplx h = solver.function(coeffs)(w);
    return {w, h.real(), std::abs(h.imag()), true, {}};
}

std::vector<MetricSample> metric_grid(const SolverOperator& solver, std::span<const cplx> grid,
                                      int threads) {
    std::vector<MetricSample> out(grid.size());
    parallel_for(static_cast<int>(grid.size()), threads, [&](int i) {
        const cplx w = grid[static_cast<size_t>(i)];
        try {
            out[static_cast<size_t>(i)] = ising_ell(solver, w);
        } catch (const Error& e) {
            MetricSample s;
            s.w = w;
            s.valid = false;
            switch (e.kind()) {
                case ErrorKind::OutsideDomain: s.flag = "outside"; break;
                case ErrorKind::PointTooCloseToBoundary: s.flag = "near_boundary"; break;
                case ErrorKind::Aliasing: s.flag = "unresolved"; break;
                default: throw;
            }
            out[static_cast<size_t>(i)] = s;
        }
    });
    return out;
}

AnnulusReference annulus_reference(cplx w, double outer_radius, SpinStructure structure, int terms) {
    const double r = std::abs(w);
    const double big = outer_radius;
    if (!(big > 1.0)) throw Error(ErrorKind::Validation, "annulus outer radius must exceed 1");
    if (!(r > 1.0 && r < big)) throw Error(ErrorKind::OutsideDomain, "point outside the annulus");
    if (terms < 0) throw Error(ErrorKind::Validation, "truncation must be nonnegative");
    AnnulusReference out;
    out.terms = terms;
    const double q_hi = r * r / (big * big);
    const double q_lo = 1.0 / (r * r);
    auto geometric = [](double q, int from) { return std::pow(q, from) / (1.0 - q); };
    if (structure == SpinStructure::Even) {
        // Positive n scaled by R^{-2n} so large truncations do not overflow.
        for (int n = 0; n <= terms; ++n) {
            out.value += std::pow(q_hi, n) / (std::pow(big, -2 * n) + big);
            if (n > 0) out.value += std::pow(r, -2 * n) / (1.0 + std::pow(big, 1 - 2 * n));
        }
        out.tail_bound = geometric(q_hi, terms + 1) / big + geometric(q_lo, terms + 1);
    } else {
        for (int n = 0; n <= terms; ++n) {
            out.value += r * std::pow(q_hi, n) / (std::pow(big, -2 * n) + 1.0);
            if (n > 0) out.value += std::pow(r, 1 - 2 * n) / (1.0 + std::pow(big, -2 * n));
        }
        out.tail_bound = r * (geometric(q_hi, terms + 1) + geometric(q_lo, terms + 1));
    }
    return out;
}

}  // namespace hardy
