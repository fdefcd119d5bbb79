#include "hardy/oracle_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "hardy/error.hpp"

namespace hardy {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Nodes {
    std::vector<cplx> points;
    std::vector<cplx> nu_half;
    std::vector<cplx> data;
    std::vector<double> weight;
};

Nodes make_nodes(const CircleDomain& domain, const BoundaryFunction& f, int per_circle, double shift) {
    Nodes n;
    for (int j = 0; j < domain.components(); ++j) {
        const Circle& c = domain.circle(j);
        const double w = std::sqrt(kTwoPi * c.radius / per_circle);
        for (int i = 0; i < per_circle; ++i) {
            const double theta = kTwoPi * (i + shift) / per_circle;
            n.points.push_back(c.point(theta));
            n.nu_half.push_back(outward_normal(domain, j, theta).nu_half);
            n.data.push_back(f[j].value(theta));
            n.weight.push_back(w);
        }
    }
    return n;
}

// One real row per node: Im(F nu_half) as a linear form in (Re a, Im a).
Matrix system_matrix(const LaurentBasis& basis, const Nodes& n) {
    const CMatrix e = basis.evaluation_matrix(n.points);
    Matrix a(e.rows(), 2 * e.cols());
    for (Eigen::Index r = 0; r < e.rows(); ++r) {
        const cplx nh = n.nu_half[static_cast<size_t>(r)];
        const double w = n.weight[static_cast<size_t>(r)];
        for (Eigen::Index c = 0; c < e.cols(); ++c) {
            const cplx v = e(r, c) * nh;
            a(r, 2 * c) = w * v.imag();
            a(r, 2 * c + 1) = w * v.real();
        }
    }
    return a;
}

Vector system_rhs(const Nodes& n) {
    Vector b(static_cast<Eigen::Index>(n.points.size()));
    for (size_t r = 0; r < n.points.size(); ++r) {
        b(static_cast<Eigen::Index>(r)) = n.weight[r] * (n.data[r] * n.nu_half[r]).imag();
    }
    return b;
}

}  // namespace

OracleResult solve_ls(const CircleDomain& domain, const BoundaryFunction& f,
                      const OracleOptions& options) {
    if (options.taylor_degree < 0 || options.pole_degree < 1) {
        throw Error(ErrorKind::Validation, "oracle basis sizes must be positive");
    }
    if (options.oversample < 2) throw Error(ErrorKind::Validation, "oversample factor must be >= 2");
    if (f.components() != domain.components()) {
        throw Error(ErrorKind::Validation, "boundary data does not match the domain");
    }
    OracleResult out;
    out.basis.taylor_center = domain.outer().center;
    out.basis.taylor_scale = domain.outer().radius;
    out.basis.taylor_degree = options.taylor_degree;
    for (const Circle& h : domain.holes()) out.basis.poles.push_back({h.center, h.radius, options.pole_degree});
    const int size = out.basis.size();

    std::vector<int> order = options.column_order;
    if (order.empty()) {
        order.resize(static_cast<size_t>(size));
        std::iota(order.begin(), order.end(), 0);
    }
    std::vector<int> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < size; ++i) {
        if (static_cast<int>(sorted.size()) != size || sorted[static_cast<size_t>(i)] != i) {
            throw Error(ErrorKind::Validation, "column order is not a permutation of the basis");
        }
    }

    const int per_circle = options.oversample * (2 * std::max(options.taylor_degree, options.pole_degree) + 1);
    const Nodes fit = make_nodes(domain, f, per_circle, 0.0);
    const Matrix natural = system_matrix(out.basis, fit);
    const Vector rhs = system_rhs(fit);

    // Permute complex columns, then scale each by the basis function's
    // sup-norm over the nodes.
    const CMatrix values = out.basis.evaluation_matrix(fit.points);
    Matrix a(natural.rows(), natural.cols());
    Vector scale(natural.cols());
    for (int c = 0; c < size; ++c) {
        const int src = order[static_cast<size_t>(c)];
        const double s = values.col(src).cwiseAbs().maxCoeff();
        const double inv = s > 0.0 ? 1.0 / s : 1.0;
        a.col(2 * c) = natural.col(2 * src) * inv;
        a.col(2 * c + 1) = natural.col(2 * src + 1) * inv;
        scale(2 * c) = scale(2 * c + 1) = inv;
    }

    Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    out.condition = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1)
                                            : std::numeric_limits<double>::infinity();
    if (out.condition > options.max_condition) {
        throw Error(ErrorKind::RankDeficient, "collocation system condition " +
                                                  std::to_string(out.condition) + " exceeds " +
                                                  std::to_string(options.max_condition));
    }
    const Vector y = svd.solve(rhs).cwiseProduct(scale);
    Vector x(2 * size);
    for (int c = 0; c < size; ++c) {
        const int src = order[static_cast<size_t>(c)];
        x(2 * src) = y(2 * c);
        x(2 * src + 1) = y(2 * c + 1);
    }
    out.coefficients = deinterleave(x);
    out.function = out.basis.function(out.coefficients);

    const Vector res = natural * x - rhs;
    out.rms_residual = res.norm();
    for (Eigen::Index r = 0; r < res.size(); ++r) {
        out.max_residual = std::max(out.max_residual, std::abs(res(r)) / fit.weight[static_cast<size_t>(r)]);
    }
    const Nodes held = make_nodes(domain, f, per_circle, 0.5);
    out.held_out_residual = (system_matrix(out.basis, held) * x - system_rhs(held)).norm();
    return out;
}

}  // namespace hardy
