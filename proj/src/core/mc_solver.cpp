#include "hardy/mc_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hardy/disk_solver.hpp"
#include "hardy/error.hpp"

namespace hardy {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<cplx> circle_nodes(const Circle& c, int count) {
    std::vector<cplx> pts(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) pts[static_cast<size_t>(i)] = c.point(kTwoPi * i / count);
    return pts;
}

Eigen::Index spec_row(int k, Eigen::Index p) { return ((k % p) + p) % p; }

Vector interleave_column(const CMatrix& m, Eigen::Index col) { return interleave(m.col(col)); }

Matrix interleave_columns(const CMatrix& m) {
    Matrix r(2 * m.rows(), m.cols());
    for (Eigen::Index c = 0; c < m.cols(); ++c) r.col(c) = interleave_column(m, c);
    return r;
}

CMatrix deinterleave_columns(const Matrix& m) {
    CMatrix r(m.rows() / 2, m.cols());
    for (Eigen::Index c = 0; c < m.cols(); ++c) r.col(c) = deinterleave(m.col(c));
    return r;
}

// Laurent coefficients in LaurentBasis::for_domain(domain, M) layout from
// sampled values on every circle (one P x cols block per circle). `aliasing`
// receives the worst relative mass outside the modes [-M-1, M].
CMatrix laurent_from_samples(const CircleDomain& domain, const std::vector<CMatrix>& values,
                             int cutoff, double* aliasing) {
    const Eigen::Index cols = values.front().cols();
    const int blocks = domain.components();
    CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(blocks) * (cutoff + 1), cols);
    double worst = 0.0;
    for (int i = 0; i < blocks; ++i) {
        const CMatrix spec = dft_forward_columns(values[static_cast<size_t>(i)]);
        const Eigen::Index p = spec.rows();
        if (i == 0) {
            for (int m = 0; m <= cutoff; ++m) out.row(m) = spec.row(m);
        } else {
            const Eigen::Index off = static_cast<Eigen::Index>(i) * (cutoff + 1);
            for (int k = 1; k <= cutoff + 1; ++k) out.row(off + k - 1) = spec.row(p - k);
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            const double total = spec.col(c).squaredNorm();
            double kept = 0.0;
            for (int k = -cutoff - 1; k <= cutoff; ++k) kept += std::norm(spec(spec_row(k, p), c));
            if (total > 0.0) worst = std::max(worst, std::sqrt(std::max(0.0, total - kept) / total));
        }
    }
    if (aliasing) *aliasing = worst;
    return out;
}

// Boundary modes [-M-1, M] on every circle of the domain for the functions
// whose samples are given, stacked per circle.
CMatrix modes_from_samples(const std::vector<CMatrix>& values, int cutoff) {
    const Eigen::Index cols = values.front().cols();
    const Eigen::Index per = 2 * cutoff + 2;
    CMatrix out(per * static_cast<Eigen::Index>(values.size()), cols);
    for (size_t i = 0; i < values.size(); ++i) {
        const CMatrix spec = dft_forward_columns(values[i]);
        for (int k = -cutoff - 1; k <= cutoff; ++k) {
            out.row(static_cast<Eigen::Index>(i) * per + k + cutoff + 1) = spec.row(spec_row(k, spec.rows()));
        }
    }
    return out;
}

// Interleaved boundary data of w^k (Re column) and i w^k (Im column),
// k = -1..-N, on every circle of `domain`.
Matrix pole_data(const CircleDomain& domain, int modes, int cutoff) {
    const int p = default_sample_count(cutoff);
    std::vector<CMatrix> values;
    for (int i = 0; i < domain.components(); ++i) {
        const auto pts = circle_nodes(domain.circle(i), p);
        CMatrix v(p, 2 * modes);
        for (int r = 0; r < p; ++r) {
            const cplx w = pts[static_cast<size_t>(r)];
            const cplx inv = 1.0 / w;
            cplx pw = inv;
            for (int n = 1; n <= modes; ++n) {
                v(r, 2 * (n - 1)) = pw;
                v(r, 2 * (n - 1) + 1) = cplx(0.0, 1.0) * pw;
                pw *= inv;
            }
        }
        values.push_back(std::move(v));
    }
    return interleave_columns(modes_from_samples(values, cutoff));
}

Matrix block_projection(const CircleDomain& domain, int cutoff, Side side) {
    const Eigen::Index blk = 2 * (2 * cutoff + 2);
    Matrix p = Matrix::Zero(blk * domain.components(), blk * domain.components());
    for (int j = 0; j < domain.components(); ++j) {
        p.block(j * blk, j * blk, blk, blk) = projection_matrix(cutoff, domain.sign(j), side);
    }
    return p;
}

double largest_singular_value(const Matrix& a) {
    if (a.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(a);
    return svd.singularValues()(0);
}

}  // namespace

int BuildStats::total_builds() const {
    int s = 0;
    for (int b : builds_per_level) s += b;
    return s;
}

SolverOperator::SolverOperator(CircleDomain domain, SolverConfig config)
    : domain_(std::move(domain)), config_(config) {
    if (config_.modes < 1) throw Error(ErrorKind::Validation, "mode count N must be positive");
    cutoff_ = config_.resolved_cutoff();
    if (cutoff_ < 2 * config_.modes) {
        throw Error(ErrorKind::Validation, "restriction cutoff M must be at least 2N");
    }
    if (!(config_.tol_in > 0.0)) throw Error(ErrorKind::Validation, "tol_in must be positive");
    basis_ = LaurentBasis::for_domain(domain_, cutoff_);
}

SolverPtr SolverOperator::build(const CircleDomain& domain, const SolverConfig& config) {
    SolverCache cache;
    SolverPtr top = build(domain, config, cache, 0);
    auto copy = std::make_shared<SolverOperator>(*top);
    copy->stats_ = cache.stats;
    return copy;
}

SolverPtr SolverOperator::build(const CircleDomain& domain, const SolverConfig& config,
                                SolverCache& cache, int level) {
    const std::string key = domain.fingerprint() + '|' + std::to_string(config.modes) + '|' +
                            std::to_string(config.resolved_cutoff());
    {
        std::lock_guard lock(cache.mutex);
        auto it = cache.entries.find(key);
        if (it != cache.entries.end()) {
            ++cache.stats.cache_hits;
            return it->second;
        }
    }
    std::shared_ptr<SolverOperator> op(new SolverOperator(domain, config));
    if (op->is_disk()) {
        op->full_ = disk_solver_matrix(op->cutoff_);
    } else {
        for (int j = 0; j < domain.components(); ++j) {
            op->blocks_.push_back(op->build_component(j, cache, level));
        }
        const Eigen::Index blk = 2 * (2 * op->cutoff_ + 2);
        op->full_.resize(2 * op->basis_.size(), blk * domain.components());
        for (int j = 0; j < domain.components(); ++j) {
            op->full_.middleCols(j * blk, blk) = op->blocks_[static_cast<size_t>(j)].solve;
        }
    }
    std::lock_guard lock(cache.mutex);
    if (level > 0) {
        if (static_cast<int>(cache.stats.builds_per_level.size()) < level) {
            cache.stats.builds_per_level.resize(static_cast<size_t>(level), 0);
        }
        ++cache.stats.builds_per_level[static_cast<size_t>(level - 1)];
    }
    auto [it, inserted] = cache.entries.emplace(key, op);
    return it->second;
}

ComponentBlock SolverOperator::build_component(int j, SolverCache& cache, int level) const {
    ComponentBlock b{.normalization = normalize_component(domain_, j)};
    const int n_modes = config_.modes;
    const int m = cutoff_;
    b.branch = SpinorBranch{b.normalization.map, 1};
    b.filled = build(b.normalization.filled, config_, cache, level + 1);
    const SolverOperator& filled = *b.filled;

    b.correction = filled.matrix() * pole_data(filled.domain(), n_modes, m);
    const CMatrix corr = deinterleave_columns(b.correction);

    // Q = J F_+ R_S Phi; the pole part has no nonnegative modes on S.
    const int p = default_sample_count(m);
    const auto unit = circle_nodes(Circle({0.0, 0.0}, 1.0), p);
    const CMatrix on_unit = dft_forward_columns(-(filled.basis().evaluation_matrix(unit) * corr));
    Matrix q(2 * n_modes, 2 * n_modes);
    for (int e = 0; e < 2 * n_modes; ++e) {
        for (int n = 1; n <= n_modes; ++n) {
            const cplx f = on_unit(n - 1, e);
            q(2 * (n - 1), e) = f.real();
            q(2 * (n - 1) + 1, e) = -f.imag();
        }
    }
    b.O = Matrix::Identity(2 * n_modes, 2 * n_modes) + q;

    ComponentDiagnostics& d = b.diagnostics;
    d.component = j;
    d.min_sym_eig_q = min_symmetric_eigenvalue(q);
    d.min_eig_oot = min_symmetric_eigenvalue(b.O * b.O.transpose());
    const double inv_cond = inverse_condition(b.O);
    d.condition = inv_cond > 0.0 ? 1.0 / inv_cond : std::numeric_limits<double>::infinity();
    if (d.condition > config_.max_condition) {
        throw Error(ErrorKind::IllConditioned,
                    "operator O on component " + std::to_string(j) + " has condition " +
                        std::to_string(d.condition) + " (limit " +
                        std::to_string(config_.max_condition) + ")");
    }

    // Data on component j -> negative modes of t / s on the unit circle.
    const MoebiusMap inv = b.normalization.map.inverse();
    const Circle& circ = domain_.circle(j);
    const int p_data = next_power_of_two(8 * (m + 1));
    CMatrix samples(p_data, 2 * m + 2);
    for (int r = 0; r < p_data; ++r) {
        const cplx z = inv.apply(std::polar(1.0, kTwoPi * r / p_data));
        const double theta = circ.angle_of(z);
        const cplx inv_s = 1.0 / b.branch(z);
        for (int k = -m - 1; k <= m; ++k) samples(r, k + m + 1) = std::polar(1.0, k * theta) * inv_s;
    }
    const CMatrix spec = dft_forward_columns(samples);
    CMatrix kmat(n_modes, 2 * m + 2);
    for (int n = 1; n <= n_modes; ++n) kmat.row(n - 1) = spec.row(p_data - n);
    b.rhs = 2.0 * realify(kmat) * projection_matrix(m, domain_.sign(j), Side::In);

    // Transport Phi back: z -> s(z) Phi(M(z)) sampled on every circle.
    std::vector<CMatrix> values(static_cast<size_t>(domain_.components()));
    parallel_for(domain_.components(), config_.threads, [&](int i) {
        const auto zs = circle_nodes(domain_.circle(i), p);
        std::vector<cplx> ws(zs.size());
        for (size_t r = 0; r < zs.size(); ++r) ws[r] = b.normalization.map.apply(zs[r]);
        CMatrix v = -(filled.basis().evaluation_matrix(ws) * corr);
        for (int r = 0; r < p; ++r) {
            const cplx inv_w = 1.0 / ws[static_cast<size_t>(r)];
            cplx pw = inv_w;
            for (int n = 1; n <= n_modes; ++n) {
                v(r, 2 * (n - 1)) += pw;
                v(r, 2 * (n - 1) + 1) += cplx(0.0, 1.0) * pw;
                pw *= inv_w;
            }
            v.row(r) *= b.branch(zs[static_cast<size_t>(r)]);
        }
        values[static_cast<size_t>(i)] = std::move(v);
    });
    b.back = interleave_columns(laurent_from_samples(domain_, values, m, &d.aliasing));

    Matrix x;
    if (config_.paper_inverse) {
        const Matrix oot = b.O * b.O.transpose();
        x = b.O.transpose() * oot.llt().solve(b.rhs);
    } else {
        x = b.O.partialPivLu().solve(b.rhs);
    }
    b.solve = b.back * x;
    return b;
}

const ComponentBlock& SolverOperator::block(int j) const {
    (void)domain_.circle(j);
    if (is_disk()) throw Error(ErrorKind::InvalidComponent, "a disk has no distinguished components");
    return blocks_[static_cast<size_t>(j)];
}

int SolverOperator::depth() const {
    int d = 0;
    for (const auto& b : blocks_) d = std::max(d, 1 + b.filled->depth());
    return d;
}

namespace {

ComponentFunction checked_component_data(const CircleDomain& domain, int j, const ComponentFunction& t,
                                         int cutoff, double tol) {
    (void)domain.circle(j);
    if (t.sign() != domain.sign(j)) {
        throw Error(ErrorKind::Validation, "component data carries the wrong boundary sign");
    }
    const ComponentFunction u = t.with_cutoff(cutoff);
    const double res = membership_residual(u, Side::In);
    if (res > tol * std::max(1.0, u.norm())) {
        throw Error(ErrorKind::NotInLIn,
                    "component data not in L2_in (residual " + std::to_string(res) + ")");
    }
    return ComponentFunction(j, u.sign(), cutoff, u.coeffs());
}

}  // namespace

HoloFunction SolverOperator::solve_component(int j, const ComponentFunction& t) const {
    const ComponentFunction u = checked_component_data(domain_, j, t, cutoff_, config_.tol_in);
    if (is_disk()) return solve_disk(domain_.outer(), u, {config_.tol_in, false});
    const Vector coeffs = block(j).solve * u.to_real();
    return basis_.function(deinterleave(coeffs));
}

Vector SolverOperator::phi_coefficients(int j, const ComponentFunction& t) const {
    const ComponentFunction u = checked_component_data(domain_, j, t, cutoff_, config_.tol_in);
    const ComponentBlock& b = block(j);
    const Vector rhs = b.rhs * u.to_real();
    if (config_.paper_inverse) {
        const Matrix oot = b.O * b.O.transpose();
        return b.O.transpose() * oot.llt().solve(rhs);
    }
    return b.O.partialPivLu().solve(rhs);
}

HoloFunction SolverOperator::solve_component_tree(int j, const ComponentFunction& t) const {
    if (is_disk()) return solve_component(j, t);
    const Vector c = phi_coefficients(j, t);
    const ComponentBlock& b = block(j);
    const auto basis = phi_basis_all(*b.filled, config_.modes, cutoff_);
    return transport(apply_phi(basis, c), b.branch);
}

CVector SolverOperator::solve_coefficients(const BoundaryFunction& f) const {
    if (f.components() != domain_.components()) {
        throw Error(ErrorKind::Validation, "boundary data has " + std::to_string(f.components()) +
                                               " components, domain has " +
                                               std::to_string(domain_.components()));
    }
    for (int j = 0; j < f.components(); ++j) {
        if (f[j].sign() != domain_.sign(j)) {
            throw Error(ErrorKind::Validation, "boundary data carries the wrong component signs");
        }
    }
    return deinterleave(full_ * f.with_cutoff(cutoff_).to_real());
}

SolveResult SolverOperator::solve(const BoundaryFunction& f) const {
    SolveResult r;
    r.coefficients = solve_coefficients(f);
    r.function = basis_.function(r.coefficients);
    const BoundaryFunction data = f.with_cutoff(cutoff_);
    const BoundaryFunction trace = restrict(r.function, domain_, cutoff_);
    r.report.in_residual = project(trace - data, Side::In).norm();
    r.report.data_norm = data.norm();
    r.report.out_part = project(data, Side::Out).norm();
    return r;
}

Matrix SolverOperator::restriction_matrix() const {
    const int p = default_sample_count(cutoff_);
    std::vector<CMatrix> values;
    for (int i = 0; i < domain_.components(); ++i) {
        values.push_back(basis_.evaluation_matrix(circle_nodes(domain_.circle(i), p)));
    }
    return realify(modes_from_samples(values, cutoff_));
}

PhiBasisElement phi_basis(const SolverOperator& filled, int k, PhiKind kind, int cutoff) {
    if (k >= 0) throw Error(ErrorKind::Validation, "phi basis index must be negative");
    const int n = -k;
    const Matrix data = pole_data(filled.domain(), n, cutoff);
    const int col = 2 * (n - 1) + (kind == PhiKind::Im ? 1 : 0);
    const BoundaryFunction f = BoundaryFunction::from_real(filled.domain(), cutoff, data.col(col));
    const HoloFunction corr = filled.function(filled.solve_coefficients(f));
    std::vector<cplx> pole(static_cast<size_t>(n));
    pole.back() = kind == PhiKind::Re ? cplx(1.0, 0.0) : cplx(0.0, 1.0);
    return {k, kind, combine({1.0, -1.0}, {HoloFunction::principal({0.0, 0.0}, pole), corr})};
}

std::vector<PhiBasisElement> phi_basis_all(const SolverOperator& filled, int modes, int cutoff) {
    std::vector<PhiBasisElement> out;
    for (int n = 1; n <= modes; ++n) {
        out.push_back(phi_basis(filled, -n, PhiKind::Re, cutoff));
        out.push_back(phi_basis(filled, -n, PhiKind::Im, cutoff));
    }
    return out;
}

HoloFunction apply_phi(const std::vector<PhiBasisElement>& basis, const ComponentFunction& c) {
    if (f_part(c, Half::Plus).norm() != 0.0) {
        throw Error(ErrorKind::Validation, "Phi takes sequences supported on negative modes");
    }
    std::vector<double> w;
    std::vector<HoloFunction> t;
    for (const auto& e : basis) {
        const cplx v = c.mode(e.k);
        w.push_back(e.kind == PhiKind::Re ? v.real() : v.imag());
        t.push_back(e.value);
    }
    return combine(w, t);
}

HoloFunction apply_phi(const std::vector<PhiBasisElement>& basis, const Vector& c) {
    if (c.size() != static_cast<Eigen::Index>(basis.size())) {
        throw Error(ErrorKind::Validation, "coefficient vector does not match the phi basis");
    }
    std::vector<double> w(c.data(), c.data() + c.size());
    std::vector<HoloFunction> t;
    for (const auto& e : basis) t.push_back(e.value);
    return combine(w, t);
}

Matrix assemble_O(const std::vector<PhiBasisElement>& basis, int cutoff) {
    const auto dim = static_cast<Eigen::Index>(basis.size());
    Matrix o = Matrix::Identity(dim, dim);
    const Circle unit({0.0, 0.0}, 1.0);
    for (Eigen::Index e = 0; e < dim; ++e) {
        const CoefficientResult r = restrict_to_circle(basis[static_cast<size_t>(e)].value, unit, cutoff);
        for (Eigen::Index n = 1; 2 * n <= dim; ++n) {
            const cplx f = r.function.mode(static_cast<int>(n - 1));
            o(2 * (n - 1), e) += f.real();
            o(2 * (n - 1) + 1, e) -= f.imag();
        }
    }
    return o;
}

Matrix times_i_matrix(Eigen::Index size) {
    Matrix m = Matrix::Zero(size, size);
    for (Eigen::Index i = 0; i + 1 < size; i += 2) {
        m(i, i + 1) = -1.0;
        m(i + 1, i) = 1.0;
    }
    return m;
}

WTransform w_transform(const SolverOperator& solver, int test_modes) {
    const CircleDomain& domain = solver.domain();
    const int m = solver.cutoff();
    const int k_max = test_modes > 0 ? test_modes : std::max(1, solver.modes() / 8);
    if (k_max > m) throw Error(ErrorKind::Validation, "test modes exceed the restriction cutoff");
    const int n = domain.components();
    const Eigen::Index blk = 2 * (2 * m + 2);
    const Eigen::Index dim = blk * n;

    WTransform out;
    out.test_modes = k_max;
    out.in_basis = Matrix::Zero(dim, 2 * k_max * n);
    out.out_basis = Matrix::Zero(dim, 2 * k_max * n);
    Eigen::Index col = 0;
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < k_max; ++k) {
            for (const cplx unit : {cplx(1.0, 0.0), cplx(0.0, 1.0)}) {
                ComponentFunction e(j, domain.sign(j), m);
                e.mode_ref(k) = unit;
                out.in_basis.block(j * blk, col, blk, 1) = std::sqrt(2.0) * project(e, Side::In).to_real();
                out.out_basis.block(j * blk, col, blk, 1) = std::sqrt(2.0) * project(e, Side::Out).to_real();
                ++col;
            }
        }
    }

    const Matrix restrict_m = solver.restriction_matrix();
    const Matrix p_in = block_projection(domain, m, Side::In);
    const Matrix p_out = block_projection(domain, m, Side::Out);
    const Matrix w_full = p_out * restrict_m * solver.matrix();
    const Matrix j_m = times_i_matrix(dim);

    const Matrix jw_in = j_m * (w_full * out.in_basis);
    const Matrix squared = j_m * (w_full * jw_in) + out.in_basis;
    out.jw_squared_residual = largest_singular_value(squared);

    const Matrix a = -(j_m * (w_full * (j_m * out.out_basis)));
    const Matrix u_op = p_out * restrict_m;
    const Matrix coeffs = u_op.colPivHouseholderQr().solve(out.out_basis);
    const Matrix b = p_in * restrict_m * coeffs;
    out.tu_residual = largest_singular_value(a - b);

    out.w = out.out_basis.transpose() * w_full * out.in_basis;
    out.minus_jwj = out.in_basis.transpose() * a;
    out.t_u_inverse = out.in_basis.transpose() * b;
    Eigen::JacobiSVD<Matrix> svd(out.w);
    svd.setThreshold(1e-8);
    out.rank = static_cast<int>(svd.rank());
    return out;
}

}  // namespace hardy
