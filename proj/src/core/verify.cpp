#include "hardy/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "hardy/disk_solver.hpp"
#include "hardy/oracle_solver.hpp"

namespace hardy {

namespace {

CheckResult upper(std::string name, double value, double bound) {
    return {std::move(name), value, bound, false, std::isfinite(value) && value <= bound};
}

CheckResult lower(std::string name, double value, double bound) {
    return {std::move(name), value, bound, true, std::isfinite(value) && value >= bound};
}

// Points inside the domain at half the margin from each boundary circle.
std::vector<cplx> interior_probe(const CircleDomain& domain) {
    std::vector<cplx> pts;
    const double off = 0.5 * domain.margin();
    for (int j = 0; j < domain.components(); ++j) {
        const Circle& c = domain.circle(j);
        const double r = c.radius - domain.sign(j) * off;
        for (int i = 0; i < 16; ++i) pts.push_back(c.center + std::polar(r, 2.0 * std::numbers::pi * i / 16));
    }
    return pts;
}

}  // namespace

BoundaryFunction random_smooth_data(const CircleDomain& domain, int cutoff, int band, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    BoundaryFunction f = BoundaryFunction::zero(domain, cutoff);
    for (int j = 0; j < domain.components(); ++j) {
        for (int k = -band; k <= band; ++k) {
            if (f[j].has_mode(k)) f[j].mode_ref(k) = cplx(g(rng), g(rng));
        }
    }
    return f;
}

ComponentFunction random_in_data(const CircleDomain& domain, int j, int cutoff, int band,
                                 std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    ComponentFunction f(j, domain.sign(j), cutoff);
    for (int k = -band; k <= band; ++k) {
        if (f.has_mode(k)) f.mode_ref(k) = cplx(g(rng), g(rng));
    }
    return project(f, Side::In);
}

HoloFunction phi_function(const SolverOperator& solver, int j, const Vector& c) {
    const ComponentBlock& b = solver.block(j);
    const int n = solver.modes();
    std::vector<cplx> pole(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) pole[static_cast<size_t>(i)] = cplx(c(2 * i), c(2 * i + 1));
    const HoloFunction corr = b.filled->function(deinterleave(b.correction * c));
    return combine({1.0, -1.0}, {HoloFunction::principal({0.0, 0.0}, pole), corr});
}

void for_each_block(const SolverOperator& solver, const std::function<void(const ComponentBlock&)>& fn) {
    for (const auto& b : solver.blocks()) {
        fn(b);
        for_each_block(*b.filled, fn);
    }
}

bool VerifyReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

VerifyReport run_verify(const CircleDomain& domain, const VerifyOptions& options) {
    VerifyReport report;
    std::mt19937_64 rng(options.seed);
    SolverConfig config;
    config.modes = options.modes;
    config.threads = options.threads;
    const SolverPtr solver = SolverOperator::build(domain, config);
    const int m = solver->cutoff();
    const int n = domain.components();

    // Disk base case on the unit disk.
    {
        const CircleDomain disk(Circle({0.0, 0.0}, 1.0), {});
        double worst = 0.0;
        for (int t = 0; t < options.trials; ++t) {
            const ComponentFunction f = random_in_data(disk, 0, m, m, rng);
            const ComponentFunction back = t_apply(solve_unit_disk(f), disk, m)[0];
            worst = std::max(worst, (back - f).norm() / f.norm());
        }
        report.checks.push_back(upper("disk_roundtrip", worst, 1e-12));
    }

    if (!solver->is_disk()) {
        double min_q = std::numeric_limits<double>::infinity();
        double min_oot = std::numeric_limits<double>::infinity();
        for_each_block(*solver, [&](const ComponentBlock& b) {
            min_q = std::min(min_q, b.diagnostics.min_sym_eig_q);
            min_oot = std::min(min_oot, b.diagnostics.min_eig_oot);
        });
        report.checks.push_back(lower("positivity_min_eig", min_q, -1e-10));
        report.checks.push_back(lower("spectrum_min_eig_oot", min_oot, 1.0 - 1e-6));

        // real_dot(c, Qc) against half the contour integral of Phi(c)^2.
        std::normal_distribution<double> g;
        double worst = 0.0, min_integral = std::numeric_limits<double>::infinity();
        for (int j = 0; j < n; ++j) {
            const ComponentBlock& b = solver->block(j);
            const Matrix q = b.O - Matrix::Identity(b.O.rows(), b.O.cols());
            for (int t = 0; t < options.trials; ++t) {
                Vector c(b.O.rows());
                for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = g(rng);
                const double dot = c.dot(q * c);
                const double integral =
                    contour_integral_sq(phi_function(*solver, j, c), {Circle({0.0, 0.0}, 1.0), 1},
                                        default_sample_count(m))
                        .real();
                worst = std::max(worst, std::abs(dot - 0.5 * integral));
                min_integral = std::min(min_integral, integral);
            }
        }
        report.checks.push_back(upper("positivity_identity", worst, 1e-8));
        report.checks.push_back(lower("positivity_integral", min_integral, -1e-8));

        double leak = 0.0, self = 0.0;
        for (int j = 0; j < n; ++j) {
            const ComponentFunction t = random_in_data(domain, j, m, options.band, rng);
            const BoundaryFunction tr = t_apply(solver->solve_component(j, t), domain, m);
            for (int k = 0; k < n; ++k) {
                if (k == j) {
                    self = std::max(self, (tr[k] - t).norm() / t.norm());
                } else {
                    leak = std::max(leak, tr[k].norm() / t.norm());
                }
            }
        }
        report.checks.push_back(upper("superposition_self", self, 1e-6));
        report.checks.push_back(upper("superposition_leakage", leak, 1e-6));
    }

    double round = 0.0, oracle = 0.0;
    for (int t = 0; t < options.trials; ++t) {
        const BoundaryFunction f = random_smooth_data(domain, m, options.band, rng);
        const SolveResult r = solver->solve(f);
        round = std::max(round, r.report.relative());
        OracleOptions o;
        o.taylor_degree = o.pole_degree = std::max(32, options.modes);
        const OracleResult ls = solve_ls(domain, f, o);
        const BoundaryFunction a = restrict(r.function, domain, m);
        const BoundaryFunction b = restrict(ls.function, domain, m);
        oracle = std::max(oracle, (a - b).norm() / a.norm());
    }
    report.checks.push_back(upper("roundtrip", round, 1e-6));
    report.checks.push_back(upper("oracle_agreement", oracle, 1e-6));

    {
        // Data in L2_out has no in-part, so the solution must vanish.
        const BoundaryFunction f = project(random_smooth_data(domain, m, options.band, rng), Side::Out);
        report.checks.push_back(upper("injectivity", solver->solve_coefficients(f).norm(), 1e-8));

        std::normal_distribution<double> g;
        std::vector<cplx> coeffs;
        for (int i = 0; i < 5; ++i) coeffs.push_back(cplx(g(rng), g(rng)));
        const HoloFunction poly = HoloFunction::polynomial(domain.outer().center, coeffs);
        const HoloFunction sol = solver->solve(restrict(poly, domain, m)).function;
        double err = 0.0, scale = 0.0;
        for (const cplx z : interior_probe(domain)) {
            err = std::max(err, std::abs(sol(z) - poly(z)));
            scale = std::max(scale, std::abs(poly(z)));
        }
        report.checks.push_back(upper("uniqueness", err / scale, 1e-8));
    }

    if (!solver->is_disk()) {
        const WTransform w = w_transform(*solver);
        report.checks.push_back(upper("w_j_w_identity", w.jw_squared_residual, 1e-6));
        report.checks.push_back(upper("t_u_inverse_identity", w.tu_residual, 1e-6));
        report.checks.push_back(lower("w_rank", w.rank, static_cast<double>(w.w.cols())));
    }
    return report;
}

std::string verify_table(const VerifyReport& report) {
    std::string out;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-24s %14s %14s  %s\n", "check", "value", "bound", "result");
    out += buf;
    for (const auto& c : report.checks) {
        std::snprintf(buf, sizeof buf, "%-24s %14.6e %2s%12.3e  %s\n", c.name.c_str(), c.value,
                      c.lower ? ">=" : "<=", c.bound, c.pass ? "PASS" : "FAIL");
        out += buf;
    }
    return out;
}

json verify_to_json(const VerifyReport& report) {
    json checks = json::array();
    for (const auto& c : report.checks) {
        checks.push_back({{"name", c.name},
                          {"value", c.value},
                          {"bound", c.bound},
                          {"relation", c.lower ? ">=" : "<="},
                          {"pass", c.pass}});
    }
    return {{"checks", checks}, {"all_pass", report.all_pass()}};
}

}  // namespace hardy
