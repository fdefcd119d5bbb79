#include "hardy/hardy.h"

#include <atomic>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include "hardy/error.hpp"
#include "hardy/io.hpp"
#include "hardy/metric.hpp"
#include "hardy/verify.hpp"

struct hardy_domain {
    hardy::CircleDomain domain;
};

struct hardy_solver {
    hardy::SolverPtr solver;
};

struct hardy_function {
    hardy::HoloFunction function;
};

namespace {

using hardy::json;

constexpr const char* kVersion = "0.1.0";

std::atomic<int> g_threads{1};

struct LastError {
    std::string kind;
    std::string message;
};

thread_local LastError t_error;

hardy_status fail(hardy_status status, std::string kind, std::string message) {
    t_error = {std::move(kind), std::move(message)};
    return status;
}

// Runs fn, translating exceptions into status codes.
template <class Fn>
hardy_status guarded(Fn&& fn) {
    try {
        fn();
        t_error = {};
        return HARDY_OK;
    } catch (const hardy::Error& e) {
        return fail(hardy::is_numerical(e.kind()) ? HARDY_ERR_NUMERICAL : HARDY_ERR_VALIDATION,
                    hardy::error_kind_name(e.kind()), e.what());
    } catch (const json::exception& e) {
        return fail(HARDY_ERR_VALIDATION, "Validation", std::string("malformed JSON: ") + e.what());
    } catch (const std::bad_alloc&) {
        return fail(HARDY_ERR_INTERNAL, "Internal", "out of memory");
    } catch (const std::exception& e) {
        return fail(HARDY_ERR_INTERNAL, "Internal", e.what());
    } catch (...) {
        return fail(HARDY_ERR_INTERNAL, "Internal", "unknown exception");
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void need(const void* p, const char* what) {
    if (!p) throw hardy::Error(hardy::ErrorKind::Validation, std::string(what) + " is null");
}

json parse(const char* text, const char* what) {
    need(text, what);
    return json::parse(text);
}

}  // namespace

extern "C" {

const char* hardy_version(void) { return kVersion; }

const char* hardy_last_error(void) { return t_error.message.c_str(); }

const char* hardy_last_error_kind(void) { return t_error.kind.c_str(); }

hardy_status hardy_last_error_json(char** out) {
    if (!out) return HARDY_ERR_VALIDATION;
    const LastError saved = t_error;
    const json j = {{"error", saved.kind}, {"message", saved.message}};
    const hardy_status s = guarded([&] { *out = dup_string(j.dump()); });
    t_error = saved;
    return s;
}

void hardy_string_free(char* s) { std::free(s); }

void hardy_set_threads(int threads) { g_threads = threads < 1 ? 1 : threads; }

int hardy_threads(void) { return g_threads; }

hardy_status hardy_domain_from_json(const char* text, hardy_domain** out) {
    return guarded([&] {
        need(out, "output handle");
        *out = new hardy_domain{hardy::domain_from_json(parse(text, "domain JSON"))};
    });
}

hardy_status hardy_domain_to_json(const hardy_domain* domain, char** out) {
    return guarded([&] {
        need(domain, "domain");
        need(out, "output string");
        *out = dup_string(hardy::domain_to_json(domain->domain).dump());
    });
}

int hardy_domain_components(const hardy_domain* domain) {
    return domain ? domain->domain.components() : 0;
}

void hardy_domain_free(hardy_domain* domain) { delete domain; }

hardy_status hardy_solver_build(const hardy_domain* domain, int modes, hardy_solver** out) {
    return guarded([&] {
        need(domain, "domain");
        need(out, "output handle");
        hardy::SolverConfig config;
        config.modes = modes;
        config.threads = g_threads;
        *out = new hardy_solver{hardy::SolverOperator::build(domain->domain, config)};
    });
}

hardy_status hardy_solver_build_json(const hardy_domain* domain, const char* config, hardy_solver** out) {
    return guarded([&] {
        need(domain, "domain");
        need(out, "output handle");
        hardy::SolverConfig base;
        base.threads = g_threads;
        const hardy::SolverConfig c = hardy::config_from_json(parse(config, "config JSON"), base);
        *out = new hardy_solver{hardy::SolverOperator::build(domain->domain, c)};
    });
}

hardy_status hardy_solver_diagnostics_json(const hardy_solver* solver, char** out) {
    return guarded([&] {
        need(solver, "solver");
        need(out, "output string");
        *out = dup_string(hardy::diagnostics_to_json(*solver->solver).dump());
    });
}

int hardy_solver_modes(const hardy_solver* solver) { return solver ? solver->solver->modes() : 0; }

int hardy_solver_cutoff(const hardy_solver* solver) { return solver ? solver->solver->cutoff() : 0; }

void hardy_solver_free(hardy_solver* solver) { delete solver; }

hardy_status hardy_solve_json(const hardy_solver* solver, const char* data, char** out_json,
                              hardy_function** out_function) {
    return guarded([&] {
        need(solver, "solver");
        const hardy::SolverOperator& s = *solver->solver;
        const hardy::BoundaryFunction f =
            hardy::data_from_json(parse(data, "data JSON"), s.domain(), s.cutoff());
        hardy::SolveResult r = s.solve(f);
        std::unique_ptr<hardy_function> fn;
        if (out_function) fn.reset(new hardy_function{r.function});
        if (out_json) {
            json coeffs = json::array();
            for (Eigen::Index i = 0; i < r.coefficients.size(); ++i) {
                coeffs.push_back(hardy::complex_to_json(r.coefficients(i)));
            }
            const json j = {{"modes", s.modes()},
                            {"cutoff", s.cutoff()},
                            {"function", hardy::holo_to_json(r.function)},
                            {"coefficients", coeffs},
                            {"report", hardy::report_to_json(r.report)}};
            *out_json = dup_string(j.dump(2));
        }
        if (out_function) *out_function = fn.release();
    });
}

hardy_status hardy_function_from_json(const char* text, hardy_function** out) {
    return guarded([&] {
        need(out, "output handle");
        json j = parse(text, "function JSON");
        if (j.is_object() && j.contains("function")) j = j.at("function");
        *out = new hardy_function{hardy::holo_from_json(j)};
    });
}

hardy_status hardy_function_to_json(const hardy_function* fn, char** out) {
    return guarded([&] {
        need(fn, "function");
        need(out, "output string");
        *out = dup_string(hardy::holo_to_json(fn->function).dump());
    });
}

hardy_status hardy_function_eval(const hardy_function* fn, double re, double im, double* out_re,
                                 double* out_im) {
    return guarded([&] {
        need(fn, "function");
        need(out_re, "output");
        need(out_im, "output");
        const hardy::cplx v = fn->function(hardy::cplx(re, im));
        *out_re = v.real();
        *out_im = v.imag();
    });
}

void hardy_function_free(hardy_function* fn) { delete fn; }

hardy_status hardy_metric_ell(const hardy_solver* solver, double re, double im, double* ell) {
    return guarded([&] {
        need(solver, "solver");
        need(ell, "output");
        *ell = hardy::ising_ell(*solver->solver, hardy::cplx(re, im)).ell;
    });
}

hardy_status hardy_metric_grid_json(const hardy_solver* solver, const char* grid, int csv, char** out) {
    return guarded([&] {
        need(solver, "solver");
        need(out, "output string");
        const std::vector<hardy::cplx> points = hardy::grid_from_json(parse(grid, "grid JSON"));
        const auto samples = hardy::metric_grid(*solver->solver, points, g_threads);
        *out = dup_string(csv ? hardy::metric_to_csv(samples) : hardy::metric_to_json(samples).dump(2));
    });
}

hardy_status hardy_operators_json(const hardy_solver* solver, int component, int test_modes, char** out) {
    return guarded([&] {
        need(solver, "solver");
        need(out, "output string");
        const hardy::SolverOperator& s = *solver->solver;
        if (s.is_disk()) {
            throw hardy::Error(hardy::ErrorKind::Validation, "operators need a multiply connected domain");
        }
        const hardy::ComponentBlock& b = s.block(component);
        const hardy::WTransform w = hardy::w_transform(s, test_modes);
        const Eigen::Index width = 2 * w.test_modes;
        const hardy::Matrix q = b.O - hardy::Matrix::Identity(b.O.rows(), b.O.cols());
        const json j = {
            {"component", component},
            {"test_modes", w.test_modes},
            {"w", hardy::matrix_to_json(w.w)},
            {"w_component_columns", hardy::matrix_to_json(w.w.middleCols(component * width, width))},
            {"minus_jwj", hardy::matrix_to_json(w.minus_jwj)},
            {"t_u_inverse", hardy::matrix_to_json(w.t_u_inverse)},
            {"jw_squared_residual", w.jw_squared_residual},
            {"tu_residual", w.tu_residual},
            {"rank", w.rank},
            {"q", hardy::matrix_to_json(q)},
            {"diagnostics", hardy::diagnostics_to_json(s)}};
        *out = dup_string(j.dump(2));
    });
}

hardy_status hardy_verify_json(const hardy_domain* domain, uint64_t seed, int modes, char** out_json,
                               char** out_table, int* all_pass) {
    return guarded([&] {
        need(domain, "domain");
        hardy::VerifyOptions o;
        o.seed = seed;
        if (modes > 0) o.modes = modes;
        o.threads = g_threads;
        const hardy::VerifyReport r = hardy::run_verify(domain->domain, o);
        std::string js, table;
        if (out_json) js = hardy::verify_to_json(r).dump(2);
        if (out_table) table = hardy::verify_table(r);
        if (out_json) *out_json = dup_string(js);
        if (out_table) *out_table = dup_string(table);
        if (all_pass) *all_pass = r.all_pass() ? 1 : 0;
    });
}

hardy_status hardy_annulus_reference(double radius, double outer_radius, int odd, int terms, double* value,
                                     double* tail_bound) {
    return guarded([&] {
        need(value, "output");
        const hardy::AnnulusReference r = hardy::annulus_reference(
            hardy::cplx(radius, 0.0), outer_radius,
            odd ? hardy::SpinStructure::Odd : hardy::SpinStructure::Even, terms);
        *value = r.value;
        if (tail_bound) *tail_bound = r.tail_bound;
    });
}

}  // extern "C"
