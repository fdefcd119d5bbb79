#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hardy/hardy.h"

namespace {

// Exit codes: 0 success, 1 validation error, 2 numerical failure, 3 internal.
struct Failure {
    int code;
    std::string kind;
    std::string message;
};

std::string escape(const std::string& s) {
    std::string out;
    for (const char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

int report_failure(const Failure& f) {
    std::cerr << "{\"error\": \"" << escape(f.kind) << "\", \"message\": \"" << escape(f.message)
              << "\"}\n";
    return f.code;
}

void check(hardy_status s) {
    if (s != HARDY_OK) throw Failure{static_cast<int>(s), hardy_last_error_kind(), hardy_last_error()};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure{1, "Validation", "cannot read " + path};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Failure{1, "Validation", "cannot write " + path};
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
}

// Owns a string returned by the library.
class Text {
public:
    Text() = default;
    Text(const Text&) = delete;
    Text& operator=(const Text&) = delete;
    ~Text() { hardy_string_free(p_); }
    char** out() { return &p_; }
    std::string str() const { return p_ ? p_ : ""; }

private:
    char* p_ = nullptr;
};

struct Domain {
    hardy_domain* h = nullptr;
    explicit Domain(const std::string& path) { check(hardy_domain_from_json(read_file(path).c_str(), &h)); }
    ~Domain() { hardy_domain_free(h); }
};

struct Solver {
    hardy_solver* h = nullptr;
    Solver(const Domain& d, int modes) { check(hardy_solver_build(d.h, modes, &h)); }
    ~Solver() { hardy_solver_free(h); }
};

struct Options {
    bool quiet = false;
    bool json = false;
    std::string domain, data, grid, out;
    int modes = 32;
    int component = 0;
    int test_modes = 0;
    std::uint64_t seed = 7;
    int verify_modes = 0;
    double annulus = 0.0;
    std::string structure = "even";
    std::vector<double> radii;
    int terms = 40;
};

void emit(const Options& o, const std::string& text) {
    if (!o.out.empty()) write_output(o.out, text);
    if (!o.quiet && (o.out.empty() || o.json)) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
    }
}

int run_solve(const Options& o) {
    const Domain d(o.domain);
    const Solver s(d, o.modes);
    Text result;
    check(hardy_solve_json(s.h, read_file(o.data).c_str(), result.out(), nullptr));
    if (!o.out.empty()) write_output(o.out, result.str());
    if (!o.quiet) {
        if (o.json || o.out.empty()) {
            std::cout << result.str() << '\n';
        } else {
            std::cout << "solution written to " << o.out << '\n';
        }
    }
    return 0;
}

int run_metric(const Options& o) {
    const Domain d(o.domain);
    const Solver s(d, o.modes);
    const bool csv = o.out.empty() ? !o.json : o.out.size() >= 4 && o.out.substr(o.out.size() - 4) == ".csv";
    Text result;
    check(hardy_metric_grid_json(s.h, read_file(o.grid).c_str(), csv ? 1 : 0, result.out()));
    emit(o, result.str());
    return 0;
}

int run_operators(const Options& o) {
    const Domain d(o.domain);
    const Solver s(d, o.modes);
    Text result;
    check(hardy_operators_json(s.h, o.component, o.test_modes, result.out()));
    emit(o, result.str());
    return 0;
}

int run_verify(const Options& o) {
    const Domain d(o.domain);
    Text js, table;
    int pass = 0;
    check(hardy_verify_json(d.h, o.seed, o.verify_modes, js.out(), table.out(), &pass));
    if (!o.out.empty()) write_output(o.out, js.str());
    if (!o.quiet) std::cout << (o.json ? js.str() + "\n" : table.str());
    return pass ? 0 : 2;
}

int run_reference(const Options& o) {
    const int odd = o.structure == "odd" ? 1 : 0;
    std::ostringstream json, table;
    json << "{\"outer_radius\": " << o.annulus << ", \"structure\": \"" << o.structure
         << "\", \"terms\": " << o.terms << ", \"values\": [";
    char buf[128];
    std::snprintf(buf, sizeof buf, "%-22s %-24s %s\n", "radius", "ell", "tail_bound");
    table << buf;
    for (size_t i = 0; i < o.radii.size(); ++i) {
        double value = 0.0, tail = 0.0;
        check(hardy_annulus_reference(o.radii[i], o.annulus, odd, o.terms, &value, &tail));
        std::snprintf(buf, sizeof buf, "%s{\"radius\": %.17g, \"ell\": %.17g, \"tail_bound\": %.17g}",
                      i ? ", " : "", o.radii[i], value, tail);
        json << buf;
        std::snprintf(buf, sizeof buf, "%-22.17g %-24.17g %.3e\n", o.radii[i], value, tail);
        table << buf;
    }
    json << "]}";
    if (!o.out.empty()) write_output(o.out, json.str());
    if (!o.quiet) std::cout << (o.json ? json.str() + "\n" : table.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* env = std::getenv("HARDY_THREADS")) {
        const int t = std::atoi(env);
        if (t > 0) hardy_set_threads(t);
    }

    Options o;
    CLI::App app{"Boundary value solver for circle domains"};
    app.set_version_flag("--version", std::string(hardy_version()));
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--quiet", o.quiet, "Suppress the report on stdout");
    app.add_flag("--json", o.json, "Print reports as JSON");

    auto* solve = app.add_subcommand("solve", "Solve the boundary value problem for given data");
    solve->add_option("--domain", o.domain, "Domain JSON")->required();
    solve->add_option("--data", o.data, "Boundary data JSON")->required();
    solve->add_option("--modes", o.modes, "Negative modes per component")->check(CLI::PositiveNumber);
    solve->add_option("--out", o.out, "Solution JSON");

    auto* metric = app.add_subcommand("metric", "Evaluate the energy metric on a grid");
    metric->add_option("--domain", o.domain, "Domain JSON")->required();
    metric->add_option("--grid", o.grid, "Grid JSON")->required();
    metric->add_option("--modes", o.modes, "Negative modes per component")->check(CLI::PositiveNumber);
    metric->add_option("--out", o.out, "Output file (.csv for CSV, JSON otherwise)");

    auto* ops = app.add_subcommand("operators", "Export the twisted Hilbert transform and operator blocks");
    ops->add_option("--domain", o.domain, "Domain JSON")->required();
    ops->add_option("--component", o.component, "Boundary component index")->required();
    ops->add_option("--modes", o.modes, "Negative modes per component")->check(CLI::PositiveNumber);
    ops->add_option("--test-modes", o.test_modes, "Size of the test subspace (0 = default)")
        ->check(CLI::NonNegativeNumber);
    ops->add_option("--out", o.out, "Output JSON");

    auto* verify = app.add_subcommand("verify", "Run the invariant suite");
    verify->add_option("--domain", o.domain, "Domain JSON")->required();
    verify->add_option("--seed", o.seed, "Random seed");
    verify->add_option("--modes", o.verify_modes, "Negative modes per component (0 = default)")
        ->check(CLI::NonNegativeNumber);
    verify->add_option("--out", o.out, "Report JSON");

    auto* ref = app.add_subcommand("reference", "Closed-form annulus metric");
    ref->add_option("--annulus", o.annulus, "Outer radius R of the annulus 1 < |w| < R")->required();
    ref->add_option("--structure", o.structure, "Spin structure")
        ->check(CLI::IsMember({"even", "odd"}));
    ref->add_option("--radii", o.radii, "Comma-separated radii")->delimiter(',')->required();
    ref->add_option("--terms", o.terms, "Series truncation")->check(CLI::NonNegativeNumber);
    ref->add_option("--out", o.out, "Output JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return report_failure({1, "Validation", e.what()});
    }

    try {
        if (solve->parsed()) return run_solve(o);
        if (metric->parsed()) return run_metric(o);
        if (ops->parsed()) return run_operators(o);
        if (verify->parsed()) return run_verify(o);
        return run_reference(o);
    } catch (const Failure& f) {
        return report_failure(f);
    } catch (const std::exception& e) {
        return report_failure({3, "Internal", e.what()});
    }
}
