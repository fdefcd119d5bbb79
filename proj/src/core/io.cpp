#include "hardy/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "hardy/error.hpp"

namespace hardy {

namespace {

const json& require(const json& j, const char* key, const std::string& what) {
    if (!j.is_object() || !j.contains(key)) {
        throw Error(ErrorKind::Validation, what + ": missing \"" + key + "\"");
    }
    return j.at(key);
}

double number(const json& j, const std::string& what) {
    if (!j.is_number()) throw Error(ErrorKind::Validation, what + ": expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw Error(ErrorKind::Validation, what + ": non-finite number");
    return v;
}

int integer(const json& j, const std::string& what) {
    if (!j.is_number_integer()) throw Error(ErrorKind::Validation, what + ": expected an integer");
    return j.get<int>();
}

Circle circle_from_json(const json& j, const std::string& what) {
    return {complex_from_json(require(j, "center", what), what + ".center"),
            number(require(j, "radius", what), what + ".radius")};
}

json circle_to_json(const Circle& c) {
    return {{"center", complex_to_json(c.center)}, {"radius", c.radius}};
}

json block_to_json(const LaurentBlock& b) {
    json coeffs = json::array();
    for (const cplx& c : b.coeffs) coeffs.push_back(complex_to_json(c));
    return {{"center", complex_to_json(b.center)}, {"scale", b.scale}, {"coeffs", coeffs}};
}

LaurentBlock block_from_json(const json& j) {
    LaurentBlock b;
    b.center = complex_from_json(require(j, "center", "block"), "block.center");
    b.scale = number(require(j, "scale", "block"), "block.scale");
    for (const auto& c : require(j, "coeffs", "block")) b.coeffs.push_back(complex_from_json(c, "block.coeffs"));
    return b;
}

json map_to_json(const MoebiusMap& m) {
    return {{"a", complex_to_json(m.a)},
            {"b", complex_to_json(m.b)},
            {"c", complex_to_json(m.c)},
            {"d", complex_to_json(m.d)}};
}

MoebiusMap map_from_json(const json& j) {
    return {complex_from_json(require(j, "a", "map"), "map.a"),
            complex_from_json(require(j, "b", "map"), "map.b"),
            complex_from_json(require(j, "c", "map"), "map.c"),
            complex_from_json(require(j, "d", "map"), "map.d")};
}

}  // namespace

cplx complex_from_json(const json& j, const std::string& what) {
    if (j.is_number()) return {number(j, what), 0.0};
    if (!j.is_array() || j.size() != 2) throw Error(ErrorKind::Validation, what + ": expected [re, im]");
    return {number(j[0], what), number(j[1], what)};
}

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

CircleDomain domain_from_json(const json& j) {
    if (!j.is_object()) throw Error(ErrorKind::Validation, "domain: expected an object");
    const Circle outer = circle_from_json(require(j, "outer", "domain"), "outer");
    std::vector<Circle> holes;
    if (j.contains("holes")) {
        const json& hs = j.at("holes");
        if (!hs.is_array()) throw Error(ErrorKind::Validation, "domain.holes: expected an array");
        for (size_t i = 0; i < hs.size(); ++i) {
            holes.push_back(circle_from_json(hs[i], "hole " + std::to_string(i + 1)));
        }
    }
    std::optional<double> margin;
    if (j.contains("margin")) margin = number(j.at("margin"), "domain.margin");
    return CircleDomain(outer, std::move(holes), margin);
}

json domain_to_json(const CircleDomain& domain) {
    json holes = json::array();
    for (const Circle& h : domain.holes()) holes.push_back(circle_to_json(h));
    return {{"outer", circle_to_json(domain.outer())}, {"holes", holes}, {"margin", domain.margin()}};
}

SolverConfig config_from_json(const json& j, SolverConfig base) {
    if (j.is_null()) return base;
    if (!j.is_object()) throw Error(ErrorKind::Validation, "config: expected an object");
    if (j.contains("modes")) base.modes = integer(j.at("modes"), "config.modes");
    if (j.contains("cutoff")) base.cutoff = integer(j.at("cutoff"), "config.cutoff");
    if (j.contains("tol_in")) base.tol_in = number(j.at("tol_in"), "config.tol_in");
    if (j.contains("max_condition")) base.max_condition = number(j.at("max_condition"), "config.max_condition");
    if (j.contains("threads")) base.threads = integer(j.at("threads"), "config.threads");
    if (j.contains("inversion")) {
        const std::string s = j.at("inversion").get<std::string>();
        if (s == "direct") base.paper_inverse = false;
        else if (s == "normal_equations") base.paper_inverse = true;
        else throw Error(ErrorKind::Validation, "config.inversion: expected direct or normal_equations");
    }
    return base;
}

json config_to_json(const SolverConfig& c) {
    return {{"modes", c.modes},
            {"cutoff", c.resolved_cutoff()},
            {"tol_in", c.tol_in},
            {"inversion", c.paper_inverse ? "normal_equations" : "direct"},
            {"max_condition", c.max_condition}};
}

BoundaryFunction data_from_json(const json& j, const CircleDomain& domain, int cutoff) {
    const json& comps = require(j, "components", "data");
    if (!comps.is_array() || static_cast<int>(comps.size()) != domain.components()) {
        throw Error(ErrorKind::Validation, "data: expected one entry per boundary component (" +
                                               std::to_string(domain.components()) + ")");
    }
    std::vector<ComponentFunction> parts;
    for (int c = 0; c < domain.components(); ++c) {
        const json& e = comps[static_cast<size_t>(c)];
        const std::string what = "data component " + std::to_string(c);
        ComponentFunction f(c, domain.sign(c), cutoff);
        if (e.is_object() && e.contains("modes")) {
            for (const auto& [key, value] : e.at("modes").items()) {
                int k = 0;
                try {
                    size_t used = 0;
                    k = std::stoi(key, &used);
                    if (used != key.size()) throw std::invalid_argument(key);
                } catch (const std::exception&) {
                    throw Error(ErrorKind::Validation, what + ": mode key \"" + key + "\" is not an integer");
                }
                if (!f.has_mode(k)) {
                    throw Error(ErrorKind::Validation, what + ": mode " + key + " beyond the cutoff " +
                                                           std::to_string(cutoff));
                }
                f.mode_ref(k) = complex_from_json(value, what);
            }
        } else if (e.is_object() && e.contains("samples")) {
            std::vector<cplx> samples;
            for (const auto& s : e.at("samples")) samples.push_back(complex_from_json(s, what));
            const int p = static_cast<int>(samples.size());
            if (!is_power_of_two(p) || p < 2) {
                throw Error(ErrorKind::Validation, what + ": sample count must be a power of two");
            }
            const int m = std::min(cutoff, p / 2 - 1);
            CoefficientResult r = to_coefficients(samples, m, c, domain.sign(c));
            check_aliasing(r);
            f = r.function.with_cutoff(cutoff);
        } else {
            throw Error(ErrorKind::Validation, what + ": expected \"modes\" or \"samples\"");
        }
        parts.push_back(std::move(f));
    }
    return BoundaryFunction(std::move(parts));
}

json data_to_json(const BoundaryFunction& f) {
    json comps = json::array();
    for (const auto& part : f.parts()) {
        json modes = json::object();
        for (int k = part.min_mode(); k <= part.max_mode(); ++k) {
            if (part.mode(k) != cplx{}) modes[std::to_string(k)] = complex_to_json(part.mode(k));
        }
        comps.push_back({{"modes", modes}});
    }
    return {{"components", comps}};
}

json holo_to_json(const HoloFunction& f) {
    const HoloNode& node = f.node();
    if (const auto* leaf = std::get_if<LaurentLeaf>(&node)) {
        json principal = json::array();
        for (const auto& b : leaf->principal) principal.push_back(block_to_json(b));
        return {{"type", "laurent"}, {"taylor", block_to_json(leaf->taylor)}, {"principal", principal}};
    }
    if (const auto* c = std::get_if<CombineNode>(&node)) {
        json terms = json::array();
        for (const auto& t : c->terms) terms.push_back(holo_to_json(t));
        return {{"type", "combine"}, {"weights", c->weights}, {"terms", terms}};
    }
    const auto& t = std::get<TransportNode>(node);
    return {{"type", "transport"},
            {"map", map_to_json(t.branch.map)},
            {"branch_sign", t.branch.sign},
            {"inner", holo_to_json(t.inner)}};
}

HoloFunction holo_from_json(const json& j) {
    const std::string type = require(j, "type", "function").get<std::string>();
    if (type == "laurent") {
        LaurentLeaf leaf;
        leaf.taylor = block_from_json(require(j, "taylor", "function"));
        if (j.contains("principal")) {
            for (const auto& b : j.at("principal")) leaf.principal.push_back(block_from_json(b));
        }
        return HoloFunction::leaf(std::move(leaf));
    }
    if (type == "combine") {
        CombineNode c;
        for (const auto& w : require(j, "weights", "function")) c.weights.push_back(number(w, "weight"));
        for (const auto& t : require(j, "terms", "function")) c.terms.push_back(holo_from_json(t));
        if (c.weights.size() != c.terms.size()) {
            throw Error(ErrorKind::Validation, "function: weights and terms differ in length");
        }
        return HoloFunction(HoloNode(std::move(c)));
    }
    if (type == "transport") {
        const int sign = integer(require(j, "branch_sign", "function"), "branch_sign");
        return transport(holo_from_json(require(j, "inner", "function")),
                         SpinorBranch{map_from_json(require(j, "map", "function")), sign >= 0 ? 1 : -1});
    }
    throw Error(ErrorKind::Validation, "function: unknown node type \"" + type + "\"");
}

std::vector<cplx> grid_from_json(const json& j) {
    const json& pts = j.is_object() ? require(j, "points", "grid") : j;
    if (!pts.is_array()) throw Error(ErrorKind::Validation, "grid: expected an array of [re, im]");
    std::vector<cplx> out;
    for (const auto& p : pts) out.push_back(complex_from_json(p, "grid point"));
    return out;
}

json metric_to_json(const std::vector<MetricSample>& samples) {
    json out = json::array();
    for (const auto& s : samples) {
        json e = {{"w", complex_to_json(s.w)}};
        if (s.valid) {
            e["ell"] = s.ell;
            e["im_residual"] = s.im_residual;
        } else {
            e["flag"] = s.flag;
        }
        out.push_back(e);
    }
    return out;
}

std::string metric_to_csv(const std::vector<MetricSample>& samples) {
    std::ostringstream os;
    os << "w_re,w_im,ell,im_residual\n";
    char buf[128];
    for (const auto& s : samples) {
        if (s.valid) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", s.w.real(), s.w.imag(), s.ell,
                          s.im_residual);
        } else {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,,\n", s.w.real(), s.w.imag());
        }
        os << buf;
    }
    return os.str();
}

json diagnostics_to_json(const SolverOperator& solver) {
    json comps = json::array();
    for (const auto& b : solver.blocks()) {
        const auto& d = b.diagnostics;
        comps.push_back({{"component", d.component},
                         {"min_sym_eig_q", d.min_sym_eig_q},
                         {"min_eig_oot", d.min_eig_oot},
                         {"condition", d.condition},
                         {"reexpansion_tail", d.aliasing},
                         {"filled", domain_to_json(b.filled->domain())}});
    }
    return {{"domain", domain_to_json(solver.domain())},
            {"config", config_to_json(solver.config())},
            {"depth", solver.depth()},
            {"builds_per_level", solver.stats().builds_per_level},
            {"cache_hits", solver.stats().cache_hits},
            {"components", comps}};
}

json report_to_json(const ResidualReport& r) {
    return {{"in_residual", r.in_residual},
            {"relative_in_residual", r.relative()},
            {"data_norm", r.data_norm},
            {"out_of_plane_norm", r.out_part}};
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace hardy
