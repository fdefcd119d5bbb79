#include "hardy/holo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "hardy/error.hpp"

namespace hardy {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

cplx eval_taylor(const LaurentBlock& b, cplx z) {
    const cplx u = (z - b.center) / b.scale;
    cplx acc{};
    for (auto it = b.coeffs.rbegin(); it != b.coeffs.rend(); ++it) acc = acc * u + *it;
    return acc;
}

cplx eval_principal(const LaurentBlock& b, cplx z) {
    const cplx dz = z - b.center;
    if (std::abs(dz) <= 1e-300 * b.scale || std::abs(dz) == 0.0) {
        throw Error(ErrorKind::Pole, "evaluation at a pole of a principal block");
    }
    const cplx v = b.scale / dz;
    cplx acc{};
    for (auto it = b.coeffs.rbegin(); it != b.coeffs.rend(); ++it) acc = (acc + *it) * v;
    return acc;
}

cplx eval_node(const HoloNode& node, cplx z);

struct Evaluator {
    cplx z;
    cplx operator()(const LaurentLeaf& leaf) const {
        cplx acc = eval_taylor(leaf.taylor, z);
        for (const auto& p : leaf.principal) acc += eval_principal(p, z);
        return acc;
    }
    cplx operator()(const CombineNode& c) const {
        cplx acc{};
        for (size_t i = 0; i < c.terms.size(); ++i) acc += c.weights[i] * c.terms[i](z);
        return acc;
    }
    cplx operator()(const TransportNode& t) const {
        return t.inner(t.branch.map.apply(z)) * t.branch(z);
    }
};

cplx eval_node(const HoloNode& node, cplx z) { return std::visit(Evaluator{z}, node); }

std::vector<cplx> circle_nodes(const Circle& c, int count) {
    std::vector<cplx> pts(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) pts[static_cast<size_t>(i)] = c.point(kTwoPi * i / count);
    return pts;
}

bool same_block(const LaurentBlock& a, const LaurentBlock& b) {
    return a.center == b.center && a.scale == b.scale;
}

void add_into(std::vector<cplx>& dst, const std::vector<cplx>& src, double w) {
    if (dst.size() < src.size()) dst.resize(src.size());
    for (size_t i = 0; i < src.size(); ++i) dst[i] += w * src[i];
}

}  // namespace

HoloFunction::HoloFunction() : node_(std::make_shared<const HoloNode>(CombineNode{})) {}

HoloFunction::HoloFunction(HoloNode node) : node_(std::make_shared<const HoloNode>(std::move(node))) {}

HoloFunction HoloFunction::leaf(LaurentLeaf leaf) {
    for (const auto& b : leaf.principal) {
        if (!(b.scale > 0.0)) throw Error(ErrorKind::Validation, "block scale must be positive");
    }
    if (!(leaf.taylor.scale > 0.0)) throw Error(ErrorKind::Validation, "block scale must be positive");
    return HoloFunction(HoloNode(std::move(leaf)));
}

HoloFunction HoloFunction::principal(cplx center, std::vector<cplx> coeffs) {
    LaurentLeaf leaf;
    leaf.taylor.center = center;
    leaf.principal.push_back({center, 1.0, std::move(coeffs)});
    return HoloFunction::leaf(std::move(leaf));
}

HoloFunction HoloFunction::polynomial(cplx center, std::vector<cplx> coeffs) {
    LaurentLeaf leaf;
    leaf.taylor = {center, 1.0, std::move(coeffs)};
    return HoloFunction::leaf(std::move(leaf));
}

const HoloNode& HoloFunction::node() const { return *node_; }

bool HoloFunction::is_leaf() const { return std::holds_alternative<LaurentLeaf>(*node_); }

cplx HoloFunction::operator()(cplx z) const { return eval_node(*node_, z); }

cplx evaluate(const HoloFunction& f, const CircleDomain& domain, cplx z) {
    if (!domain.contains(z)) {
        throw Error(ErrorKind::OutsideDomain, "evaluation point outside the open domain");
    }
    return f(z);
}

std::vector<cplx> evaluate(const HoloFunction& f, std::span<const cplx> points) {
    std::vector<cplx> out(points.size());
    for (size_t i = 0; i < points.size(); ++i) out[i] = f(points[i]);
    return out;
}

CoefficientResult restrict_to_circle(const HoloFunction& f, const Circle& circle, int cutoff,
                                     int component, int sign, int samples) {
    const int p = samples > 0 ? samples : default_sample_count(cutoff);
    const std::vector<cplx> pts = circle_nodes(circle, p);
    const std::vector<cplx> vals = evaluate(f, pts);
    CoefficientResult r = to_coefficients(vals, cutoff, component, sign);
    check_aliasing(r);
    return r;
}

ComponentFunction restrict(const HoloFunction& f, const CircleDomain& domain, int j, int cutoff) {
    return restrict_to_circle(f, domain.circle(j), cutoff, j, domain.sign(j)).function;
}

BoundaryFunction restrict(const HoloFunction& f, const CircleDomain& domain, int cutoff) {
    std::vector<ComponentFunction> parts;
    for (int j = 0; j < domain.components(); ++j) parts.push_back(restrict(f, domain, j, cutoff));
    return BoundaryFunction(std::move(parts));
}

BoundaryFunction t_apply(const HoloFunction& f, const CircleDomain& domain, int cutoff) {
    return project(restrict(f, domain, cutoff), Side::In);
}

BoundaryFunction u_apply(const HoloFunction& f, const CircleDomain& domain, int cutoff) {
    return project(restrict(f, domain, cutoff), Side::Out);
}

cplx contour_integral_sq(const HoloFunction& f, const Contour& contour, int samples) {
    // z = a + r e^{it}, dz = i r e^{it} dt; the 1/(2 pi i) cancels the i.
    cplx acc{};
    for (int i = 0; i < samples; ++i) {
        const double t = kTwoPi * i / samples;
        const cplx v = f(contour.circle.point(t));
        acc += v * v * std::polar(contour.circle.radius, t);
    }
    return static_cast<double>(contour.orientation) * acc / static_cast<double>(samples);
}

HoloFunction transport(const HoloFunction& f, const MoebiusMap& m, int branch_sign) {
    return transport(f, SpinorBranch{m, branch_sign >= 0 ? 1 : -1});
}

HoloFunction transport(const HoloFunction& f, const SpinorBranch& branch) {
    return HoloFunction(HoloNode(TransportNode{branch, f}));
}

HoloFunction combine(std::span<const double> weights, std::span<const HoloFunction> terms) {
    if (weights.size() != terms.size()) {
        throw Error(ErrorKind::Validation, "combine: weights and terms differ in length");
    }
    std::vector<double> w;
    std::vector<HoloFunction> t;
    for (size_t i = 0; i < terms.size(); ++i) {
        if (weights[i] != 0.0) {
            w.push_back(weights[i]);
            t.push_back(terms[i]);
        }
    }
    if (t.size() == 1 && w[0] == 1.0) return t[0];

    // Merge the leaves that share a taylor center.
    std::optional<LaurentLeaf> merged;
    std::vector<double> rest_w;
    std::vector<HoloFunction> rest_t;
    for (size_t i = 0; i < t.size(); ++i) {
        const auto* leaf = std::get_if<LaurentLeaf>(&t[i].node());
        const bool compatible =
            leaf && (!merged || merged->taylor.coeffs.empty() || leaf->taylor.coeffs.empty() ||
                     same_block(merged->taylor, leaf->taylor));
        if (!compatible) {
            rest_w.push_back(w[i]);
            rest_t.push_back(t[i]);
            continue;
        }
        if (!merged) {
            merged = LaurentLeaf{};
            merged->taylor.center = leaf->taylor.center;
            merged->taylor.scale = leaf->taylor.scale;
        }
        if (merged->taylor.coeffs.empty() && !leaf->taylor.coeffs.empty()) {
            merged->taylor.center = leaf->taylor.center;
            merged->taylor.scale = leaf->taylor.scale;
        }
        add_into(merged->taylor.coeffs, leaf->taylor.coeffs, w[i]);
        for (const auto& b : leaf->principal) {
            auto it = std::find_if(merged->principal.begin(), merged->principal.end(),
                                   [&](const LaurentBlock& m) { return same_block(m, b); });
            if (it == merged->principal.end()) {
                merged->principal.push_back({b.center, b.scale, {}});
                it = std::prev(merged->principal.end());
            }
            add_into(it->coeffs, b.coeffs, w[i]);
        }
    }
    if (merged) {
        HoloFunction m = HoloFunction::leaf(std::move(*merged));
        if (rest_t.empty()) return m;
        rest_w.insert(rest_w.begin(), 1.0);
        rest_t.insert(rest_t.begin(), m);
    }
    return HoloFunction(HoloNode(CombineNode{std::move(rest_w), std::move(rest_t)}));
}

HoloFunction combine(std::initializer_list<double> weights,
                     std::initializer_list<HoloFunction> terms) {
    return combine(std::span<const double>(weights.begin(), weights.size()),
                   std::span<const HoloFunction>(terms.begin(), terms.size()));
}

LaurentBasis LaurentBasis::for_domain(const CircleDomain& domain, int cutoff) {
    LaurentBasis b;
    b.taylor_center = domain.outer().center;
    b.taylor_scale = domain.outer().radius;
    b.taylor_degree = cutoff;
    for (const Circle& h : domain.holes()) b.poles.push_back({h.center, h.radius, cutoff + 1});
    return b;
}

int LaurentBasis::size() const {
    int n = taylor_degree + 1;
    for (const auto& p : poles) n += p.degree;
    return n;
}

HoloFunction LaurentBasis::function(const CVector& coeffs) const {
    if (coeffs.size() != size()) throw Error(ErrorKind::Validation, "coefficient count mismatch");
    LaurentLeaf leaf;
    leaf.taylor = {taylor_center, taylor_scale, {}};
    Eigen::Index off = 0;
    for (int m = 0; m <= taylor_degree; ++m) leaf.taylor.coeffs.push_back(coeffs(off++));
    for (const auto& p : poles) {
        LaurentBlock b{p.center, p.scale, {}};
        for (int k = 1; k <= p.degree; ++k) b.coeffs.push_back(coeffs(off++));
        leaf.principal.push_back(std::move(b));
    }
    return HoloFunction::leaf(std::move(leaf));
}

CMatrix LaurentBasis::evaluation_matrix(std::span<const cplx> points) const {
    CMatrix e(static_cast<Eigen::Index>(points.size()), size());
    for (size_t i = 0; i < points.size(); ++i) {
        const auto row = static_cast<Eigen::Index>(i);
        const cplx z = points[i];
        Eigen::Index col = 0;
        const cplx u = (z - taylor_center) / taylor_scale;
        cplx pw{1.0, 0.0};
        for (int m = 0; m <= taylor_degree; ++m) {
            e(row, col++) = pw;
            pw *= u;
        }
        for (const auto& p : poles) {
            const cplx dz = z - p.center;
            if (std::abs(dz) == 0.0) throw Error(ErrorKind::Pole, "evaluation at a basis pole");
            const cplx v = p.scale / dz;
            cplx q = v;
            for (int k = 1; k <= p.degree; ++k) {
                e(row, col++) = q;
                q *= v;
            }
        }
    }
    return e;
}

CVector LaurentBasis::from_boundary(const BoundaryFunction& data) const {
    if (data.components() != static_cast<int>(poles.size()) + 1) {
        throw Error(ErrorKind::Validation, "boundary data does not match the Laurent layout");
    }
    CVector c(size());
    Eigen::Index off = 0;
    for (int m = 0; m <= taylor_degree; ++m) c(off++) = data[0].mode(m);
    for (size_t j = 0; j < poles.size(); ++j) {
        for (int k = 1; k <= poles[j].degree; ++k) c(off++) = data[static_cast<int>(j) + 1].mode(-k);
    }
    return c;
}

HoloFunction flatten(const HoloFunction& f, const CircleDomain& domain, int cutoff) {
    const LaurentBasis basis = LaurentBasis::for_domain(domain, cutoff);
    return basis.function(basis.from_boundary(restrict(f, domain, cutoff)));
}

}  // namespace hardy
