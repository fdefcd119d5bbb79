#include "hardy/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "hardy/error.hpp"

namespace hardy {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string component_label(int j) {
    return j == 0 ? std::string("outer circle") : "hole " + std::to_string(j);
}

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

Circle::Circle(cplx c, double r) : center(c), radius(r) {
    if (!finite(c) || !std::isfinite(r) || !(r > 0.0)) {
        throw Error(ErrorKind::Validation, "circle radius must be positive and finite");
    }
}

double Circle::angle_of(cplx z) const {
    double t = std::arg(z - center);
    if (t < 0.0) t += kTwoPi;
    if (t >= kTwoPi) t -= kTwoPi;
    return t;
}

CircleDomain::CircleDomain(Circle outer, std::vector<Circle> holes, std::optional<double> margin)
    : outer_(outer), holes_(std::move(holes)) {
    if (margin && !(*margin > 0.0 && std::isfinite(*margin))) {
        throw Error(ErrorKind::Validation, "margin must be positive");
    }
    auto check_gap = [&](int i, int j, double gap) {
        const bool bad = margin ? gap < *margin : !(gap > 0.0);
        if (bad) {
            char buf[160];
            if (margin) {
                std::snprintf(buf, sizeof buf, "%s and %s: gap %.6g below margin %.6g",
                              component_label(i).c_str(), component_label(j).c_str(), gap, *margin);
            } else {
                std::snprintf(buf, sizeof buf, "%s and %s overlap or touch (gap %.6g)",
                              component_label(i).c_str(), component_label(j).c_str(), gap);
            }
            throw Error(ErrorKind::Validation, buf);
        }
    };
    for (size_t i = 0; i < holes_.size(); ++i) {
        const Circle& h = holes_[i];
        check_gap(0, static_cast<int>(i) + 1,
                  outer_.radius - std::abs(h.center - outer_.center) - h.radius);
    }
    for (size_t i = 0; i < holes_.size(); ++i) {
        for (size_t k = i + 1; k < holes_.size(); ++k) {
            check_gap(static_cast<int>(i) + 1, static_cast<int>(k) + 1,
                      std::abs(holes_[i].center - holes_[k].center) - holes_[i].radius -
                          holes_[k].radius);
        }
    }
    margin_ = margin ? *margin : (holes_.empty() ? 0.25 * outer_.radius : 0.25 * min_gap());
}

const Circle& CircleDomain::circle(int j) const {
    if (j < 0 || j >= components()) {
        throw Error(ErrorKind::InvalidComponent, "component index " + std::to_string(j) +
                                                     " out of range [0, " +
                                                     std::to_string(components()) + ")");
    }
    return j == 0 ? outer_ : holes_[static_cast<size_t>(j - 1)];
}

int CircleDomain::sign(int j) const {
    (void)circle(j);
    return j == 0 ? 1 : -1;
}

double CircleDomain::min_gap() const {
    double gap = std::numeric_limits<double>::infinity();
    for (const Circle& h : holes_) {
        gap = std::min(gap, outer_.radius - std::abs(h.center - outer_.center) - h.radius);
    }
    for (size_t i = 0; i < holes_.size(); ++i) {
        for (size_t k = i + 1; k < holes_.size(); ++k) {
            gap = std::min(gap, std::abs(holes_[i].center - holes_[k].center) -
                                    holes_[i].radius - holes_[k].radius);
        }
    }
    return gap;
}

bool CircleDomain::contains(cplx z) const {
    if (!(std::abs(z - outer_.center) < outer_.radius)) return false;
    return std::all_of(holes_.begin(), holes_.end(),
                       [&](const Circle& h) { return std::abs(z - h.center) > h.radius; });
}

double CircleDomain::distance_to_boundary(cplx z) const {
    double d = std::abs(outer_.radius - std::abs(z - outer_.center));
    for (const Circle& h : holes_) d = std::min(d, std::abs(std::abs(z - h.center) - h.radius));
    return d;
}

std::string CircleDomain::fingerprint() const {
    auto q = [](double v) { return std::llround(v * 1e12); };
    std::string key;
    auto add = [&](const Circle& c) {
        key += std::to_string(q(c.center.real())) + ',' + std::to_string(q(c.center.imag())) +
               ',' + std::to_string(q(c.radius)) + ';';
    };
    add(outer_);
    for (const Circle& h : holes_) add(h);
    return key;
}

NormalSample outward_normal(const CircleDomain& domain, int j, double theta) {
    const int s = domain.sign(j);
    const cplx half = std::polar(1.0, 0.5 * theta);
    if (s > 0) return {std::polar(1.0, theta), half};
    return {-std::polar(1.0, theta), cplx(0.0, 1.0) * half};
}

MoebiusMap::MoebiusMap(cplx a_, cplx b_, cplx c_, cplx d_) : a(a_), b(b_), c(c_), d(d_) {
    const double scale = std::max(std::abs(a) * std::abs(d), std::abs(b) * std::abs(c));
    if (!(std::abs(det()) > 1e-14 * scale) || !finite(a) || !finite(b) || !finite(c) ||
        !finite(d)) {
        throw Error(ErrorKind::Validation, "degenerate Moebius map (ad - bc = 0)");
    }
}

MoebiusMap MoebiusMap::affine(cplx scale, cplx shift) { return {scale, shift, 0.0, 1.0}; }

MoebiusMap MoebiusMap::inversion(cplx p) { return {0.0, 1.0, 1.0, -p}; }

cplx MoebiusMap::apply(cplx z) const {
    const cplx den = c * z + d;
    if (std::abs(den) <= 1e-300 ||
        std::abs(den) <= 1e-15 * (std::abs(c) * std::abs(z) + std::abs(d))) {
        throw Error(ErrorKind::Pole, "Moebius map evaluated at its pole");
    }
    return (a * z + b) / den;
}

cplx MoebiusMap::derivative(cplx z) const {
    const cplx den = c * z + d;
    if (std::abs(den) <= 1e-15 * (std::abs(c) * std::abs(z) + std::abs(d))) {
        throw Error(ErrorKind::Pole, "Moebius derivative evaluated at its pole");
    }
    return det() / (den * den);
}

MoebiusMap MoebiusMap::inverse() const { return {d, -b, -c, a}; }

MoebiusMap MoebiusMap::compose(const MoebiusMap& in) const {
    return {a * in.a + b * in.c, a * in.b + b * in.d, c * in.a + d * in.c, c * in.b + d * in.d};
}

cplx moebius_apply(const MoebiusMap& m, cplx z) { return m.apply(z); }

Circle moebius_map_circle(const MoebiusMap& m, const Circle& circ) {
    if (!m.has_pole()) {
        const cplx k = m.a / m.d;
        return {k * circ.center + m.b / m.d, std::abs(k) * circ.radius};
    }
    const cplx pole = m.pole();
    const cplx q = circ.center - pole;
    const double dq = std::abs(q);
    if (std::abs(dq - circ.radius) <= 1e-12 * circ.radius) {
        throw Error(ErrorKind::ImageIsLine, "pole of the map lies on the circle");
    }
    // m(z) = a/c - (det/c^2) / (z - pole); invert about the pole first.
    const double denom = dq * dq - circ.radius * circ.radius;
    const cplx inv_center = std::conj(q) / denom;
    const double inv_radius = circ.radius / std::abs(denom);
    const cplx k = -m.det() / (m.c * m.c);
    return {k * inv_center + m.a / m.c, std::abs(k) * inv_radius};
}

cplx spinor_weight(const MoebiusMap& m, cplx z) { return std::sqrt(m.derivative(z)); }

SpinorBranch SpinorBranch::pinned_at(const MoebiusMap& m, cplx seed) {
    SpinorBranch br{m, 1};
    const cplx principal = spinor_weight(m, seed);
    if (std::abs(br(seed) - principal) > std::abs(br(seed) + principal)) br.sign = -1;
    return br;
}

cplx SpinorBranch::operator()(cplx z) const {
    const cplx den = map.c * z + map.d;
    if (std::abs(den) <= 1e-15 * (std::abs(map.c) * std::abs(z) + std::abs(map.d))) {
        throw Error(ErrorKind::Pole, "spinor weight evaluated at the pole");
    }
    return static_cast<double>(sign) * std::sqrt(map.det()) / den;
}

Normalization normalize_component(const CircleDomain& domain, int j) {
    (void)domain.circle(j);
    if (domain.components() < 2) {
        throw Error(ErrorKind::Validation, "normalize_component needs a multiply connected domain");
    }
    const auto& holes = domain.holes();
    if (j > 0) {
        const Circle& h = holes[static_cast<size_t>(j - 1)];
        const MoebiusMap m = MoebiusMap::affine(1.0 / h.radius, -h.center / h.radius);
        std::vector<Circle> rest;
        std::vector<int> origin{0};
        for (int k = 1; k < domain.components(); ++k) {
            if (k == j) continue;
            rest.push_back(moebius_map_circle(m, domain.circle(k)));
            origin.push_back(k);
        }
        return {m, CircleDomain(moebius_map_circle(m, domain.outer()), std::move(rest)), origin};
    }
    // Outer component: invert about the center of hole 1, which turns the
    // outer circle into a hole, then normalize that hole.
    const MoebiusMap inv = MoebiusMap::inversion(holes[0].center);
    const Circle outer_img = moebius_map_circle(inv, domain.outer());
    const MoebiusMap aff =
        MoebiusMap::affine(1.0 / outer_img.radius, -outer_img.center / outer_img.radius);
    const MoebiusMap m = aff.compose(inv);
    std::vector<Circle> rest;
    std::vector<int> origin{1};
    for (int k = 2; k < domain.components(); ++k) {
        rest.push_back(moebius_map_circle(m, domain.circle(k)));
        origin.push_back(k);
    }
    return {m, CircleDomain(moebius_map_circle(m, holes[0]), std::move(rest)), origin};
}

}  // namespace hardy
