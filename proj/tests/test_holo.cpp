#include "doctest.h"
#include "hardy/error.hpp"
#include "hardy/holo.hpp"
#include "support.hpp"

using namespace hardy;
using namespace testing;

namespace {

HoloFunction random_leaf(const CircleDomain& d, int degree, std::mt19937_64& rng) {
    const LaurentBasis basis = LaurentBasis::for_domain(d, degree);
    CVector c(basis.size());
    for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = gaussian(rng) * std::pow(0.7, static_cast<double>(i % (degree + 1)));
    return basis.function(c);
}

// Moebius map with its pole well outside the outer circle, so the image of
// a circle domain is a circle domain with the same component order.
MoebiusMap random_map(const CircleDomain& d, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const cplx p = d.outer().center + d.outer().radius * (3.0 + 2.0 * u(rng)) * std::polar(1.0, 2.0 * kPi * u(rng));
    const MoebiusMap inv = MoebiusMap::inversion(p);
    const Circle img = moebius_map_circle(inv, d.outer());
    const cplx scale = std::polar((1.0 + u(rng)) / img.radius, 2.0 * kPi * u(rng));
    return MoebiusMap::affine(scale, gaussian(rng) - scale * img.center).compose(inv);
}

CircleDomain image_domain(const CircleDomain& d, const MoebiusMap& m) {
    std::vector<Circle> holes;
    for (const Circle& h : d.holes()) holes.push_back(moebius_map_circle(m, h));
    return CircleDomain(moebius_map_circle(m, d.outer()), holes);
}

}  // namespace

TEST_CASE("leaf and combination evaluation") {
    LaurentLeaf leaf;
    leaf.taylor = {0.0, 1.0, {2.0}};
    const HoloFunction two = HoloFunction::leaf(leaf);
    CHECK(std::abs(two(cplx(0.3, 0.9)) - 2.0) <= 1e-15);
    const HoloFunction inv = HoloFunction::principal(0.0, {1.0});
    CHECK(std::abs(inv(2.0) - 0.5) <= 1e-15);
    const HoloFunction f = combine({1.0, 1.0}, {inv, HoloFunction::polynomial(0.0, {0.5})});
    CHECK(std::abs(f(1.0) - 1.5) <= 1e-15);
    CHECK_THROWS_AS(evaluate(inv, annulus(2.0), 0.5), Error);
    CHECK(std::abs(evaluate(inv, annulus(2.0), 1.25) - 0.8) <= 1e-15);
}

TEST_CASE("restriction to circles") {
    LaurentLeaf leaf;
    leaf.taylor = {0.0, 1.0, {2.0}};
    CoefficientResult r = restrict_to_circle(HoloFunction::leaf(leaf), Circle(cplx(0.5, 0.1), 0.3), 4);
    CHECK(std::abs(r.function.mode(0) - 2.0) <= 1e-15);
    const HoloFunction inv = HoloFunction::principal(0.0, {1.0});
    r = restrict_to_circle(inv, Circle(0.0, 1.0), 4);
    CHECK(std::abs(r.function.mode(-1) - 1.0) <= 1e-15);
    r = restrict_to_circle(inv, Circle(0.0, 2.0), 4);
    CHECK(std::abs(r.function.mode(-1) - 0.5) <= 1e-15);
    CHECK(r.function.norm() == doctest::Approx(0.5).epsilon(1e-14));
    // 1/(z - 0.99) is not resolved on the unit circle with 8 modes.
    CHECK_THROWS_AS(restrict_to_circle(HoloFunction::principal(0.99, {1.0}), Circle(0.0, 1.0), 8), Error);
}

TEST_CASE("t_apply on the annulus") {
    const CircleDomain d = annulus(2.0);
    const BoundaryFunction t = t_apply(HoloFunction::polynomial(0.0, {2.0}), d, 4);
    CHECK(std::abs(t[0].mode(0) - 1.0) <= 1e-14);
    CHECK(std::abs(t[0].mode(-1) + 1.0) <= 1e-14);

    const HoloFunction f = combine({1.0, 1.0}, {HoloFunction::principal(0.0, {2.0 / 3.0}),
                                                HoloFunction::polynomial(0.0, {1.0 / 3.0})});
    CHECK(t_apply(f, d, 8)[0].norm() <= 1e-15);

    std::mt19937_64 rng(5);
    for (const CircleDomain& dom : {annulus(2.0), tight3()}) {
        const HoloFunction g = random_leaf(dom, 6, rng);
        const BoundaryFunction sum = t_apply(g, dom, 16) + u_apply(g, dom, 16);
        CHECK((sum - restrict(g, dom, 16)).norm() <= 1e-13 * restrict(g, dom, 16).norm());
    }
}

TEST_CASE("contour integrals of squares") {
    const Contour unit{Circle(0.0, 1.0), 1};
    const HoloFunction inv = HoloFunction::principal(0.0, {1.0});
    CHECK(std::abs(contour_integral_sq(inv, unit)) <= 1e-15);
    const HoloFunction f = combine({1.0, 1.0}, {inv, HoloFunction::polynomial(0.0, {1.0})});
    CHECK(std::abs(contour_integral_sq(f, unit) - 2.0) <= 1e-14);
    CHECK(std::abs(contour_integral_sq(f, {Circle(0.0, 1.0), -1}) + 2.0) <= 1e-14);
    CHECK(std::abs(contour_integral_sq(HoloFunction::polynomial(0.3, {1.0, 2.0, cplx(0.0, 1.0)}), unit)) <= 1e-14);
}

TEST_CASE("transport with simple maps") {
    std::mt19937_64 rng(7);
    const HoloFunction g = random_leaf(tight3(), 4, rng);
    const HoloFunction same = transport(g, MoebiusMap::identity());
    for (const cplx z : {cplx(1.0, 0.2), cplx(-0.2, 1.3), cplx(0.1, -0.9)}) CHECK(std::abs(same(z) - g(z)) <= 1e-15);
    const HoloFunction one = transport(HoloFunction::polynomial(0.0, {1.0}), MoebiusMap::affine(2.0, 0.0));
    for (const cplx z : {cplx(0.0), cplx(0.3, 0.4), cplx(-2.0, 1.0)}) CHECK(std::abs(one(z) - std::sqrt(2.0)) <= 1e-15);
    const HoloFunction flipped = transport(HoloFunction::polynomial(0.0, {1.0}), MoebiusMap::affine(2.0, 0.0), -1);
    CHECK(std::abs(flipped(0.5) + std::sqrt(2.0)) <= 1e-15);
}

TEST_CASE("combine simplifications") {
    std::mt19937_64 rng(9);
    const HoloFunction g = random_leaf(offset2(), 4, rng);
    const cplx z(1.1, 0.3);
    CHECK(std::abs(combine({1.0}, {g})(z) - g(z)) == 0.0);
    CHECK(std::abs(combine({0.0}, {g})(z)) == 0.0);
    const HoloFunction diff = combine({1.0, -1.0}, {g, g});
    for (const cplx w : {z, cplx(-1.5, 0.2), cplx(0.0, 1.7)}) CHECK(std::abs(diff(w)) <= 1e-15);
    CHECK(diff.is_leaf());
}

TEST_CASE("transport conjugates the in-projection") {
    // With G = (F o m) sqrt(m') the boundary values satisfy
    // P_in G = sqrt(m') (P_in F) o m pointwise, up to one global sign.
    std::mt19937_64 rng(13);
    for (const CircleDomain& d : {offset2(), tight3()}) {
        for (int trial = 0; trial < 3; ++trial) {
            const HoloFunction f = random_leaf(d, 6, rng);
            const MoebiusMap mu = random_map(d, rng);
            const MoebiusMap back = mu.inverse();
            const CircleDomain e = image_domain(d, mu);
            const HoloFunction g = transport(f, back);
            const int m = 96;
            const BoundaryFunction tf = t_apply(f, d, m);
            const BoundaryFunction tg = t_apply(g, e, m);
            const SpinorBranch weight{back, 1};
            double worst = 0.0, scale = 0.0;
            int sign = 0;
            for (int k = 0; k < d.components(); ++k) {
                for (int i = 0; i < 40; ++i) {
                    const cplx zeta = e.circle(k).point(2.0 * kPi * (i + 0.37) / 40);
                    const cplx z = back.apply(zeta);
                    const cplx lhs = tg[k].value(e.circle(k).angle_of(zeta));
                    const cplx rhs = weight(zeta) * tf[k].value(d.circle(k).angle_of(z));
                    if (sign == 0 && std::abs(rhs) > 1e-3) sign = std::abs(lhs - rhs) <= std::abs(lhs + rhs) ? 1 : -1;
                    worst = std::max(worst, std::abs(lhs - static_cast<double>(sign) * rhs));
                    scale = std::max(scale, std::abs(rhs));
                }
            }
            CHECK(sign != 0);
            CHECK(worst <= 1e-8 * scale);
        }
    }
}

TEST_CASE("flatten and the Laurent basis") {
    std::mt19937_64 rng(19);
    const CircleDomain d = tight3();
    const int m = 24;
    const LaurentBasis basis = LaurentBasis::for_domain(d, m);
    CHECK(basis.size() == 3 * (m + 1));
    CVector c = CVector::Zero(basis.size());
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        c(i) = gaussian(rng) * std::pow(0.5, static_cast<double>(i <= m ? i : (i - m - 1) % (m + 1)));
    }
    const HoloFunction f = basis.function(c);
    const std::vector<cplx> pts{cplx(1.2, 0.8), cplx(-1.4, -0.3), cplx(0.1, 1.5)};
    const CVector direct = basis.evaluation_matrix(pts) * c;
    for (size_t i = 0; i < pts.size(); ++i) CHECK(std::abs(direct(static_cast<Eigen::Index>(i)) - f(pts[i])) <= 1e-12);
    const CVector back = basis.from_boundary(restrict(f, d, m));
    CHECK((back - c).norm() <= 1e-10 * c.norm());

    const MoebiusMap mu = random_map(d, rng);
    const CircleDomain e = image_domain(d, mu);
    const HoloFunction g = transport(random_leaf(d, 4, rng), mu.inverse());
    const HoloFunction flat = flatten(g, e, 64);
    CHECK(flat.is_leaf());
    for (int i = 0; i < 10; ++i) {
        const cplx z = random_interior(e, 0.05, rng);
        CHECK(std::abs(flat(z) - g(z)) <= 1e-9 * std::max(1.0, std::abs(g(z))));
    }
}
