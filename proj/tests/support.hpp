#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "hardy/boundary_data.hpp"
#include "hardy/geometry.hpp"

namespace testing {

using hardy::Circle;
using hardy::CircleDomain;
using hardy::cplx;

constexpr double kPi = std::numbers::pi;

inline CircleDomain annulus(double outer) { return CircleDomain(Circle({0.0, 0.0}, outer), {Circle({0.0, 0.0}, 1.0)}); }

inline CircleDomain offset2() { return CircleDomain(Circle({0.0, 0.0}, 2.0), {Circle({0.4, 0.2}, 0.6)}); }

inline CircleDomain tight3() {
    return CircleDomain(Circle({0.0, 0.0}, 2.0), {Circle({-0.7, 0.1}, 0.35), Circle({0.6, -0.3}, 0.4)}, 0.3);
}

inline CircleDomain wide3() {
    return CircleDomain(Circle({0.0, 0.0}, 3.0), {Circle({0.1, 0.0}, 0.6), Circle({1.7, 0.5}, 0.4)});
}

inline CircleDomain sym3() {
    return CircleDomain(Circle({0.0, 0.0}, 3.0), {Circle({-1.2, 0.0}, 0.5), Circle({1.2, 0.0}, 0.5)}, 0.3);
}

inline cplx gaussian(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    const double re = g(rng);
    return {re, g(rng)};
}

inline hardy::ComponentFunction random_component(int component, int sign, int cutoff, std::mt19937_64& rng) {
    hardy::ComponentFunction c(component, sign, cutoff);
    for (int k = c.min_mode(); k <= c.max_mode(); ++k) c.mode_ref(k) = gaussian(rng);
    return c;
}

// Uniformly random point of the domain at distance >= gap from the boundary.
inline cplx random_interior(const CircleDomain& d, double gap, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (;;) {
        const cplx z = d.outer().center + d.outer().radius * cplx(u(rng), u(rng));
        if (d.contains(z) && d.distance_to_boundary(z) >= gap) return z;
    }
}

}  // namespace testing
