#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace hardy {

using cplx = std::complex<double>;

struct Circle {
    cplx center{0.0, 0.0};
    double radius = 1.0;

    Circle() = default;
    Circle(cplx c, double r);

    cplx point(double theta) const { return center + radius * std::polar(1.0, theta); }
    // Angle of z about the center, in [0, 2pi).
    double angle_of(cplx z) const;
};

// Bounded planar domain: interior of `outer` minus the closed disks of
// `holes`. Component 0 is the outer circle, components 1..m the holes.
class CircleDomain {
public:
    // When margin is omitted it defaults to a quarter of the smallest gap.
    CircleDomain(Circle outer, std::vector<Circle> holes, std::optional<double> margin = std::nullopt);

    const Circle& outer() const { return outer_; }
    const std::vector<Circle>& holes() const { return holes_; }
    double margin() const { return margin_; }
    int components() const { return static_cast<int>(holes_.size()) + 1; }
    const Circle& circle(int j) const;
    // +1 on the outer circle, -1 on holes.
    int sign(int j) const;

    // Smallest gap between any two boundary circles.
    double min_gap() const;
    bool contains(cplx z) const;
    // Distance from z to the nearest boundary circle (z assumed in the domain).
    double distance_to_boundary(cplx z) const;

    // Centers and radii rounded to 1e-12; equal keys mean equal geometry.
    std::string fingerprint() const;

private:
    Circle outer_;
    std::vector<Circle> holes_;
    double margin_ = 0.0;
};

struct NormalSample {
    cplx nu_out;
    cplx nu_half;  // nu_half^2 == nu_out
};

// Outward unit normal at the point of component j with local angle theta.
// The square-root branch is e^{i theta/2} on the outer circle and
// i e^{i theta/2} on holes.
NormalSample outward_normal(const CircleDomain& domain, int j, double theta);

// z -> (a z + b) / (c z + d)
struct MoebiusMap {
    cplx a{1.0, 0.0};
    cplx b{0.0, 0.0};
    cplx c{0.0, 0.0};
    cplx d{1.0, 0.0};

    MoebiusMap() = default;
    MoebiusMap(cplx a_, cplx b_, cplx c_, cplx d_);

    static MoebiusMap identity() { return {}; }
    // z -> scale * z + shift
    static MoebiusMap affine(cplx scale, cplx shift);
    // z -> 1 / (z - p)
    static MoebiusMap inversion(cplx p);

    cplx det() const { return a * d - b * c; }
    bool has_pole() const { return c != cplx(0.0, 0.0); }
    cplx pole() const { return -d / c; }

    cplx apply(cplx z) const;
    cplx derivative(cplx z) const;
    MoebiusMap inverse() const;
    // (this o inner)(z) = this(inner(z))
    MoebiusMap compose(const MoebiusMap& inner) const;
};

cplx moebius_apply(const MoebiusMap& m, cplx z);
Circle moebius_map_circle(const MoebiusMap& m, const Circle& c);

// Principal square root of m'(z).
cplx spinor_weight(const MoebiusMap& m, cplx z);

// Globally continuous square root of m'(z) = det / (c z + d)^2, namely
// sign * sqrt(det) / (c z + d). The sign is the branch seed.
struct SpinorBranch {
    MoebiusMap map;
    int sign = 1;

    // Branch agreeing with the principal root of m' at `seed`.
    static SpinorBranch pinned_at(const MoebiusMap& m, cplx seed);

    cplx operator()(cplx z) const;
};

struct Normalization {
    MoebiusMap map;              // sends component j onto the unit circle
    CircleDomain filled;         // image domain with the unit disk glued back
    std::vector<int> origin;     // filled component -> original component
};

// Moebius map sending component j to the unit circle, with the image of the
// domain equal to filled \ closed unit disk.
Normalization normalize_component(const CircleDomain& domain, int j);

}  // namespace hardy
