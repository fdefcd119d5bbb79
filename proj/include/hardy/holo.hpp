#pragma once

#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "hardy/boundary_data.hpp"
#include "hardy/geometry.hpp"
#include "hardy/linalg.hpp"

namespace hardy {

// One block of a Laurent expansion in a scaled variable:
//   taylor:    sum_{m>=0} coeffs[m] ((z - center) / scale)^m
//   principal: sum_{k>=1} coeffs[k-1] (scale / (z - center))^k
// Scaling by the circle radius keeps the coefficients equal to the Fourier
// coefficients on that circle.
struct LaurentBlock {
    cplx center{};
    double scale = 1.0;
    std::vector<cplx> coeffs;
};

struct LaurentLeaf {
    LaurentBlock taylor;
    std::vector<LaurentBlock> principal;
};

class HoloFunction;
struct CombineNode;
struct TransportNode;
using HoloNode = std::variant<LaurentLeaf, CombineNode, TransportNode>;

// Holomorphic function on a circle domain, stored as an evaluator tree.
// Immutable; copies share structure.
class HoloFunction {
public:
    // The zero function.
    HoloFunction();
    explicit HoloFunction(HoloNode node);

    static HoloFunction leaf(LaurentLeaf leaf);
    // Principal part sum_k coeffs[k-1] (z - center)^{-k} (unit scale).
    static HoloFunction principal(cplx center, std::vector<cplx> coeffs);
    // Polynomial sum_m coeffs[m] (z - center)^m (unit scale).
    static HoloFunction polynomial(cplx center, std::vector<cplx> coeffs);

    const HoloNode& node() const;
    bool is_leaf() const;

    // Pole-guarded evaluation; no domain check.
    cplx operator()(cplx z) const;

private:
    std::shared_ptr<const HoloNode> node_;
};

struct CombineNode {
    std::vector<double> weights;
    std::vector<HoloFunction> terms;
};

// z -> inner(branch.map(z)) * branch(z)
struct TransportNode {
    SpinorBranch branch;
    HoloFunction inner;
};

struct Contour {
    Circle circle;
    int orientation = 1;  // +1 counterclockwise
};

// Evaluation inside the open domain; throws OutsideDomain otherwise.
cplx evaluate(const HoloFunction& f, const CircleDomain& domain, cplx z);
std::vector<cplx> evaluate(const HoloFunction& f, std::span<const cplx> points);

// Fourier coefficients of f on a circle from P uniform samples
// (P = default_sample_count(M) when 0). Throws Aliasing above kAliasingError.
CoefficientResult restrict_to_circle(const HoloFunction& f, const Circle& circle, int cutoff,
                                     int component = 0, int sign = 1, int samples = 0);
ComponentFunction restrict(const HoloFunction& f, const CircleDomain& domain, int j, int cutoff);
BoundaryFunction restrict(const HoloFunction& f, const CircleDomain& domain, int cutoff);

BoundaryFunction t_apply(const HoloFunction& f, const CircleDomain& domain, int cutoff);
BoundaryFunction u_apply(const HoloFunction& f, const CircleDomain& domain, int cutoff);

// (1/2 pi i) oint f^2 dz by the trapezoid rule, times the orientation.
cplx contour_integral_sq(const HoloFunction& f, const Contour& contour, int samples = 512);

// (F o m) * sqrt(m'), the branch being the global one with the given sign.
HoloFunction transport(const HoloFunction& f, const MoebiusMap& m, int branch_sign = 1);
HoloFunction transport(const HoloFunction& f, const SpinorBranch& branch);

// Real-linear combination. Zero weights are dropped, a single unit term is
// returned as is, and leaves with matching blocks are merged.
HoloFunction combine(std::span<const double> weights, std::span<const HoloFunction> terms);
HoloFunction combine(std::initializer_list<double> weights,
                     std::initializer_list<HoloFunction> terms);

// Coefficient layout of a flat Laurent leaf: taylor block of degree
// `taylor_degree`, then principal blocks of the given degrees. Coefficient
// vectors concatenate the blocks in that order.
struct LaurentBasis {
    cplx taylor_center{};
    double taylor_scale = 1.0;
    int taylor_degree = 0;
    struct Pole {
        cplx center{};
        double scale = 1.0;
        int degree = 0;
    };
    std::vector<Pole> poles;

    // Taylor degree M about the outer circle, principal degree M+1 about
    // each hole, all scaled by the circle radius.
    static LaurentBasis for_domain(const CircleDomain& domain, int cutoff);

    int size() const;
    HoloFunction function(const CVector& coeffs) const;
    // points x size() matrix of basis values.
    CMatrix evaluation_matrix(std::span<const cplx> points) const;
    // Coefficients of the function whose boundary modes on `domain` are
    // given (rows: the domain's circles' sampled values). The basis must
    // come from for_domain(domain, M).
    CVector from_boundary(const BoundaryFunction& data) const;
};

// Flat leaf equal to f on the domain, obtained from f's boundary values.
HoloFunction flatten(const HoloFunction& f, const CircleDomain& domain, int cutoff);

}  // namespace hardy
