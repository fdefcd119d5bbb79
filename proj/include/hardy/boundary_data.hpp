#pragma once

#include <span>
#include <vector>

#include "hardy/geometry.hpp"
#include "hardy/linalg.hpp"

namespace hardy {

enum class Side { In, Out };
enum class Half { Plus, Minus };  // modes k >= 0 / k < 0

// Truncated Fourier series sum_k c_k e^{i k theta} of a function on one
// boundary circle, theta being the local angle about the circle's center.
//
// Modes run over k in [-M-1, M]. This range is closed under the pairing
// k <-> -1-k used by the projections and by j_flip, so those act exactly at
// truncation.
class ComponentFunction {
public:
    ComponentFunction() = default;
    ComponentFunction(int component, int sign, int cutoff);
    ComponentFunction(int component, int sign, int cutoff, std::vector<cplx> coeffs);

    int component() const { return component_; }
    int sign() const { return sign_; }
    int cutoff() const { return cutoff_; }
    int min_mode() const { return -cutoff_ - 1; }
    int max_mode() const { return cutoff_; }
    size_t size() const { return coeffs_.size(); }

    bool has_mode(int k) const { return k >= min_mode() && k <= max_mode(); }
    cplx mode(int k) const { return has_mode(k) ? coeffs_[index(k)] : cplx{}; }
    cplx& mode_ref(int k);
    const std::vector<cplx>& coeffs() const { return coeffs_; }

    cplx value(double theta) const;
    // Values at theta_i = 2 pi i / P.
    std::vector<cplx> samples(int count) const;

    // Same function at another cutoff (zero padded or truncated).
    ComponentFunction with_cutoff(int cutoff) const;

    double norm() const;

    ComponentFunction& operator+=(const ComponentFunction& o);
    ComponentFunction& operator-=(const ComponentFunction& o);
    ComponentFunction& operator*=(double s);

    // Interleaved (Re, Im) coordinates, mode -M-1 first.
    Vector to_real() const;
    static ComponentFunction from_real(int component, int sign, int cutoff, const Vector& v);

private:
    size_t index(int k) const { return static_cast<size_t>(k + cutoff_ + 1); }

    int component_ = 0;
    int sign_ = 1;
    int cutoff_ = 0;
    std::vector<cplx> coeffs_;
};

ComponentFunction operator+(ComponentFunction a, const ComponentFunction& b);
ComponentFunction operator-(ComponentFunction a, const ComponentFunction& b);
ComponentFunction operator*(double s, ComponentFunction a);

struct CoefficientResult {
    ComponentFunction function;
    double aliasing = 0.0;  // L2 mass of the discarded modes
    double norm = 0.0;      // L2 norm of the sampled function

    double relative_aliasing() const { return norm > 0.0 ? aliasing / norm : aliasing; }
};

// Sample count used when sampling a function for cutoff M: the smallest
// power of two >= 4(M+1).
int default_sample_count(int cutoff);

constexpr double kAliasingWarn = 1e-8;
constexpr double kAliasingError = 1e-3;

// Discrete Fourier coefficients of uniform samples at theta_i = 2 pi i / P.
// P must be a power of two with P >= 2M+2.
CoefficientResult to_coefficients(std::span<const cplx> samples, int cutoff, int component = 0,
                                  int sign = 1);
// Throws Aliasing when the relative discarded mass exceeds kAliasingError.
void check_aliasing(const CoefficientResult& r);

// (P_out c)_k = (c_k + s conj(c_{-1-k})) / 2, (P_in c)_k = (c_k - s conj(c_{-1-k})) / 2
// with s the component sign.
ComponentFunction project(const ComponentFunction& c, Side side);
// (J c)_k = conj(c_{-1-k})
ComponentFunction j_flip(const ComponentFunction& c);
ComponentFunction f_part(const ComponentFunction& c, Half half);
double real_dot(const ComponentFunction& a, const ComponentFunction& b);
// Norm of the projection onto the complementary side.
double membership_residual(const ComponentFunction& c, Side space);

// Real matrix of project() on interleaved coordinates.
Matrix projection_matrix(int cutoff, int sign, Side side);

class BoundaryFunction {
public:
    BoundaryFunction() = default;
    explicit BoundaryFunction(std::vector<ComponentFunction> parts);
    // Zero function on every component of the domain.
    static BoundaryFunction zero(const CircleDomain& domain, int cutoff);

    int components() const { return static_cast<int>(parts_.size()); }
    int cutoff() const { return parts_.empty() ? 0 : parts_.front().cutoff(); }
    const ComponentFunction& operator[](int j) const { return parts_[static_cast<size_t>(j)]; }
    ComponentFunction& operator[](int j) { return parts_[static_cast<size_t>(j)]; }
    const std::vector<ComponentFunction>& parts() const { return parts_; }

    double norm() const;
    BoundaryFunction with_cutoff(int cutoff) const;

    Vector to_real() const;
    static BoundaryFunction from_real(const CircleDomain& domain, int cutoff, const Vector& v);

private:
    std::vector<ComponentFunction> parts_;
};

BoundaryFunction project(const BoundaryFunction& f, Side side);
BoundaryFunction operator-(const BoundaryFunction& a, const BoundaryFunction& b);
BoundaryFunction operator+(const BoundaryFunction& a, const BoundaryFunction& b);

}  // namespace hardy
