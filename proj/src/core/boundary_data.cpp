#include "hardy/boundary_data.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hardy/error.hpp"

namespace hardy {

ComponentFunction::ComponentFunction(int component, int sign, int cutoff)
    : component_(component), sign_(sign), cutoff_(cutoff),
      coeffs_(static_cast<size_t>(2 * cutoff + 2)) {
    if (cutoff < 0) throw Error(ErrorKind::Validation, "mode cutoff must be nonnegative");
    if (sign != 1 && sign != -1) throw Error(ErrorKind::Validation, "component sign must be +-1");
}

ComponentFunction::ComponentFunction(int component, int sign, int cutoff, std::vector<cplx> coeffs)
    : ComponentFunction(component, sign, cutoff) {
    if (coeffs.size() != coeffs_.size()) {
        throw Error(ErrorKind::Validation, "coefficient vector must have 2M+2 entries");
    }
    for (const cplx& c : coeffs) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
            throw Error(ErrorKind::Validation, "non-finite boundary coefficient");
        }
    }
    coeffs_ = std::move(coeffs);
}

cplx& ComponentFunction::mode_ref(int k) {
    if (!has_mode(k)) {
        throw Error(ErrorKind::Validation, "mode " + std::to_string(k) + " outside [" +
                                               std::to_string(min_mode()) + ", " +
                                               std::to_string(max_mode()) + "]");
    }
    return coeffs_[index(k)];
}

cplx ComponentFunction::value(double theta) const {
    cplx acc{};
    for (int k = min_mode(); k <= max_mode(); ++k) {
        acc += coeffs_[index(k)] * std::polar(1.0, k * theta);
    }
    return acc;
}

std::vector<cplx> ComponentFunction::samples(int count) const {
    if (count >= static_cast<int>(coeffs_.size()) && is_power_of_two(count)) {
        std::vector<cplx> spec(static_cast<size_t>(count));
        for (int k = min_mode(); k <= max_mode(); ++k) {
            spec[static_cast<size_t>((k + count) % count)] = coeffs_[index(k)];
        }
        return dft_inverse(spec);
    }
    std::vector<cplx> out(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) out[static_cast<size_t>(i)] = value(2.0 * std::numbers::pi * i / count);
    return out;
}

ComponentFunction ComponentFunction::with_cutoff(int cutoff) const {
    ComponentFunction r(component_, sign_, cutoff);
    for (int k = r.min_mode(); k <= r.max_mode(); ++k) r.coeffs_[r.index(k)] = mode(k);
    return r;
}

double ComponentFunction::norm() const {
    double s = 0.0;
    for (const cplx& c : coeffs_) s += std::norm(c);
    return std::sqrt(s);
}

ComponentFunction& ComponentFunction::operator+=(const ComponentFunction& o) {
    if (o.cutoff_ != cutoff_) throw Error(ErrorKind::Validation, "cutoff mismatch");
    for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
}

ComponentFunction& ComponentFunction::operator-=(const ComponentFunction& o) {
    if (o.cutoff_ != cutoff_) throw Error(ErrorKind::Validation, "cutoff mismatch");
    for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
}

ComponentFunction& ComponentFunction::operator*=(double s) {
    for (cplx& c : coeffs_) c *= s;
    return *this;
}

Vector ComponentFunction::to_real() const {
    Vector v(2 * static_cast<Eigen::Index>(coeffs_.size()));
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        v(2 * static_cast<Eigen::Index>(i)) = coeffs_[i].real();
        v(2 * static_cast<Eigen::Index>(i) + 1) = coeffs_[i].imag();
    }
    return v;
}

ComponentFunction ComponentFunction::from_real(int component, int sign, int cutoff,
                                               const Vector& v) {
    ComponentFunction r(component, sign, cutoff);
    if (v.size() != 2 * static_cast<Eigen::Index>(r.coeffs_.size())) {
        throw Error(ErrorKind::Validation, "real coordinate vector has the wrong length");
    }
    for (size_t i = 0; i < r.coeffs_.size(); ++i) {
        r.coeffs_[i] = cplx(v(2 * static_cast<Eigen::Index>(i)), v(2 * static_cast<Eigen::Index>(i) + 1));
    }
    return r;
}

ComponentFunction operator+(ComponentFunction a, const ComponentFunction& b) { return a += b; }
ComponentFunction operator-(ComponentFunction a, const ComponentFunction& b) { return a -= b; }
ComponentFunction operator*(double s, ComponentFunction a) { return a *= s; }

int default_sample_count(int cutoff) { return next_power_of_two(4 * (cutoff + 1)); }

CoefficientResult to_coefficients(std::span<const cplx> samples, int cutoff, int component,
                                  int sign) {
    const int p = static_cast<int>(samples.size());
    if (!is_power_of_two(p) || p < 2 * cutoff + 2) {
        throw Error(ErrorKind::TooFewSamples,
                    "need a power-of-two sample count >= 2M+2 = " + std::to_string(2 * cutoff + 2) +
                        ", got " + std::to_string(p));
    }
    const std::vector<cplx> spec = dft_forward(samples);
    CoefficientResult out{ComponentFunction(component, sign, cutoff), 0.0, 0.0};
    double total = 0.0;
    for (int i = 0; i < p; ++i) total += std::norm(spec[static_cast<size_t>(i)]);
    double kept = 0.0;
    for (int k = -cutoff - 1; k <= cutoff; ++k) {
        const cplx v = spec[static_cast<size_t>((k + p) % p)];
        out.function.mode_ref(k) = v;
        kept += std::norm(v);
    }
    out.norm = std::sqrt(total);
    out.aliasing = std::sqrt(std::max(0.0, total - kept));
    return out;
}

void check_aliasing(const CoefficientResult& r) {
    if (r.relative_aliasing() > kAliasingError) {
        throw Error(ErrorKind::Aliasing, "boundary function not resolved at cutoff " +
                                             std::to_string(r.function.cutoff()) +
                                             " (relative aliasing " +
                                             std::to_string(r.relative_aliasing()) + ")");
    }
}

ComponentFunction project(const ComponentFunction& c, Side side) {
    ComponentFunction r(c.component(), c.sign(), c.cutoff());
    const double s = (side == Side::Out ? 1.0 : -1.0) * c.sign();
    for (int k = c.min_mode(); k <= c.max_mode(); ++k) {
        r.mode_ref(k) = 0.5 * (c.mode(k) + s * std::conj(c.mode(-1 - k)));
    }
    return r;
}

ComponentFunction j_flip(const ComponentFunction& c) {
    ComponentFunction r(c.component(), c.sign(), c.cutoff());
    for (int k = c.min_mode(); k <= c.max_mode(); ++k) r.mode_ref(k) = std::conj(c.mode(-1 - k));
    return r;
}

ComponentFunction f_part(const ComponentFunction& c, Half half) {
    ComponentFunction r(c.component(), c.sign(), c.cutoff());
    for (int k = c.min_mode(); k <= c.max_mode(); ++k) {
        if ((k >= 0) == (half == Half::Plus)) r.mode_ref(k) = c.mode(k);
    }
    return r;
}

double real_dot(const ComponentFunction& a, const ComponentFunction& b) {
    double s = 0.0;
    const int lo = std::min(a.min_mode(), b.min_mode());
    const int hi = std::max(a.max_mode(), b.max_mode());
    for (int k = lo; k <= hi; ++k) {
        const cplx x = a.mode(k), y = b.mode(k);
        s += x.real() * y.real() + x.imag() * y.imag();
    }
    return s;
}

double membership_residual(const ComponentFunction& c, Side space) {
    return project(c, space == Side::In ? Side::Out : Side::In).norm();
}

Matrix projection_matrix(int cutoff, int sign, Side side) {
    const int n = 2 * cutoff + 2;
    Matrix p = Matrix::Zero(2 * n, 2 * n);
    const double s = (side == Side::Out ? 1.0 : -1.0) * sign;
    for (int k = -cutoff - 1; k <= cutoff; ++k) {
        const int row = 2 * (k + cutoff + 1);
        const int col = 2 * (-1 - k + cutoff + 1);
        p(row, row) += 0.5;
        p(row + 1, row + 1) += 0.5;
        // conj: (x, y) -> (x, -y)
        p(row, col) += 0.5 * s;
        p(row + 1, col + 1) -= 0.5 * s;
    }
    return p;
}

BoundaryFunction::BoundaryFunction(std::vector<ComponentFunction> parts) : parts_(std::move(parts)) {
    for (const auto& p : parts_) {
        if (p.cutoff() != parts_.front().cutoff()) {
            throw Error(ErrorKind::Validation, "all components must share one mode cutoff");
        }
    }
}

BoundaryFunction BoundaryFunction::zero(const CircleDomain& domain, int cutoff) {
    std::vector<ComponentFunction> parts;
    for (int j = 0; j < domain.components(); ++j) parts.emplace_back(j, domain.sign(j), cutoff);
    return BoundaryFunction(std::move(parts));
}

double BoundaryFunction::norm() const {
    double s = 0.0;
    for (const auto& p : parts_) s += p.norm() * p.norm();
    return std::sqrt(s);
}

BoundaryFunction BoundaryFunction::with_cutoff(int cutoff) const {
    std::vector<ComponentFunction> parts;
    for (const auto& p : parts_) parts.push_back(p.with_cutoff(cutoff));
    return BoundaryFunction(std::move(parts));
}

Vector BoundaryFunction::to_real() const {
    Eigen::Index total = 0;
    for (const auto& p : parts_) total += 2 * static_cast<Eigen::Index>(p.size());
    Vector v(total);
    Eigen::Index off = 0;
    for (const auto& p : parts_) {
        const Vector r = p.to_real();
        v.segment(off, r.size()) = r;
        off += r.size();
    }
    return v;
}

BoundaryFunction BoundaryFunction::from_real(const CircleDomain& domain, int cutoff,
                                             const Vector& v) {
    const Eigen::Index block = 2 * (2 * cutoff + 2);
    if (v.size() != block * domain.components()) {
        throw Error(ErrorKind::Validation, "boundary vector has the wrong length");
    }
    std::vector<ComponentFunction> parts;
    for (int j = 0; j < domain.components(); ++j) {
        parts.push_back(ComponentFunction::from_real(j, domain.sign(j), cutoff,
                                                     v.segment(j * block, block)));
    }
    return BoundaryFunction(std::move(parts));
}

BoundaryFunction project(const BoundaryFunction& f, Side side) {
    std::vector<ComponentFunction> parts;
    for (const auto& p : f.parts()) parts.push_back(project(p, side));
    return BoundaryFunction(std::move(parts));
}

BoundaryFunction operator-(const BoundaryFunction& a, const BoundaryFunction& b) {
    std::vector<ComponentFunction> parts;
    for (int j = 0; j < a.components(); ++j) parts.push_back(a[j] - b[j]);
    return BoundaryFunction(std::move(parts));
}

BoundaryFunction operator+(const BoundaryFunction& a, const BoundaryFunction& b) {
    std::vector<ComponentFunction> parts;
    for (int j = 0; j < a.components(); ++j) parts.push_back(a[j] + b[j]);
    return BoundaryFunction(std::move(parts));
}

}  // namespace hardy
