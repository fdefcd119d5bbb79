#include "hardy/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <unsupported/Eigen/FFT>

namespace hardy {

std::vector<cplx> dft_forward(std::span<const cplx> samples) {
    Eigen::FFT<double> fft;
    std::vector<cplx> in(samples.begin(), samples.end());
    std::vector<cplx> out;
    fft.fwd(out, in);
    const double scale = 1.0 / static_cast<double>(in.size());
    for (cplx& v : out) v *= scale;
    return out;
}

std::vector<cplx> dft_inverse(std::span<const cplx> coeffs) {
    Eigen::FFT<double> fft;
    std::vector<cplx> in(coeffs.begin(), coeffs.end());
    std::vector<cplx> out;
    // Eigen's inverse includes the 1/P factor; undo it.
    fft.inv(out, in);
    const double scale = static_cast<double>(in.size());
    for (cplx& v : out) v *= scale;
    return out;
}

CMatrix dft_forward_columns(const CMatrix& samples) {
    Eigen::FFT<double> fft;
    const Eigen::Index p = samples.rows();
    CMatrix out(p, samples.cols());
    std::vector<cplx> in(static_cast<size_t>(p)), res;
    for (Eigen::Index col = 0; col < samples.cols(); ++col) {
        for (Eigen::Index i = 0; i < p; ++i) in[static_cast<size_t>(i)] = samples(i, col);
        fft.fwd(res, in);
        for (Eigen::Index i = 0; i < p; ++i) out(i, col) = res[static_cast<size_t>(i)];
    }
    return out / static_cast<double>(p);
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

int next_power_of_two(int n) {
    int p = 1;
    while (p < n) p <<= 1;
    return p;
}

Matrix realify(const CMatrix& a) {
    Matrix r(2 * a.rows(), 2 * a.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index k = 0; k < a.cols(); ++k) {
            const cplx v = a(i, k);
            r(2 * i, 2 * k) = v.real();
            r(2 * i, 2 * k + 1) = -v.imag();
            r(2 * i + 1, 2 * k) = v.imag();
            r(2 * i + 1, 2 * k + 1) = v.real();
        }
    }
    return r;
}

Vector interleave(const CVector& v) {
    Vector r(2 * v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        r(2 * i) = v(i).real();
        r(2 * i + 1) = v(i).imag();
    }
    return r;
}

CVector deinterleave(const Vector& v) {
    CVector r(v.size() / 2);
    for (Eigen::Index i = 0; i < r.size(); ++i) r(i) = cplx(v(2 * i), v(2 * i + 1));
    return r;
}

double inverse_condition(const Matrix& a) {
    if (a.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(a);
    const auto& s = svd.singularValues();
    if (s(0) == 0.0) return 0.0;
    return s(s.size() - 1) / s(0);
}

double min_symmetric_eigenvalue(const Matrix& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (a + a.transpose()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
    const int workers = std::min(std::max(threads, 1), count);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace hardy
