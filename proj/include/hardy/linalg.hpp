#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace hardy {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Normalized forward DFT: out[k] = (1/P) sum_i in[i] e^{-2 pi i k i / P},
// with k stored modulo P.
std::vector<cplx> dft_forward(std::span<const cplx> samples);
// Inverse of dft_forward: out[i] = sum_k coeffs[k] e^{2 pi i k i / P}.
std::vector<cplx> dft_inverse(std::span<const cplx> coeffs);

// Same transform applied to every column of a P x n matrix.
CMatrix dft_forward_columns(const CMatrix& samples);

bool is_power_of_two(int n);
int next_power_of_two(int n);

// Real 2x2-block form of a complex-linear map on interleaved (Re, Im) pairs.
Matrix realify(const CMatrix& a);

Vector interleave(const CVector& v);
CVector deinterleave(const Vector& v);

// Smallest singular value over largest, with 0 for an empty matrix.
double inverse_condition(const Matrix& a);
double min_symmetric_eigenvalue(const Matrix& a);

// Runs fn(0..count-1) on up to `threads` worker threads.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

}  // namespace hardy
