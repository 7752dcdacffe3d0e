#pragma once

#include <Eigen/Dense>
#include <complex>

namespace mmwsim {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Singular values below kRankCutoff * s_max are treated as zero when deciding
// numerical rank (pseudo-inverse support, projection bases).
inline constexpr double kRankCutoff = 1e-12;

// Thin SVD a = u * diag(s) * v^H, singular values sorted descending.
struct SvdResult {
    CMatrix u;   // rows(a) x p, orthonormal columns
    RVector s;   // p, descending, non-negative
    CMatrix v;   // cols(a) x p, orthonormal columns
};

SvdResult svd(const CMatrix& a);

// Number of singular values above kRankCutoff relative to the largest one.
int numerical_rank(const RVector& s);

// Moore-Penrose pseudo-inverse via SVD with the relative rank cutoff.
CMatrix pseudo_inverse(const CMatrix& a);

// Removes from every column of b its component inside span(columns of x).
// x with zero columns returns b unchanged.
CMatrix project_out(const CMatrix& b, const CMatrix& x);

// Snaps an angle to the nearest element of {2*pi*q/n_q : q = 0..n_q-1}
// (comparison modulo 2*pi, ties toward the smaller index q).
// Result lies in [0, 2*pi).
double quantize_phase(double theta, int n_q);

}  // namespace mmwsim
