#include "mmwsim/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mmwsim/errors.hpp"

namespace mmwsim {

namespace {

std::string dims(const CMatrix& a) {
    return std::to_string(a.rows()) + "x" + std::to_string(a.cols());
}

}  // namespace

SvdResult svd(const CMatrix& a) {
    if (a.rows() == 0 || a.cols() == 0)
        throw NumericalError("svd: empty input (" + dims(a) + ")");
    if (!a.allFinite())
        throw NumericalError("svd: non-finite entries in " + dims(a) + " input");
    Eigen::BDCSVD<CMatrix> dec(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (dec.info() != Eigen::Success)
        throw NumericalError("svd: decomposition failed on " + dims(a) + " matrix");
    return {dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

int numerical_rank(const RVector& s) {
    if (s.size() == 0) return 0;
    const double tol = kRankCutoff * s(0);
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > tol) ++r;
    return r;
}

CMatrix pseudo_inverse(const CMatrix& a) {
    const SvdResult d = svd(a);
    const int r = numerical_rank(d.s);
    if (r == 0) return CMatrix::Zero(a.cols(), a.rows());
    RVector inv(r);
    for (int i = 0; i < r; ++i) inv(i) = 1.0 / d.s(i);
    return d.v.leftCols(r) * inv.asDiagonal() * d.u.leftCols(r).adjoint();
}

CMatrix project_out(const CMatrix& b, const CMatrix& x) {
    if (x.cols() == 0 || x.rows() == 0) return b;
    if (x.rows() != b.rows())
        throw ConfigError("project_out: row mismatch, b is " + dims(b) + ", x is " + dims(x));
    const SvdResult d = svd(x);
    const int r = numerical_rank(d.s);
    if (r == 0) return b;
    const CMatrix basis = d.u.leftCols(r);
    return b - basis * (basis.adjoint() * b);
}

double quantize_phase(double theta, int n_q) {
    if (n_q < 2)
        throw ConfigError("quantize_phase: n_q must be >= 2, got " + std::to_string(n_q));
    if (!std::isfinite(theta))
        throw NumericalError("quantize_phase: non-finite angle");
    const double two_pi = 2.0 * kPi;
    double t = std::fmod(theta, two_pi);
    if (t < 0.0) t += two_pi;
    if (t >= two_pi) t = 0.0;
    const double step = two_pi / static_cast<double>(n_q);
    int k = static_cast<int>(t / step);
    k = std::min(k, n_q - 1);
    const double down = t - static_cast<double>(k) * step;      // distance to grid index k
    const double up = static_cast<double>(k + 1) * step - t;    // distance to grid index k+1 (mod n_q)
    int pick;
    if (down < up)
        pick = k;
    else if (up < down)
        pick = (k + 1) % n_q;
    else
        pick = std::min(k, (k + 1) % n_q);
    return static_cast<double>(pick) * step;
}

}  // namespace mmwsim
