#include "mmwsim/metrics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mmwsim/errors.hpp"

namespace mmwsim {

namespace {

void check_metric_inputs(const std::vector<ChannelRealization>& channels,
                         const BeamformerSet& bf, double p_t, double sigma2) {
    if (channels.empty()) throw ConfigError("metrics: empty channel set");
    if (channels.size() != bf.users.size())
        throw ConfigError("metrics: channel count and beamformer count differ");
    if (!(p_t > 0.0)) throw ConfigError("metrics: transmit power must be positive");
    if (!(sigma2 > 0.0)) throw ConfigError("metrics: noise variance must be positive");
    const Eigen::Index n_t = channels.front().h.cols();
    const Eigen::Index n_r = channels.front().h.rows();
    const Eigen::Index m = bf.users.front().q.cols();
    for (std::size_t k = 0; k < channels.size(); ++k) {
        const auto& u = bf.users[k];
        if (u.q.rows() != n_t || u.d.rows() != n_r || u.q.cols() != m || u.d.cols() != m)
            throw ConfigError("metrics: beamformer dimensions mismatch for user " +
                              std::to_string(k));
    }
}

}  // namespace

CMatrix disturbance_covariance(int k, const std::vector<ChannelRealization>& channels,
                               const BeamformerSet& bf, double p_t, double sigma2) {
    check_metric_inputs(channels, bf, p_t, sigma2);
    if (k < 0 || static_cast<std::size_t>(k) >= channels.size())
        throw ConfigError("disturbance_covariance: user index out of range");
    const CMatrix& d = bf.users[k].d;
    const RVector sv = svd(d).s;
    if (numerical_rank(sv) < d.cols())
        throw MetricsError("disturbance_covariance: combiner of user " + std::to_string(k) +
                           " is rank-deficient (singular disturbance)");

    const int m = static_cast<int>(d.cols());
    const int k_users = static_cast<int>(channels.size());
    CMatrix r = sigma2 * (d.adjoint() * d);
    const double c = p_t / (static_cast<double>(m) * static_cast<double>(k_users));
    for (int l = 0; l < k_users; ++l) {
        if (l == k) continue;
        const CMatrix a = d.adjoint() * channels[k].h * bf.users[l].q;  // m x m
        r.noalias() += c * (a * a.adjoint());
    }
    // Symmetrize away round-off so downstream factorizations see an exactly
    // Hermitian matrix.
    r = 0.5 * (r + r.adjoint()).eval();
    return r;
}

double ase(const std::vector<ChannelRealization>& channels, const BeamformerSet& bf, double p_t,
           double sigma2) {
    check_metric_inputs(channels, bf, p_t, sigma2);
    const int k_users = static_cast<int>(channels.size());
    const int m = static_cast<int>(bf.users.front().q.cols());
    const double c = p_t / (static_cast<double>(k_users) * static_cast<double>(m));
    double total = 0.0;
    for (int k = 0; k < k_users; ++k) {
        const CMatrix r = disturbance_covariance(k, channels, bf, p_t, sigma2);
        Eigen::LLT<CMatrix> llt(r);
        if (llt.info() != Eigen::Success)
            throw MetricsError("ase: disturbance covariance of user " + std::to_string(k) +
                               " is not positive definite");
        const CMatrix s = bf.users[k].d.adjoint() * channels[k].h * bf.users[k].q;  // m x m
        // log2 det(I + c R^-1 S S^H) = sum_i log2(1 + c * sv_i(L^-1 S)^2).
        const CMatrix w = llt.matrixL().solve(s);
        Eigen::JacobiSVD<CMatrix> sv(w);
        for (Eigen::Index i = 0; i < sv.singularValues().size(); ++i) {
            const double sigma = sv.singularValues()(i);
            total += std::log1p(c * sigma * sigma) / std::numbers::ln2;
        }
    }
    return total;
}

double gee(double ase_bit_s_hz, double bandwidth_hz, double p_t, double p_tx_c, double p_rx_c,
           int k_users, double eta) {
    if (bandwidth_hz <= 0.0) throw ConfigError("gee: bandwidth must be positive");
    if (k_users < 1) throw ConfigError("gee: k_users must be >= 1");
    const double denom = eta * p_t + p_tx_c + static_cast<double>(k_users) * p_rx_c;
    if (!(denom > 0.0)) throw MetricsError("gee: non-positive power denominator");
    return bandwidth_hz * ase_bit_s_hz / denom;
}

}  // namespace mmwsim
