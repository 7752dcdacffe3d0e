#pragma once

#include <string>
#include <vector>

#include "mmwsim/beamformers.hpp"
#include "mmwsim/channel.hpp"

namespace mmwsim {

// One (architecture, sweep point, drop) record.
struct MetricSample {
    Architecture arch = Architecture::cm_fd;
    int n_t = 0;
    int n_r = 0;
    int k = 0;
    int m = 0;
    double p_t_dbw = 0.0;
    int drop = 0;
    double ase_bit_s_hz = 0.0;
    double p_txc_w = 0.0;
    double p_rxc_w = 0.0;
    double gee_bit_per_joule = 0.0;
    std::string flags;  // "", "an-fallback", or "error:<reason>"
};

// Covariance of noise plus inter-user interference after user k's combiner:
// R = sigma2 * d_k^H d_k + (p_t/(m*k)) * sum_{l != k} d_k^H H_k q_l q_l^H H_k^H d_k.
// Hermitian positive definite for sigma2 > 0 and full-column-rank d_k.
CMatrix disturbance_covariance(int k, const std::vector<ChannelRealization>& channels,
                               const BeamformerSet& bf, double p_t, double sigma2);

// Sum-rate spectral efficiency in bit/s/Hz:
// sum_k log2 det[I_m + (p_t/(k*m)) * R_k^{-1} * d_k^H H_k q_k q_k^H H_k^H d_k],
// evaluated through a Cholesky-whitened singular-value route.
double ase(const std::vector<ChannelRealization>& channels, const BeamformerSet& bf, double p_t,
           double sigma2);

// Global energy efficiency in bit/Joule:
// bandwidth_hz * ase / (eta*p_t + p_tx_c + k_users*p_rx_c).
double gee(double ase_bit_s_hz, double bandwidth_hz, double p_t, double p_tx_c, double p_rx_c,
           int k_users, double eta);

}  // namespace mmwsim
