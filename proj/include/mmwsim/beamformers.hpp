#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mmwsim/arch.hpp"
#include "mmwsim/channel.hpp"

namespace mmwsim {

struct UserBeamformer {
    CMatrix q;  // n_t x m precoder, unit-norm columns
    CMatrix d;  // n_r x m combiner
};

// Result of the constant-modulus factorization target ~= rf * bb.
struct HybridFactors {
    CMatrix rf;  // n x n_rf, every entry of modulus 1/sqrt(n)
    CMatrix bb;  // n_rf x cols
    std::vector<double> objective_trace;  // ||target - rf*bb||_F per iteration
};

// Per-user precoders/combiners for one architecture, plus the hardware
// factors needed to audit the structural constraints.
struct BeamformerSet {
    Architecture arch = Architecture::cm_fd;
    std::vector<UserBeamformer> users;
    int n_t_rf = 0;
    int n_r_rf = 0;

    // Set when the analog steering synthesis had to relax the minimum
    // angular-separation rule for at least one user.
    bool separation_relaxed = false;

    // Constrained architectures: shared transmit RF stage and per-user
    // baseband blocks such that users[k].q == tx_rf * tx_bb[k] exactly.
    std::optional<CMatrix> tx_rf;
    std::vector<CMatrix> tx_bb;
    // Per-user receive factors: users[k].d == rx_rf[k] * rx_bb[k].
    std::vector<CMatrix> rx_rf;
    std::vector<CMatrix> rx_bb;

    // Antenna-selection architecture: chosen antenna indices (ascending).
    std::vector<int> tx_selected_rows;
    std::vector<std::vector<int>> rx_selected_rows;
};

// Channel-matched fully digital: per user, the m dominant singular vector
// pairs of the channel matrix.
BeamformerSet cm_fd(const std::vector<ChannelRealization>& channels, int m);

// Partial zero-forcing fully digital: the channel-matched precoder projected
// out of every other user's m-dimensional dominant right singular subspace
// (columns renormalized); combiner = pseudo-inverse of the effective channel,
// stored so that d^H * H * q = I_m.
BeamformerSet pzf_fd(const std::vector<ChannelRealization>& channels, int m);

// Block-coordinate descent for target ~= rf * bb with |rf_ij| = 1/sqrt(n):
// alternates the least-squares baseband update bb = pinv(rf)*target with an
// exact cyclic per-entry phase update of rf. The objective trace is monotone
// non-increasing; terminates at max_iters or when the relative objective
// decrease falls below rel_tol.
HybridFactors hybrid_factorize(const CMatrix& target, int n_rf, int max_iters, double rel_tol);

// Hybrid approximation of the partial zero-forcing design: the k stacked
// precoders are factorized jointly with n_t_rf = k*m transmit chains; each
// combiner is factorized per user with n_r_rf = m chains.
BeamformerSet pzf_hy(const std::vector<ChannelRealization>& channels, int m, int n_t_rf,
                     int n_r_rf, int max_iters, double rel_tol);

// Fully analog beam steering: per user, greedily pick the m strongest paths
// whose departure AND arrival angles are at least min_sep_deg away from every
// previously selected path; columns are the corresponding steering vectors.
// If the separation rule exhausts the candidates, the strongest remaining
// paths are admitted and the set is flagged.
BeamformerSet analog_an(const std::vector<ChannelRealization>& channels, int m,
                        double min_sep_deg);

// One-shot factorization with phases snapped to the n_q grid:
// rf_ij = (1/sqrt(n))*exp(j*quantize_phase(arg(target_ij), n_q)),
// bb = pinv(rf)*target. rf has the same column count as target.
std::pair<CMatrix, CMatrix> phase_quantized_factors(const CMatrix& target, int n_q);

// Indices (ascending) of the n_select rows of t with largest Euclidean norm;
// ties broken toward the lower row index.
std::vector<int> top_rows_by_norm(const CMatrix& t, int n_select);

// Switches + fixed phase shifters: RF stage entries are the quantized phases
// of the approximation target (stacked precoders at the transmitter, per-user
// combiners at the receiver); baseband stage is the least-squares fit.
BeamformerSet sw_phsh(const std::vector<ChannelRealization>& channels, int m, int n_q,
                      Architecture target_arch = Architecture::pzf_fd);

// Pure antenna selection: keep the k*m (transmit) / m (receive) rows of the
// approximation target with largest row norm, zero the rest.
BeamformerSet sw_select(const std::vector<ChannelRealization>& channels, int m,
                        Architecture target_arch = Architecture::pzf_fd);

// The stacked n_t x (k*m) matrix of all per-user precoders.
CMatrix stack_precoders(const BeamformerSet& bf);

}  // namespace mmwsim
