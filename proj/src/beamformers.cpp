#include "mmwsim/beamformers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "mmwsim/errors.hpp"

namespace mmwsim {

namespace {

struct Dims {
    int k;
    int n_t;
    int n_r;
};

Dims check_channel_set(const std::vector<ChannelRealization>& channels, int m) {
    if (channels.empty()) throw ConfigError("beamformers: empty channel set");
    if (m < 1) throw ConfigError("beamformers: m must be >= 1");
    const int n_t = channels.front().n_t;
    const int n_r = channels.front().n_r;
    for (const auto& ch : channels) {
        if (ch.n_t != n_t || ch.n_r != n_r || ch.h.rows() != n_r || ch.h.cols() != n_t)
            throw ConfigError("beamformers: inconsistent channel dimensions in set");
    }
    return {static_cast<int>(channels.size()), n_t, n_r};
}

// Renormalizes every column of q to unit norm, applying the same scaling to
// the corresponding column of bb so that q == rf*bb stays exact.
void renormalize_columns(CMatrix& q, CMatrix* bb, Architecture a, int user) {
    for (Eigen::Index j = 0; j < q.cols(); ++j) {
        const double nrm = q.col(j).norm();
        if (nrm < 1e-12)
            throw SynthesisError(std::string(to_string(a)) + ": collapsed precoder column " +
                                 std::to_string(j) + " for user " + std::to_string(user));
        q.col(j) /= nrm;
        if (bb != nullptr) bb->col(j) /= nrm;
    }
}

BeamformerSet synthesize_target(const std::vector<ChannelRealization>& channels, int m,
                                Architecture target_arch) {
    switch (target_arch) {
        case Architecture::cm_fd: return cm_fd(channels, m);
        case Architecture::pzf_fd: return pzf_fd(channels, m);
        default:
            throw ConfigError(std::string("approximation target must be cm-fd or pzf-fd, got ") +
                              to_string(target_arch));
    }
}

}  // namespace

CMatrix stack_precoders(const BeamformerSet& bf) {
    if (bf.users.empty()) throw ConfigError("stack_precoders: empty beamformer set");
    const Eigen::Index n_t = bf.users.front().q.rows();
    const Eigen::Index m = bf.users.front().q.cols();
    CMatrix t(n_t, static_cast<Eigen::Index>(bf.users.size()) * m);
    for (std::size_t k = 0; k < bf.users.size(); ++k)
        t.middleCols(static_cast<Eigen::Index>(k) * m, m) = bf.users[k].q;
    return t;
}

BeamformerSet cm_fd(const std::vector<ChannelRealization>& channels, int m) {
    const Dims dm = check_channel_set(channels, m);
    if (m > std::min(dm.n_t, dm.n_r))
        throw SynthesisError("cm-fd: m=" + std::to_string(m) + " exceeds min(n_t, n_r)=" +
                             std::to_string(std::min(dm.n_t, dm.n_r)));
    if (dm.k * m > dm.n_t)
        throw SynthesisError("cm-fd: k*m=" + std::to_string(dm.k * m) + " exceeds n_t=" +
                             std::to_string(dm.n_t));
    BeamformerSet out;
    out.arch = Architecture::cm_fd;
    out.n_t_rf = dm.n_t;
    out.n_r_rf = dm.n_r;
    out.users.reserve(dm.k);
    for (int k = 0; k < dm.k; ++k) {
        const SvdResult s = svd(channels[k].h);
        if (numerical_rank(s.s) < m)
            throw SynthesisError("cm-fd: channel of user " + std::to_string(k) + " has rank " +
                                 std::to_string(numerical_rank(s.s)) + " < m=" +
                                 std::to_string(m));
        out.users.push_back({s.v.leftCols(m), s.u.leftCols(m)});
    }
    return out;
}

BeamformerSet pzf_fd(const std::vector<ChannelRealization>& channels, int m) {
    const Dims dm = check_channel_set(channels, m);
    if (dm.n_t <= m * dm.k)
        throw SynthesisError("pzf-fd: needs n_t > k*m (" + std::to_string(dm.n_t) +
                             " <= " + std::to_string(dm.k * m) + ")");
    BeamformerSet base = cm_fd(channels, m);
    BeamformerSet out;
    out.arch = Architecture::pzf_fd;
    out.n_t_rf = dm.n_t;
    out.n_r_rf = dm.n_r;
    out.users.reserve(dm.k);
    for (int k = 0; k < dm.k; ++k) {
        CMatrix interferers(dm.n_t, static_cast<Eigen::Index>(m) * (dm.k - 1));
        Eigen::Index col = 0;
        for (int l = 0; l < dm.k; ++l) {
            if (l == k) continue;
            interferers.middleCols(col, m) = base.users[l].q;
            col += m;
        }
        CMatrix q = project_out(base.users[k].q, interferers);
        for (int j = 0; j < m; ++j) {
            const double nrm = q.col(j).norm();
            if (nrm < 1e-10)
                throw SynthesisError("pzf-fd: rank collision, projected column " +
                                     std::to_string(j) + " of user " + std::to_string(k) +
                                     " vanished");
            q.col(j) /= nrm;
        }
        // Combiner from the pseudo-inverse of the effective channel, stored
        // adjoint so that d^H * H * q = I_m.
        const CMatrix d = pseudo_inverse(channels[k].h * q).adjoint();
        out.users.push_back({std::move(q), d});
    }
    return out;
}

HybridFactors hybrid_factorize(const CMatrix& target, int n_rf, int max_iters, double rel_tol) {
    const Eigen::Index n = target.rows();
    const Eigen::Index cols = target.cols();
    if (n == 0 || cols == 0) throw ConfigError("hybrid_factorize: empty target");
    if (n_rf < cols)
        throw ConfigError("hybrid_factorize: n_rf=" + std::to_string(n_rf) +
                          " below target column count " + std::to_string(cols));
    if (max_iters < 1) throw ConfigError("hybrid_factorize: max_iters must be >= 1");
    if (rel_tol < 0.0) throw ConfigError("hybrid_factorize: rel_tol must be >= 0");

    const double mod = 1.0 / std::sqrt(static_cast<double>(n));
    const double target_norm = target.norm();

    // Warm start: RF phases from the target's columns (cycled).
    CMatrix rf(n, n_rf);
    for (int j = 0; j < n_rf; ++j) {
        const auto col = target.col(j % cols);
        for (Eigen::Index i = 0; i < n; ++i) rf(i, j) = std::polar(mod, std::arg(col(i)));
    }

    HybridFactors out;
    out.objective_trace.reserve(max_iters + 1);
    CMatrix bb;
    double prev = std::numeric_limits<double>::infinity();
    for (int it = 0; it < max_iters; ++it) {
        bb = pseudo_inverse(rf) * target;  // exact least-squares baseband step

        // Exact cyclic per-entry phase minimization. With g = bb*bb^H, the
        // objective restricted to entry (i,j) is minimized by the phase of
        // c = (target*bb^H)_ij - rf_i,: g_:,j + rf_ij g_jj.
        const CMatrix g = bb * bb.adjoint();
        const CMatrix tb = target * bb.adjoint();
        for (Eigen::Index i = 0; i < n; ++i) {
            for (int j = 0; j < n_rf; ++j) {
                const Complex c =
                    tb(i, j) - (rf.row(i) * g.col(j)).value() + rf(i, j) * g(j, j);
                if (std::abs(c) > 0.0) rf(i, j) = std::polar(mod, std::arg(c));
            }
        }

        const double obj = (target - rf * bb).norm();
        out.objective_trace.push_back(obj);
        if (obj <= 1e-14 * target_norm) break;
        if (std::isfinite(prev) && prev - obj < rel_tol * prev) break;
        prev = obj;
    }
    out.rf = std::move(rf);
    out.bb = pseudo_inverse(out.rf) * target;  // final baseband refit
    out.objective_trace.push_back((target - out.rf * out.bb).norm());
    return out;
}

BeamformerSet pzf_hy(const std::vector<ChannelRealization>& channels, int m, int n_t_rf,
                     int n_r_rf, int max_iters, double rel_tol) {
    const Dims dm = check_channel_set(channels, m);
    if (n_t_rf != dm.k * m || n_r_rf != m)
        throw ConfigError("pzf-hy: expects n_t_rf = k*m and n_r_rf = m, got " +
                          std::to_string(n_t_rf) + "/" + std::to_string(n_r_rf));
    const BeamformerSet base = pzf_fd(channels, m);

    BeamformerSet out;
    out.arch = Architecture::pzf_hy;
    out.n_t_rf = n_t_rf;
    out.n_r_rf = n_r_rf;

    const CMatrix target = stack_precoders(base);
    HybridFactors tx = hybrid_factorize(target, n_t_rf, max_iters, rel_tol);
    out.tx_rf = tx.rf;
    out.users.reserve(dm.k);
    for (int k = 0; k < dm.k; ++k) {
        CMatrix bb_k = tx.bb.middleCols(static_cast<Eigen::Index>(k) * m, m);
        CMatrix q = tx.rf * bb_k;
        renormalize_columns(q, &bb_k, Architecture::pzf_hy, k);
        HybridFactors rx = hybrid_factorize(base.users[k].d, n_r_rf, max_iters, rel_tol);
        out.users.push_back({std::move(q), rx.rf * rx.bb});
        out.tx_bb.push_back(std::move(bb_k));
        out.rx_rf.push_back(std::move(rx.rf));
        out.rx_bb.push_back(std::move(rx.bb));
    }
    return out;
}

BeamformerSet analog_an(const std::vector<ChannelRealization>& channels, int m,
                        double min_sep_deg) {
    const Dims dm = check_channel_set(channels, m);
    if (min_sep_deg < 0.0) throw ConfigError("an: min_sep_deg must be >= 0");
    const double sep = min_sep_deg * kPi / 180.0;

    BeamformerSet out;
    out.arch = Architecture::an;
    out.n_t_rf = dm.k * m;
    out.n_r_rf = m;
    out.users.reserve(dm.k);
    for (int k = 0; k < dm.k; ++k) {
        const auto& paths = channels[k].geometry.paths;
        if (paths.empty())
            throw SynthesisError("an: user " + std::to_string(k) + " has no paths");
        if (static_cast<int>(paths.size()) < m)
            throw SynthesisError("an: user " + std::to_string(k) + " has only " +
                                 std::to_string(paths.size()) + " paths for m=" +
                                 std::to_string(m) + " streams");

        // Rank by received path strength |gain|^2 * attenuation, strongest
        // first; stable sort keeps the lower path index on ties.
        std::vector<int> order(paths.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            const double sa = std::norm(paths[a].gain) * paths[a].attenuation;
            const double sb = std::norm(paths[b].gain) * paths[b].attenuation;
            return sa > sb;
        });

        std::vector<int> selected;
        selected.reserve(m);
        for (int idx : order) {
            if (static_cast<int>(selected.size()) == m) break;
            bool admissible = true;
            for (int s : selected) {
                if (std::abs(paths[idx].aod - paths[s].aod) < sep ||
                    std::abs(paths[idx].aoa - paths[s].aoa) < sep) {
                    admissible = false;
                    break;
                }
            }
            if (admissible) selected.push_back(idx);
        }
        if (static_cast<int>(selected.size()) < m) {
            // Separation rule exhausted the candidates: admit the strongest
            // remaining paths regardless of separation and flag the set.
            out.separation_relaxed = true;
            for (int idx : order) {
                if (static_cast<int>(selected.size()) == m) break;
                if (std::find(selected.begin(), selected.end(), idx) == selected.end())
                    selected.push_back(idx);
            }
        }

        UserBeamformer u;
        u.q.resize(dm.n_t, m);
        u.d.resize(dm.n_r, m);
        for (int j = 0; j < m; ++j) {
            u.q.col(j) = steering_vector(paths[selected[j]].aod, dm.n_t);
            u.d.col(j) = steering_vector(paths[selected[j]].aoa, dm.n_r);
        }
        out.users.push_back(std::move(u));
    }
    return out;
}

std::pair<CMatrix, CMatrix> phase_quantized_factors(const CMatrix& target, int n_q) {
    if (target.rows() == 0 || target.cols() == 0)
        throw ConfigError("phase_quantized_factors: empty target");
    const Eigen::Index n = target.rows();
    const double mod = 1.0 / std::sqrt(static_cast<double>(n));
    CMatrix rf(n, target.cols());
    for (Eigen::Index j = 0; j < target.cols(); ++j)
        for (Eigen::Index i = 0; i < n; ++i)
            rf(i, j) = std::polar(mod, quantize_phase(std::arg(target(i, j)), n_q));
    CMatrix bb = pseudo_inverse(rf) * target;
    return {std::move(rf), std::move(bb)};
}

std::vector<int> top_rows_by_norm(const CMatrix& t, int n_select) {
    if (n_select < 1 || n_select > t.rows())
        throw ConfigError("top_rows_by_norm: n_select out of range");
    std::vector<int> order(t.rows());
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> norms(t.rows());
    for (Eigen::Index i = 0; i < t.rows(); ++i) norms[i] = t.row(i).squaredNorm();
    // Stable sort: equal row norms keep the lower antenna index first.
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return norms[a] > norms[b]; });
    order.resize(n_select);
    std::sort(order.begin(), order.end());
    return order;
}

BeamformerSet sw_phsh(const std::vector<ChannelRealization>& channels, int m, int n_q,
                      Architecture target_arch) {
    const Dims dm = check_channel_set(channels, m);
    const BeamformerSet base = synthesize_target(channels, m, target_arch);

    BeamformerSet out;
    out.arch = Architecture::sw_phsh;
    out.n_t_rf = dm.k * m;
    out.n_r_rf = m;

    const CMatrix target = stack_precoders(base);
    auto [rf, bb] = phase_quantized_factors(target, n_q);
    out.tx_rf = rf;
    out.users.reserve(dm.k);
    for (int k = 0; k < dm.k; ++k) {
        CMatrix bb_k = bb.middleCols(static_cast<Eigen::Index>(k) * m, m);
        CMatrix q = rf * bb_k;
        renormalize_columns(q, &bb_k, Architecture::sw_phsh, k);
        auto [rrf, rbb] = phase_quantized_factors(base.users[k].d, n_q);
        out.users.push_back({std::move(q), rrf * rbb});
        out.tx_bb.push_back(std::move(bb_k));
        out.rx_rf.push_back(std::move(rrf));
        out.rx_bb.push_back(std::move(rbb));
    }
    return out;
}

BeamformerSet sw_select(const std::vector<ChannelRealization>& channels, int m,
                        Architecture target_arch) {
    const Dims dm = check_channel_set(channels, m);
    if (dm.k * m > dm.n_t)
        throw SynthesisError("sw: k*m=" + std::to_string(dm.k * m) + " exceeds n_t=" +
                             std::to_string(dm.n_t));
    if (m > dm.n_r)
        throw SynthesisError("sw: m=" + std::to_string(m) + " exceeds n_r=" +
                             std::to_string(dm.n_r));
    const BeamformerSet base = synthesize_target(channels, m, target_arch);

    BeamformerSet out;
    out.arch = Architecture::sw;
    out.n_t_rf = dm.k * m;
    out.n_r_rf = m;

    const CMatrix target = stack_precoders(base);
    out.tx_selected_rows = top_rows_by_norm(target, dm.k * m);
    out.users.reserve(dm.k);
    for (int k = 0; k < dm.k; ++k) {
        CMatrix q = CMatrix::Zero(dm.n_t, m);
        for (int row : out.tx_selected_rows)
            q.row(row) = base.users[k].q.row(row);
        renormalize_columns(q, nullptr, Architecture::sw, k);
        std::vector<int> rx_rows = top_rows_by_norm(base.users[k].d, m);
        CMatrix d = CMatrix::Zero(dm.n_r, m);
        for (int row : rx_rows) d.row(row) = base.users[k].d.row(row);
        out.users.push_back({std::move(q), std::move(d)});
        out.rx_selected_rows.push_back(std::move(rx_rows));
    }
    return out;
}

}  // namespace mmwsim
