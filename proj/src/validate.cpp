#include "mmwsim/validate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>

#include "mmwsim/beamformers.hpp"
#include "mmwsim/errors.hpp"
#include "mmwsim/metrics.hpp"
#include "mmwsim/power.hpp"

namespace mmwsim {

namespace {

struct FamilyStats {
    int checks = 0;
    int failures = 0;
    std::string first_failure;
};

class Recorder {
public:
    void record(const std::string& family, bool pass, const std::string& detail) {
        FamilyStats& fs = stats_[family];
        ++fs.checks;
        if (!pass) {
            ++fs.failures;
            if (fs.first_failure.empty()) fs.first_failure = detail;
        }
    }

    void finish(ValidationReport& report, std::ostream* log) const {
        for (const auto& [family, fs] : stats_) {
            report.checks += fs.checks;
            report.failures += fs.failures;
            std::ostringstream line;
            if (fs.failures == 0) {
                line << "ok    " << family << " (" << fs.checks << " checks)";
            } else {
                line << "FAIL  " << family << " (" << fs.failures << "/" << fs.checks
                     << " failed): " << fs.first_failure;
            }
            report.lines.push_back(line.str());
            if (log != nullptr) *log << report.lines.back() << "\n";
        }
    }

private:
    std::map<std::string, FamilyStats> stats_;
};

CMatrix random_matrix(Rng& rng, int rows, int cols) {
    CMatrix a(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) a(i, j) = rng.complex_gaussian();
    return a;
}

double grid_distance(double theta, double grid_point) {
    const double two_pi = 2.0 * kPi;
    double d = std::fmod(std::abs(theta - grid_point), two_pi);
    return std::min(d, two_pi - d);
}

}  // namespace

ValidationReport run_validation(std::uint64_t seed, int instances, std::ostream* log) {
    ValidationReport report;
    report.instances = std::max(0, instances);
    Recorder rec;

    for (int inst = 0; inst < instances; ++inst) {
        Rng rng(mix_seed(seed, 0x5EEDu, static_cast<std::uint64_t>(inst)));
        std::ostringstream tag;
        tag << "instance " << inst;

        // --- Moore-Penrose identities (rank-deficient half the time) ------
        {
            const int rows = 2 + static_cast<int>(rng.uniform() * 9.0);
            const int cols = 2 + static_cast<int>(rng.uniform() * 9.0);
            CMatrix a;
            if (rng.uniform() < 0.5) {
                const int r = 1 + static_cast<int>(rng.uniform() * std::min(rows, cols));
                a = random_matrix(rng, rows, r) * random_matrix(rng, r, cols);
            } else {
                a = random_matrix(rng, rows, cols);
            }
            const CMatrix p = pseudo_inverse(a);
            const double na = a.norm();
            const double np = p.norm();
            const bool ok = ((a * p * a - a).norm() <= 1e-8 * std::max(1.0, na)) &&
                            ((p * a * p - p).norm() <= 1e-8 * std::max(1.0, np)) &&
                            ((a * p - (a * p).adjoint()).norm() <= 1e-8 * std::max(1.0, na * np)) &&
                            ((p * a - (p * a).adjoint()).norm() <= 1e-8 * std::max(1.0, na * np));
            rec.record("moore-penrose identities", ok, tag.str());
        }

        // --- SVD reconstruction + orthonormality --------------------------
        {
            const int rows = 2 + static_cast<int>(rng.uniform() * 15.0);
            const int cols = 2 + static_cast<int>(rng.uniform() * 15.0);
            const CMatrix a = random_matrix(rng, rows, cols);
            const SvdResult d = svd(a);
            const bool recon =
                (a - d.u * d.s.asDiagonal() * d.v.adjoint()).norm() <= 1e-9 * a.norm();
            const Eigen::Index p = d.s.size();
            const bool ortho =
                (d.u.adjoint() * d.u - CMatrix::Identity(p, p)).norm() <= 1e-9 * p &&
                (d.v.adjoint() * d.v - CMatrix::Identity(p, p)).norm() <= 1e-9 * p;
            bool sorted = true;
            for (Eigen::Index i = 1; i < p; ++i)
                if (d.s(i) > d.s(i - 1)) sorted = false;
            rec.record("svd reconstruction", recon && ortho && sorted, tag.str());
        }

        // --- Phase quantization -------------------------------------------
        {
            const int n_q = 2 + static_cast<int>(rng.uniform() * 15.0);
            const double theta = rng.uniform(-20.0, 20.0);
            const double out = quantize_phase(theta, n_q);
            const double step = 2.0 * kPi / n_q;
            // Grid membership and the half-step bound.
            const double snapped = std::round(out / step) * step;
            bool ok = std::abs(out - snapped) <= 1e-12 && out >= 0.0 && out < 2.0 * kPi;
            ok = ok && grid_distance(theta, out) <= 0.5 * step + 1e-12;
            // Brute force: no grid point is strictly closer.
            for (int q = 0; q < n_q; ++q)
                if (grid_distance(theta, q * step) < grid_distance(theta, out) - 1e-12) ok = false;
            rec.record("phase quantization grid", ok, tag.str());
        }

        // --- Random scenario shared by the remaining families -------------
        const int k_users = 1 + static_cast<int>(rng.uniform() * 4.0);
        const int m = 1 + static_cast<int>(rng.uniform() * 2.0);
        ChannelParams params;
        params.n_r = m + 1 + static_cast<int>(rng.uniform() * 4.0);
        params.n_t = k_users * m + 2 + static_cast<int>(rng.uniform() * 12.0);
        params.n_cl = 1 + static_cast<int>(rng.uniform() * 2.0);
        params.n_ray_per_cluster = std::max(m, 2) + static_cast<int>(rng.uniform() * 4.0);
        const double p_t = std::pow(10.0, rng.uniform(-1.0, 1.0));
        const double sigma2 = noise_variance(3.0, -174.0, 5e8);

        std::vector<ChannelRealization> channels;
        try {
            channels = draw_user_channels(params, k_users, rng);
        } catch (const SimError&) {
            rec.record("scenario synthesis", false, tag.str() + " (channel draw failed)");
            continue;
        }

        // Edge-clipped geometries occasionally collapse a channel to rank < m;
        // the only valid synthesis outcome for such a draw is a clean
        // rejection, which the harness would surface as a flagged drop.
        bool degenerate_channel = false;
        for (const ChannelRealization& ch : channels)
            if (numerical_rank(svd(ch.h).s) < m) degenerate_channel = true;

        std::vector<BeamformerSet> sets;
        bool synth_ok = true;
        try {
            sets.push_back(cm_fd(channels, m));
            sets.push_back(pzf_fd(channels, m));
            sets.push_back(pzf_hy(channels, m, k_users * m, m, 25, 1e-6));
            sets.push_back(analog_an(channels, m, 5.0));
            sets.push_back(sw_phsh(channels, m, 8));
            sets.push_back(sw_select(channels, m));
        } catch (const SimError& e) {
            synth_ok = false;
            if (degenerate_channel)
                rec.record("degenerate-scenario rejection", true, tag.str());
            else
                rec.record("scenario synthesis", false, tag.str() + " (" + e.what() + ")");
        }
        if (!synth_ok) continue;
        rec.record("scenario synthesis", true, tag.str());

        // Clipped angles can duplicate steering directions (typically via the
        // analog fallback), which legitimately yields a rank-deficient
        // combiner. Those sets must be rejected by the metrics layer. Nearly
        // parallel columns that survive the rank cutoff make the whitening
        // step numerically fragile without being wrong, so the metric-based
        // families below run on well-conditioned sets only.
        std::vector<bool> rejected(sets.size(), false);
        std::vector<bool> fragile(sets.size(), false);
        for (std::size_t i = 0; i < sets.size(); ++i)
            for (const UserBeamformer& u : sets[i].users) {
                const RVector s = svd(u.d).s;
                if (numerical_rank(s) < u.d.cols())
                    rejected[i] = true;
                else if (s(s.size() - 1) <= 1e-4 * s(0))
                    fragile[i] = true;
            }

        // --- Unit-norm precoder columns ------------------------------------
        {
            bool ok = true;
            for (const BeamformerSet& bf : sets)
                for (const UserBeamformer& u : bf.users)
                    for (Eigen::Index j = 0; j < u.q.cols(); ++j)
                        if (std::abs(u.q.col(j).norm() - 1.0) > 1e-9) ok = false;
            rec.record("unit-norm precoder columns", ok, tag.str());
        }

        // --- RF-stage structure --------------------------------------------
        {
            bool ok = true;
            const double mod_t = 1.0 / std::sqrt(static_cast<double>(params.n_t));
            const double mod_r = 1.0 / std::sqrt(static_cast<double>(params.n_r));
            const BeamformerSet& hy = sets[2];
            for (Eigen::Index j = 0; hy.tx_rf && j < hy.tx_rf->cols(); ++j)
                for (Eigen::Index i = 0; i < hy.tx_rf->rows(); ++i)
                    if (std::abs(std::abs((*hy.tx_rf)(i, j)) - mod_t) > 1e-12) ok = false;
            for (std::size_t k = 0; k < hy.users.size(); ++k) {
                if ((hy.users[k].q - *hy.tx_rf * hy.tx_bb[k]).norm() > 1e-12 * params.n_t)
                    ok = false;
                if ((hy.users[k].d - hy.rx_rf[k] * hy.rx_bb[k]).norm() > 1e-12 * params.n_r)
                    ok = false;
                for (Eigen::Index j = 0; j < hy.rx_rf[k].cols(); ++j)
                    for (Eigen::Index i = 0; i < hy.rx_rf[k].rows(); ++i)
                        if (std::abs(std::abs(hy.rx_rf[k](i, j)) - mod_r) > 1e-12) ok = false;
            }

            const BeamformerSet& sp = sets[4];
            const double step = 2.0 * kPi / 8.0;
            for (Eigen::Index j = 0; sp.tx_rf && j < sp.tx_rf->cols(); ++j)
                for (Eigen::Index i = 0; i < sp.tx_rf->rows(); ++i) {
                    const Complex e = (*sp.tx_rf)(i, j);
                    if (std::abs(std::abs(e) - mod_t) > 1e-12) ok = false;
                    const double ph = std::arg(e);
                    if (grid_distance(ph, std::round(ph / step) * step) > 1e-9) ok = false;
                }

            const BeamformerSet& an = sets[3];
            for (const UserBeamformer& u : an.users)
                for (Eigen::Index j = 0; j < u.q.cols(); ++j)
                    for (Eigen::Index i = 0; i < u.q.rows(); ++i)
                        if (std::abs(std::abs(u.q(i, j)) - mod_t) > 1e-12) ok = false;
            rec.record("rf-stage structure", ok, tag.str());
        }

        // --- Selection-matrix structure -------------------------------------
        {
            bool ok = true;
            const BeamformerSet& sw = sets[5];
            ok = ok && static_cast<int>(sw.tx_selected_rows.size()) == k_users * m;
            // Distinct, ascending antenna indices (S^T S = I).
            for (std::size_t i = 1; i < sw.tx_selected_rows.size(); ++i)
                if (sw.tx_selected_rows[i] <= sw.tx_selected_rows[i - 1]) ok = false;
            for (const UserBeamformer& u : sw.users) {
                int nonzero = 0;
                for (Eigen::Index i = 0; i < u.q.rows(); ++i)
                    if (u.q.row(i).norm() > 0.0) ++nonzero;
                if (nonzero > sw.n_t_rf) ok = false;
            }
            rec.record("selection-matrix structure", ok, tag.str());
        }

        // --- Zero-forcing nulling -------------------------------------------
        {
            bool ok = true;
            const BeamformerSet& zf = sets[1];
            std::vector<CMatrix> dominant;
            dominant.reserve(k_users);
            for (int k = 0; k < k_users; ++k) dominant.push_back(svd(channels[k].h).v.leftCols(m));
            for (int k = 0; k < k_users; ++k)
                for (int l = 0; l < k_users; ++l) {
                    if (l == k) continue;
                    if ((dominant[l].adjoint() * zf.users[k].q).norm() > 1e-8) ok = false;
                }
            rec.record("zero-forcing nulling", ok, tag.str());
        }

        // --- Factorization objective monotonicity ---------------------------
        {
            const CMatrix target = random_matrix(rng, params.n_t, k_users * m);
            const HybridFactors f = hybrid_factorize(target, k_users * m, 25, 0.0);
            bool ok = !f.objective_trace.empty();
            for (std::size_t i = 1; i < f.objective_trace.size(); ++i)
                if (f.objective_trace[i] >
                    f.objective_trace[i - 1] + 1e-10 * std::max(1.0, f.objective_trace[i - 1]))
                    ok = false;
            rec.record("factorization monotonicity", ok, tag.str());
        }

        // --- Covariance Hermitian positive-definite -------------------------
        {
            bool ok = true;
            for (std::size_t i = 0; i < sets.size(); ++i) {
                if (rejected[i]) {
                    bool threw = false;
                    try {
                        for (int k = 0; k < k_users; ++k)
                            disturbance_covariance(k, channels, sets[i], p_t, sigma2);
                    } catch (const MetricsError&) {
                        threw = true;
                    }
                    rec.record("degenerate-combiner rejection", threw, tag.str());
                    continue;
                }
                if (fragile[i]) continue;
                for (int k = 0; k < k_users; ++k) {
                    CMatrix r;
                    try {
                        r = disturbance_covariance(k, channels, sets[i], p_t, sigma2);
                    } catch (const SimError&) {
                        ok = false;
                        break;
                    }
                    if ((r - r.adjoint()).norm() > 1e-12 * std::max(1.0, r.norm())) ok = false;
                    Eigen::SelfAdjointEigenSolver<CMatrix> es(r);
                    if (es.info() != Eigen::Success ||
                        es.eigenvalues().minCoeff() <= -1e-12 * std::max(1.0, r.norm()))
                        ok = false;
                }
            }
            rec.record("covariance hermitian-psd", ok, tag.str());
        }

        // --- Combiner-basis invariance of the spectral efficiency -----------
        {
            bool ok = true;
            std::vector<std::size_t> usable;
            for (std::size_t i = 0; i < sets.size(); ++i)
                if (!rejected[i] && !fragile[i]) usable.push_back(i);
            BeamformerSet bf =
                sets[usable[static_cast<std::size_t>(rng.uniform() * usable.size()) %
                            usable.size()]];
            try {
                const double base = ase(channels, bf, p_t, sigma2);
                // Keep the transform well-conditioned so the comparison stays
                // a statement about the metric, not about round-off.
                CMatrix a;
                do {
                    a = random_matrix(rng, m, m) +
                        2.0 * std::sqrt(static_cast<double>(m)) * CMatrix::Identity(m, m);
                } while (numerical_rank(svd(a).s) < m);
                for (UserBeamformer& u : bf.users) u.d = u.d * a;
                const double transformed = ase(channels, bf, p_t, sigma2);
                if (std::abs(base - transformed) > 1e-8 * std::max(1.0, std::abs(base)))
                    ok = false;
            } catch (const SimError&) {
                ok = false;  // a well-conditioned set must always be measurable
            }
            rec.record("combiner-basis invariance", ok, tag.str());
        }

        // --- Energy-efficiency consistency identity -------------------------
        {
            const BeamformerSet& bf = sets[0];
            const double a = ase(channels, bf, p_t, sigma2);
            const RfChainCounts rf =
                rf_chain_counts(bf.arch, params.n_t, params.n_r, k_users, m);
            PowerConstants pc;
            const double ptx = tx_circuit_power(bf.arch, params.n_t, rf.tx, 8, pc);
            const double prx = rx_circuit_power(bf.arch, params.n_r, rf.rx, 8, pc);
            const double g = gee(a, 5e8, p_t, ptx, prx, k_users, pc.eta);
            const double lhs = g * (pc.eta * p_t + ptx + k_users * prx);
            const double rhs = 5e8 * a;
            rec.record("energy-efficiency identity",
                       std::abs(lhs - rhs) <= 1e-6 * std::max(1.0, std::abs(rhs)), tag.str());
        }
    }

    rec.finish(report, log);
    return report;
}

}  // namespace mmwsim
