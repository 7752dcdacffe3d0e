#include "mmwsim/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "mmwsim/errors.hpp"
#include "mmwsim/power.hpp"

namespace mmwsim {

namespace {

std::string sanitize_flag_text(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return s;
}

struct MeanStderr {
    double mean = 0.0;
    double se = 0.0;
};

// Two-pass mean / standard error; a constant sample has exactly zero spread
// (the textbook one-pass formula leaks rounding noise into the stderr rows).
MeanStderr summarize(const std::vector<double>& xs) {
    MeanStderr out;
    const int n = static_cast<int>(xs.size());
    double lo = xs.front(), hi = xs.front();
    double sum = 0.0;
    for (double x : xs) {
        sum += x;
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    out.mean = sum / n;
    if (n < 2 || lo == hi) return out;
    double sq = 0.0;
    for (double x : xs) sq += (x - out.mean) * (x - out.mean);
    out.se = std::sqrt(sq / (n - 1) / n);
    return out;
}

}  // namespace

std::string format_g9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::vector<SweepPoint> enumerate_sweep_points(const SimConfig& cfg) {
    std::vector<SweepPoint> points;
    points.reserve(cfg.m_streams.size() * cfg.n_t_list.size() * cfg.n_r_list.size());
    int index = 0;
    for (int m : cfg.m_streams)
        for (int n_t : cfg.n_t_list)
            for (int n_r : cfg.n_r_list) points.push_back({index++, m, n_t, n_r});
    return points;
}

std::vector<ChannelRealization> draw_drop_channels(const SimConfig& cfg, const SweepPoint& point,
                                                   int drop_index) {
    ChannelParams params = cfg.channel;
    params.n_t = point.n_t;
    params.n_r = point.n_r;
    Rng rng(mix_seed(cfg.base_seed, static_cast<std::uint64_t>(point.index),
                     static_cast<std::uint64_t>(drop_index)));
    return draw_user_channels(params, cfg.k_users, rng);
}

BeamformerSet synthesize(Architecture a, const std::vector<ChannelRealization>& channels, int m,
                         const SimConfig& cfg) {
    switch (a) {
        case Architecture::cm_fd: return cm_fd(channels, m);
        case Architecture::pzf_fd: return pzf_fd(channels, m);
        case Architecture::pzf_hy:
            return pzf_hy(channels, m, cfg.k_users * m, m, cfg.bcd_max_iters, cfg.bcd_rel_tol);
        case Architecture::an: return analog_an(channels, m, cfg.an_min_sep_deg);
        case Architecture::sw_phsh: return sw_phsh(channels, m, cfg.n_q, cfg.approx_target);
        case Architecture::sw: return sw_select(channels, m, cfg.approx_target);
    }
    throw ConfigError("unknown architecture tag value");
}

std::vector<MetricSample> run_drop(const SimConfig& cfg, const SweepPoint& point,
                                   int drop_index) {
    const std::vector<ChannelRealization> channels = draw_drop_channels(cfg, point, drop_index);
    const double sigma2 =
        noise_variance(cfg.noise_figure_db, cfg.noise_density_dbm_hz, cfg.bandwidth_hz);
    const double p_t = std::pow(10.0, cfg.p_t_dbw / 10.0);

    std::vector<MetricSample> out;
    out.reserve(cfg.architectures.size());
    for (Architecture a : cfg.architectures) {
        MetricSample s;
        s.arch = a;
        s.n_t = point.n_t;
        s.n_r = point.n_r;
        s.k = cfg.k_users;
        s.m = point.m;
        s.p_t_dbw = cfg.p_t_dbw;
        s.drop = drop_index;
        // Circuit power depends only on the architecture and dimensions, so
        // it is reported even when synthesis fails on this drop.
        const RfChainCounts rf = rf_chain_counts(a, point.n_t, point.n_r, cfg.k_users, point.m);
        s.p_txc_w = tx_circuit_power(a, point.n_t, rf.tx, cfg.n_q, cfg.power);
        s.p_rxc_w = rx_circuit_power(a, point.n_r, rf.rx, cfg.n_q, cfg.power);
        try {
            const BeamformerSet bf = synthesize(a, channels, point.m, cfg);
            s.ase_bit_s_hz = ase(channels, bf, p_t, sigma2);
            s.gee_bit_per_joule = gee(s.ase_bit_s_hz, cfg.bandwidth_hz, p_t, s.p_txc_w,
                                      s.p_rxc_w, cfg.k_users, cfg.power.eta);
            if (bf.separation_relaxed) s.flags = "an-fallback";
        } catch (const ConfigError&) {
            throw;  // malformed setup is not a per-drop condition
        } catch (const SimError& e) {
            s.ase_bit_s_hz = 0.0;
            s.gee_bit_per_joule = 0.0;
            s.flags = "error:" + sanitize_flag_text(e.what());
        }
        out.push_back(std::move(s));
    }
    return out;
}

ResultTable run_sweep(const SimConfig& cfg, int threads) {
    validate(cfg);
    const std::vector<SweepPoint> points = enumerate_sweep_points(cfg);
    const int n_jobs = static_cast<int>(points.size()) * cfg.drops;

    std::vector<std::vector<MetricSample>> rows(n_jobs);
    std::atomic<int> next{0};
    std::exception_ptr failure = nullptr;
    std::mutex failure_mx;

    int n_threads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    n_threads = std::clamp(n_threads, 1, std::max(1, n_jobs));

    auto worker = [&] {
        for (;;) {
            const int j = next.fetch_add(1);
            if (j >= n_jobs) return;
            try {
                rows[j] = run_drop(cfg, points[j / cfg.drops], j % cfg.drops);
            } catch (...) {
                std::lock_guard<std::mutex> lk(failure_mx);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    ResultTable table;
    table.metadata.push_back(std::string(kToolName) + " " + kToolVersion);
    table.metadata.push_back("base_seed: " + std::to_string(cfg.base_seed));
    table.metadata.push_back("config: " + config_to_json_text(cfg));

    table.samples.reserve(static_cast<std::size_t>(n_jobs) * cfg.architectures.size());
    for (int j = 0; j < n_jobs; ++j)
        for (MetricSample& s : rows[j]) table.samples.push_back(std::move(s));

    // Per-(point, architecture) aggregates in deterministic order.
    const int n_archs = static_cast<int>(cfg.architectures.size());
    for (std::size_t p = 0; p < points.size(); ++p) {
        for (int a = 0; a < n_archs; ++a) {
            std::vector<double> ase_v, gee_v, ptx_v, prx_v;
            ase_v.reserve(cfg.drops);
            gee_v.reserve(cfg.drops);
            ptx_v.reserve(cfg.drops);
            prx_v.reserve(cfg.drops);
            int flagged = 0;
            for (int drop = 0; drop < cfg.drops; ++drop) {
                const std::size_t row = (p * cfg.drops + drop) * n_archs + a;
                const MetricSample& s = table.samples[row];
                if (!s.flags.empty()) ++flagged;
                ase_v.push_back(s.ase_bit_s_hz);
                gee_v.push_back(s.gee_bit_per_joule);
                ptx_v.push_back(s.p_txc_w);
                prx_v.push_back(s.p_rxc_w);
            }
            const MeanStderr ase_s = summarize(ase_v);
            const MeanStderr gee_s = summarize(gee_v);
            const MeanStderr ptx_s = summarize(ptx_v);
            const MeanStderr prx_s = summarize(prx_v);
            SummaryRow mean;
            mean.arch = cfg.architectures[a];
            mean.n_t = points[p].n_t;
            mean.n_r = points[p].n_r;
            mean.k = cfg.k_users;
            mean.m = points[p].m;
            mean.p_t_dbw = cfg.p_t_dbw;
            mean.kind = "mean";
            mean.ase_bit_s_hz = ase_s.mean;
            mean.gee_bit_per_joule = gee_s.mean;
            mean.p_txc_w = ptx_s.mean;
            mean.p_rxc_w = prx_s.mean;
            mean.flags = "n=" + std::to_string(cfg.drops) +
                         (flagged > 0 ? ";flagged=" + std::to_string(flagged) : "");
            SummaryRow se = mean;
            se.kind = "stderr";
            se.ase_bit_s_hz = ase_s.se;
            se.gee_bit_per_joule = gee_s.se;
            se.p_txc_w = ptx_s.se;
            se.p_rxc_w = prx_s.se;
            table.summaries.push_back(std::move(mean));
            table.summaries.push_back(std::move(se));
        }
    }
    return table;
}

void emit_csv(const ResultTable& table, std::ostream& out) {
    for (const std::string& line : table.metadata) out << "# " << line << "\n";
    out << kCsvHeader << "\n";
    for (const MetricSample& s : table.samples) {
        out << to_string(s.arch) << ',' << s.n_t << ',' << s.n_r << ',' << s.k << ',' << s.m
            << ',' << format_g9(s.p_t_dbw) << ',' << s.drop << ',' << format_g9(s.ase_bit_s_hz)
            << ',' << format_g9(s.p_txc_w) << ',' << format_g9(s.p_rxc_w) << ','
            << format_g9(s.gee_bit_per_joule) << ',' << s.flags << "\n";
    }
    for (const SummaryRow& s : table.summaries) {
        out << to_string(s.arch) << ',' << s.n_t << ',' << s.n_r << ',' << s.k << ',' << s.m
            << ',' << format_g9(s.p_t_dbw) << ',' << s.kind << ',' << format_g9(s.ase_bit_s_hz)
            << ',' << format_g9(s.p_txc_w) << ',' << format_g9(s.p_rxc_w) << ','
            << format_g9(s.gee_bit_per_joule) << ',' << s.flags << "\n";
    }
}

void emit_csv(const ResultTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("emit_csv: cannot open '" + path + "' for writing");
    emit_csv(table, out);
    out.flush();
    if (!out) throw ConfigError("emit_csv: write failure on '" + path + "'");
}

}  // namespace mmwsim
