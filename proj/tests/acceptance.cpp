// Acceptance gate: evaluates the six release criteria end to end and prints
// one verdict line per criterion. Exit code = number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "mmwsim/beamformers.hpp"
#include "mmwsim/harness.hpp"
#include "mmwsim/metrics.hpp"
#include "mmwsim/power.hpp"
#include "mmwsim/validate.hpp"

using namespace mmwsim;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Verdict {
    int id;
    bool ok;
    std::string title;
};

std::vector<Verdict> verdicts;

void record(int id, bool ok, const std::string& title) {
    verdicts.push_back({id, ok, title});
    std::printf("criterion %d: %s — %s\n", id, ok ? "PASS" : "FAIL", title.c_str());
    std::fflush(stdout);
}

void detail(const std::string& line) {
    std::printf("  %s\n", line.c_str());
    std::fflush(stdout);
}

std::string g9(double v) { return format_g9(v); }

struct MeanRow {
    double ase = 0.0;
    double gee = 0.0;
    bool found = false;
};

MeanRow find_mean(const ResultTable& t, Architecture a, int n_t, int n_r) {
    for (const SummaryRow& s : t.summaries)
        if (s.kind == "mean" && s.arch == a && s.n_t == n_t && s.n_r == n_r)
            return {s.ase_bit_s_hz, s.gee_bit_per_joule, true};
    return {};
}

std::vector<ChannelRealization> small_channels(std::uint64_t seed, int k, int n_t, int n_r) {
    ChannelParams p;
    p.n_t = n_t;
    p.n_r = n_r;
    p.n_cl = 2;
    p.n_ray_per_cluster = 4;
    Rng rng(seed);
    return draw_user_channels(p, k, rng);
}

// ---------------------------------------------------------------- criterion 1
void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    std::ostringstream log;
    const ValidationReport report = run_validation(20260825, 1000, &log);
    const double elapsed = seconds_since(t0);
    std::istringstream lines(log.str());
    std::string line;
    while (std::getline(lines, line)) detail(line);
    detail("runtime " + g9(elapsed) + " s (budget 120 s), " + std::to_string(report.checks) +
           " checks, " + std::to_string(report.failures) + " failures");
    record(1, report.ok() && elapsed < 120.0,
           "randomized invariant suite, 1000 instances, under 2 minutes");
}

// ---------------------------------------------------------------- criterion 2
void criterion_2() {
    const double sigma2 = noise_variance(3.0, -174.0, 5e8);
    const double p_t = 1.0;
    int bad_ase = 0;
    double worst_ase = 0.0;
    for (int drop = 0; drop < 100; ++drop) {
        const auto channels = small_channels(9000 + drop, 4, 32, 8);
        for (Architecture a : kAllArchitectures) {
            BeamformerSet bf;
            switch (a) {
                case Architecture::cm_fd: bf = cm_fd(channels, 1); break;
                case Architecture::pzf_fd: bf = pzf_fd(channels, 1); break;
                case Architecture::pzf_hy: bf = pzf_hy(channels, 1, 4, 1, 100, 1e-4); break;
                case Architecture::an: bf = analog_an(channels, 1, 5.0); break;
                case Architecture::sw_phsh: bf = sw_phsh(channels, 1, 8); break;
                case Architecture::sw: bf = sw_select(channels, 1); break;
            }
            double oracle = 0.0;
            for (int k = 0; k < 4; ++k) {
                const Complex s =
                    (bf.users[k].d.adjoint() * channels[k].h * bf.users[k].q)(0, 0);
                double interference = 0.0;
                for (int l = 0; l < 4; ++l) {
                    if (l == k) continue;
                    interference += std::norm(
                        (bf.users[k].d.adjoint() * channels[k].h * bf.users[l].q)(0, 0));
                }
                const double sinr =
                    (p_t / 4.0) * std::norm(s) /
                    (sigma2 * bf.users[k].d.squaredNorm() + (p_t / 4.0) * interference);
                oracle += std::log2(1.0 + sinr);
            }
            const double got = ase(channels, bf, p_t, sigma2);
            const double err = std::abs(got - oracle) / std::max(1.0, std::abs(oracle));
            worst_ase = std::max(worst_ase, err);
            if (err > 1e-9) ++bad_ase;
        }
    }
    detail("single-stream rate oracle: worst relative deviation " + g9(worst_ase) + " over 600 "
           "architecture evaluations");

    int bad_sw = 0;
    double worst_sw = 0.0;
    for (int inst = 0; inst < 50; ++inst) {
        const auto channels = small_channels(500 + inst, 2, 8, 4);
        const BeamformerSet sw = sw_select(channels, 1);
        const BeamformerSet target_set = pzf_fd(channels, 1);
        const CMatrix target = stack_precoders(target_set);
        double selected = 0.0;
        for (int r : sw.tx_selected_rows) selected += target.row(r).squaredNorm();
        double best = -1.0;
        for (int a = 0; a < 8; ++a)
            for (int b = a + 1; b < 8; ++b)
                best = std::max(best,
                                target.row(a).squaredNorm() + target.row(b).squaredNorm());
        const double err = std::abs(selected - best) / std::max(1e-12, best);
        worst_sw = std::max(worst_sw, err);
        if (err > 1e-9) ++bad_sw;
    }
    detail("row-selection subset oracle: worst relative objective gap " + g9(worst_sw) +
           " over 50 instances");
    record(2, bad_ase == 0 && bad_sw == 0,
           "single-stream rate formula within 1e-9; row selection matches exhaustive oracle");
}

// ---------------------------------------------------------------- criterion 3
void criterion_3() {
    const PowerConstants c;
    struct Golden {
        const char* what;
        double got;
        double want;
    };
    const Golden cases[] = {
        {"tx fully-digital n_t=100", tx_circuit_power(Architecture::cm_fd, 100, 100, 8, c),
         16.843},
        {"tx hybrid n_t=100 n_rf=10", tx_circuit_power(Architecture::pzf_hy, 100, 10, 8, c),
         33.343},
        {"tx selection n_t=10 n_rf=10", tx_circuit_power(Architecture::sw, 10, 10, 8, c), 1.953},
        {"rx fully-digital n_r=30", rx_circuit_power(Architecture::cm_fd, 30, 30, 8, c), 8.343},
        {"rx analog n_r=30 n_rf=1", rx_circuit_power(Architecture::an, 30, 1, 8, c), 1.050},
        {"rx selection n_r=4 n_rf=1", rx_circuit_power(Architecture::sw, 4, 1, 8, c), 0.518},
    };
    bool ok = true;
    for (const Golden& gcase : cases) {
        const bool match = std::abs(gcase.got - gcase.want) <= 1e-12;
        if (!match) ok = false;
        detail(std::string(gcase.what) + ": " + g9(gcase.got) + " W (want " + g9(gcase.want) +
               " W)" + (match ? "" : "  <-- MISMATCH"));
    }
    record(3, ok, "six hand-computed circuit-power values reproduced exactly");
}

// ---------------------------------------------------------------- criterion 4
SimConfig reference_sweep_config() {
    SimConfig cfg;
    cfg.k_users = 10;
    cfg.m_streams = {1};
    cfg.n_t_list = {25, 50, 100, 150};
    cfg.n_r_list = {30};
    cfg.p_t_dbw = 0.0;
    cfg.drops = 200;
    cfg.base_seed = 1;
    return cfg;
}

void criterion_4() {
    const auto t0 = std::chrono::steady_clock::now();
    const SimConfig cfg = reference_sweep_config();
    const ResultTable table = run_sweep(cfg, 4);
    const double elapsed = seconds_since(t0);

    bool ase_best = true, gee_best = true, sw_worst = true, an_close = true;
    std::ostringstream why;
    for (int n_t : cfg.n_t_list) {
        std::map<Architecture, MeanRow> mean;
        for (Architecture a : kAllArchitectures) mean[a] = find_mean(table, a, n_t, 30);
        detail("n_t=" + std::to_string(n_t) + ": " +
               "ase[cm,pzf,hy,an,sw+ph,sw] = " + g9(mean[Architecture::cm_fd].ase) + ", " +
               g9(mean[Architecture::pzf_fd].ase) + ", " + g9(mean[Architecture::pzf_hy].ase) +
               ", " + g9(mean[Architecture::an].ase) + ", " +
               g9(mean[Architecture::sw_phsh].ase) + ", " + g9(mean[Architecture::sw].ase));
        detail("n_t=" + std::to_string(n_t) + ": " +
               "gee[cm,pzf,hy,an,sw+ph,sw] = " + g9(mean[Architecture::cm_fd].gee) + ", " +
               g9(mean[Architecture::pzf_fd].gee) + ", " + g9(mean[Architecture::pzf_hy].gee) +
               ", " + g9(mean[Architecture::an].gee) + ", " +
               g9(mean[Architecture::sw_phsh].gee) + ", " + g9(mean[Architecture::sw].gee));
        for (Architecture a : kAllArchitectures) {
            if (a == Architecture::pzf_fd) continue;
            if (n_t <= 100 && mean[a].ase >= mean[Architecture::pzf_fd].ase) {
                ase_best = false;
                why << " [4a-ase n_t=" << n_t << ": " << to_string(a) << " wins]";
            }
            if (n_t <= 100 && mean[a].gee >= mean[Architecture::pzf_fd].gee) {
                gee_best = false;
                why << " [4a-gee n_t=" << n_t << ": " << to_string(a) << " wins]";
            }
            if (a != Architecture::sw && mean[a].ase <= mean[Architecture::sw].ase) {
                sw_worst = false;
                why << " [4b n_t=" << n_t << ": " << to_string(a) << " below sw]";
            }
        }
        if (n_t >= 100) {
            const double cm = mean[Architecture::cm_fd].ase;
            const double an = mean[Architecture::an].ase;
            if (std::abs(an - cm) > 0.25 * cm) {
                an_close = false;
                why << " [4c n_t=" << n_t << ": |an-cm|/cm = " << g9(std::abs(an - cm) / cm)
                    << "]";
            }
        }
    }
    detail(std::string("4a spectral efficiency leader: ") + (ase_best ? "ok" : "violated"));
    detail(std::string("4a energy efficiency leader: ") + (gee_best ? "ok" : "violated"));
    detail(std::string("4b selection architecture lowest rate: ") +
           (sw_worst ? "ok" : "violated"));
    detail(std::string("4c steering within 25% of channel-matched at n_t>=100: ") +
           (an_close ? "ok" : "violated"));
    if (!why.str().empty()) detail("violations:" + why.str());
    detail("runtime " + g9(elapsed) + " s (budget 1800 s, 4 threads)");
    record(4, ase_best && gee_best && sw_worst && an_close && elapsed < 1800.0,
           "reference-scale ordering claims over 200 drops");
}

// ---------------------------------------------------------------- criterion 5
bool shrinking_gap(const SimConfig& cfg, Architecture other, bool sweep_n_t,
                   const std::string& label) {
    const ResultTable table = run_sweep(cfg, 4);
    const std::vector<int>& axis = sweep_n_t ? cfg.n_t_list : cfg.n_r_list;
    std::vector<double> gaps;
    std::ostringstream text;
    for (int v : axis) {
        const int n_t = sweep_n_t ? v : cfg.n_t_list.front();
        const int n_r = sweep_n_t ? cfg.n_r_list.front() : v;
        const MeanRow ref = find_mean(table, Architecture::pzf_fd, n_t, n_r);
        const MeanRow alt = find_mean(table, other, n_t, n_r);
        gaps.push_back(ref.gee - alt.gee);
        text << (text.str().empty() ? "" : ", ") << g9(gaps.back());
    }
    bool shrinking = true;
    for (std::size_t i = 1; i < gaps.size(); ++i)
        if (!(gaps[i] < gaps[i - 1])) shrinking = false;
    detail(label + " signed efficiency gap (reference minus alternative): " + text.str() +
           (shrinking ? "  (strictly decreasing)" : "  (NOT decreasing)"));
    return shrinking;
}

void criterion_5() {
    SimConfig cfg_a = reference_sweep_config();
    cfg_a.architectures = {Architecture::pzf_fd, Architecture::sw_phsh};
    cfg_a.n_t_list = {50, 100, 200, 400};
    const bool a_ok = shrinking_gap(cfg_a, Architecture::sw_phsh, true,
                                    "quantized-phase vs reference across n_t {50..400}");

    SimConfig cfg_b = reference_sweep_config();
    cfg_b.architectures = {Architecture::pzf_fd, Architecture::an};
    cfg_b.n_t_list = {100};
    cfg_b.n_r_list = {10, 30, 60, 120};
    const bool b_ok = shrinking_gap(cfg_b, Architecture::an, false,
                                    "analog steering vs reference across n_r {10..120}");
    record(5, a_ok && b_ok, "energy-efficiency gaps shrink monotonically along both axes");
}

// ---------------------------------------------------------------- criterion 6
void criterion_6() {
    SimConfig cfg;
    cfg.k_users = 10;
    cfg.m_streams = {1, 3};
    cfg.n_t_list = {25, 50};
    cfg.n_r_list = {30};
    cfg.drops = 5;
    std::ostringstream serial, parallel;
    emit_csv(run_sweep(cfg, 1), serial);
    emit_csv(run_sweep(cfg, 4), parallel);
    const bool equal = serial.str() == parallel.str() && !serial.str().empty();
    detail("csv bytes: " + std::to_string(serial.str().size()) + " (1 thread) vs " +
           std::to_string(parallel.str().size()) + " (4 threads)");
    record(6, equal, "byte-identical sweep output across thread counts");
}

}  // namespace

int main() {
    std::printf("%s %s acceptance gate\n", kToolName, kToolVersion);
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    int failed = 0;
    for (const Verdict& v : verdicts)
        if (!v.ok) ++failed;
    std::printf("acceptance: %zu/%zu criteria passed\n", verdicts.size() - failed,
                verdicts.size());
    return failed;
}
