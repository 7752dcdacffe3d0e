#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mmwsim/errors.hpp"
#include "mmwsim/harness.hpp"
#include "mmwsim/power.hpp"
#include "mmwsim/validate.hpp"

namespace {

std::vector<std::string> split_tags(const std::string& csv) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : csv) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

int cmd_sweep(const std::string& config_path, const std::string& out_path,
              std::uint64_t seed, bool seed_set, int drops, const std::string& archs,
              int threads) {
    mmwsim::SimConfig cfg =
        config_path.empty() ? mmwsim::SimConfig{} : mmwsim::load_config(config_path);
    if (seed_set) cfg.base_seed = seed;
    if (drops > 0) cfg.drops = drops;
    if (!archs.empty()) {
        cfg.architectures.clear();
        for (const std::string& tag : split_tags(archs))
            cfg.architectures.push_back(mmwsim::architecture_from_string(tag));
    }
    if (!out_path.empty()) cfg.output_path = out_path;
    mmwsim::validate(cfg);

    const mmwsim::ResultTable table = mmwsim::run_sweep(cfg, threads);
    mmwsim::emit_csv(table, cfg.output_path);
    std::cout << "wrote " << table.samples.size() << " sample rows and "
              << table.summaries.size() << " summary rows to " << cfg.output_path << "\n";
    return 0;
}

int cmd_power_table(const std::string& config_path, const std::vector<int>& n_t_list,
                    const std::vector<int>& n_r_list, int k_users, int m_streams, int n_q) {
    mmwsim::SimConfig cfg =
        config_path.empty() ? mmwsim::SimConfig{} : mmwsim::load_config(config_path);
    if (n_q > 0) cfg.n_q = n_q;
    std::cout << "arch,n_t,n_t_rf,p_txc_w,n_r,n_r_rf,p_rxc_w,k,k_p_rxc_w,total_circuit_w\n";
    for (int n_t : n_t_list) {
        for (int n_r : n_r_list) {
            for (mmwsim::Architecture a : mmwsim::kAllArchitectures) {
                const mmwsim::RfChainCounts rf =
                    mmwsim::rf_chain_counts(a, n_t, n_r, k_users, m_streams);
                const double ptx =
                    mmwsim::tx_circuit_power(a, n_t, rf.tx, cfg.n_q, cfg.power);
                const double prx =
                    mmwsim::rx_circuit_power(a, n_r, rf.rx, cfg.n_q, cfg.power);
                std::cout << mmwsim::to_string(a) << ',' << n_t << ',' << rf.tx << ','
                          << mmwsim::format_g9(ptx) << ',' << n_r << ',' << rf.rx << ','
                          << mmwsim::format_g9(prx) << ',' << k_users << ','
                          << mmwsim::format_g9(k_users * prx) << ','
                          << mmwsim::format_g9(ptx + k_users * prx) << "\n";
            }
        }
    }
    return 0;
}

int cmd_validate(std::uint64_t seed, int instances) {
    const mmwsim::ValidationReport report = mmwsim::run_validation(seed, instances, &std::cout);
    std::cout << (report.ok() ? "all properties hold" : "property failures detected") << " ("
              << report.checks << " checks over " << report.instances << " instances)\n";
    return report.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Link-level Monte Carlo simulator comparing multi-user transceiver "
                 "architectures by spectral and energy efficiency"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 0;
    int drops = 0;
    std::string archs;
    int threads = 0;

    CLI::App* sweep = app.add_subcommand("sweep", "run a configured Monte Carlo sweep");
    sweep->add_option("--config", config_path, "JSON configuration file (defaults when omitted)");
    sweep->add_option("--out", out_path, "output CSV path (overrides config)");
    CLI::Option* seed_opt = sweep->add_option("--seed", seed, "base seed (overrides config)");
    sweep->add_option("--drops", drops, "drops per sweep point (overrides config)");
    sweep->add_option("--archs", archs, "comma-separated architecture tags (overrides config)");
    sweep->add_option("--threads", threads, "worker threads (default: hardware count)");

    std::vector<int> n_t_list{100};
    std::vector<int> n_r_list{30};
    int k_users = 10;
    int m_streams = 1;
    int n_q = 0;
    CLI::App* power = app.add_subcommand("power-table", "print circuit-power breakdowns");
    power->add_option("--config", config_path, "JSON configuration file (power constants)");
    power->add_option("--n-t", n_t_list, "transmit antenna counts")->delimiter(',');
    power->add_option("--n-r", n_r_list, "receive antenna counts")->delimiter(',');
    power->add_option("--k", k_users, "number of users");
    power->add_option("--m", m_streams, "streams per user");
    power->add_option("--n-q", n_q, "fixed-phase-shifter grid size");

    std::uint64_t v_seed = 1;
    int v_instances = 200;
    CLI::App* validate = app.add_subcommand("validate", "run the randomized invariant suite");
    validate->add_option("--seed", v_seed, "suite seed");
    validate->add_option("--instances", v_instances, "random instances");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep->parsed())
            return cmd_sweep(config_path, out_path, seed, seed_opt->count() > 0, drops, archs,
                             threads);
        if (power->parsed())
            return cmd_power_table(config_path, n_t_list, n_r_list, k_users, m_streams, n_q);
        if (validate->parsed()) return cmd_validate(v_seed, v_instances);
    } catch (const mmwsim::SimError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
