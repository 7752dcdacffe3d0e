#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mmwsim/arch.hpp"
#include "mmwsim/channel.hpp"
#include "mmwsim/power.hpp"

namespace mmwsim {

// Full experiment description. Every field has a default reproducing the
// reference urban-canyon scenario, so an empty configuration file is valid.
struct SimConfig {
    std::vector<Architecture> architectures{kAllArchitectures.begin(), kAllArchitectures.end()};
    int k_users = 10;
    std::vector<int> m_streams{1, 3};
    std::vector<int> n_t_list{25, 50, 100, 150};
    std::vector<int> n_r_list{30};
    double p_t_dbw = 0.0;
    double bandwidth_hz = 5e8;
    double noise_figure_db = 3.0;
    double noise_density_dbm_hz = -174.0;
    int drops = 200;
    std::uint64_t base_seed = 1;

    // Architecture knobs.
    int n_q = 8;                   // fixed-phase-shifter grid size
    double an_min_sep_deg = 5.0;   // analog steering separation rule
    int bcd_max_iters = 100;       // hybrid factorization loop
    double bcd_rel_tol = 1e-4;
    Architecture approx_target = Architecture::pzf_fd;  // for sw / sw-phsh

    ChannelParams channel;  // n_t/n_r overridden per sweep point
    PowerConstants power;

    std::string output_path = "results.csv";
};

// Parses a JSON configuration; absent keys keep their defaults, unknown keys
// are rejected. Throws ConfigError on any problem.
SimConfig config_from_json_text(const std::string& text);
SimConfig load_config(const std::string& path);

// Canonical single-line JSON echo of a config (alphabetical keys); used for
// the output metadata block.
std::string config_to_json_text(const SimConfig& cfg);

// Cross-field validation (non-empty lists, positive counts, valid knobs).
void validate(const SimConfig& cfg);

}  // namespace mmwsim
