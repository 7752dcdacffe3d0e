#include "mmwsim/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mmwsim/errors.hpp"

namespace mmwsim {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.contains(it.key()))
            throw ConfigError("config: unknown key '" + it.key() + "' in " + where);
}

template <typename T>
void read(const json& obj, const char* key, T& out) {
    if (!obj.contains(key)) return;
    try {
        out = obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError("config: bad value for '" + std::string(key) + "': " + e.what());
    }
}

void read_pathloss(const json& obj, PathLossParams& pl) {
    reject_unknown_keys(obj, {"ref_db", "freq_slope_db", "nlos_exponent", "los_exponent"},
                        "channel.pathloss");
    read(obj, "ref_db", pl.ref_db);
    read(obj, "freq_slope_db", pl.freq_slope_db);
    read(obj, "nlos_exponent", pl.nlos_exponent);
    read(obj, "los_exponent", pl.los_exponent);
}

void read_channel(const json& obj, ChannelParams& ch) {
    reject_unknown_keys(obj,
                        {"n_cl", "n_ray_per_cluster", "cell_radius_m", "min_distance_m",
                         "angle_spread_deg", "los_mode", "pathloss"},
                        "channel");
    read(obj, "n_cl", ch.n_cl);
    read(obj, "n_ray_per_cluster", ch.n_ray_per_cluster);
    read(obj, "cell_radius_m", ch.cell_radius_m);
    read(obj, "min_distance_m", ch.min_distance_m);
    read(obj, "angle_spread_deg", ch.angle_spread_deg);
    if (obj.contains("los_mode")) {
        const std::string mode = obj.at("los_mode").get<std::string>();
        if (mode == "off")
            ch.los_mode = LosMode::off;
        else if (mode == "forced_on")
            ch.los_mode = LosMode::forced_on;
        else
            throw ConfigError("config: los_mode must be 'off' or 'forced_on', got '" + mode +
                              "'");
    }
    if (obj.contains("pathloss")) read_pathloss(obj.at("pathloss"), ch.pathloss);
}

void read_power(const json& obj, PowerConstants& pc) {
    reject_unknown_keys(obj,
                        {"p_rfc_mw", "p_dac_mw", "p_adc_mw", "p_pa_mw", "p_lna_mw", "p_bb_mw",
                         "p_ps_mw", "p_element_mw", "p_sw_mw", "p_ps_fixed_mw", "eta"},
                        "power");
    read(obj, "p_rfc_mw", pc.p_rfc_mw);
    read(obj, "p_dac_mw", pc.p_dac_mw);
    read(obj, "p_adc_mw", pc.p_adc_mw);
    read(obj, "p_pa_mw", pc.p_pa_mw);
    read(obj, "p_lna_mw", pc.p_lna_mw);
    read(obj, "p_bb_mw", pc.p_bb_mw);
    read(obj, "p_ps_mw", pc.p_ps_mw);
    read(obj, "p_element_mw", pc.p_element_mw);
    read(obj, "p_sw_mw", pc.p_sw_mw);
    read(obj, "p_ps_fixed_mw", pc.p_ps_fixed_mw);
    read(obj, "eta", pc.eta);
}

}  // namespace

SimConfig config_from_json_text(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: JSON parse failure: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config: top level must be a JSON object");

    reject_unknown_keys(root,
                        {"architectures", "k_users", "m_streams", "n_t", "n_r", "p_t_dbw",
                         "carrier_freq_ghz", "bandwidth_hz", "noise_figure_db",
                         "noise_density_dbm_hz", "drops", "base_seed", "n_q", "an_min_sep_deg",
                         "bcd_max_iters", "bcd_rel_tol", "approx_target", "channel", "power",
                         "output"},
                        "top level");

    SimConfig cfg;
    if (root.contains("architectures")) {
        std::vector<std::string> tags;
        read(root, "architectures", tags);
        cfg.architectures.clear();
        for (const auto& t : tags) cfg.architectures.push_back(architecture_from_string(t));
    }
    read(root, "k_users", cfg.k_users);
    read(root, "m_streams", cfg.m_streams);
    read(root, "n_t", cfg.n_t_list);
    read(root, "n_r", cfg.n_r_list);
    read(root, "p_t_dbw", cfg.p_t_dbw);
    read(root, "carrier_freq_ghz", cfg.channel.carrier_freq_ghz);
    read(root, "bandwidth_hz", cfg.bandwidth_hz);
    read(root, "noise_figure_db", cfg.noise_figure_db);
    read(root, "noise_density_dbm_hz", cfg.noise_density_dbm_hz);
    read(root, "drops", cfg.drops);
    read(root, "base_seed", cfg.base_seed);
    read(root, "n_q", cfg.n_q);
    read(root, "an_min_sep_deg", cfg.an_min_sep_deg);
    read(root, "bcd_max_iters", cfg.bcd_max_iters);
    read(root, "bcd_rel_tol", cfg.bcd_rel_tol);
    if (root.contains("approx_target")) {
        std::string tag;
        read(root, "approx_target", tag);
        cfg.approx_target = architecture_from_string(tag);
    }
    if (root.contains("channel")) read_channel(root.at("channel"), cfg.channel);
    if (root.contains("power")) read_power(root.at("power"), cfg.power);
    read(root, "output", cfg.output_path);

    validate(cfg);
    return cfg;
}

SimConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return config_from_json_text(buf.str());
}

std::string config_to_json_text(const SimConfig& cfg) {
    json root;  // nlohmann objects serialize with alphabetically sorted keys
    json archs = json::array();
    for (Architecture a : cfg.architectures) archs.push_back(to_string(a));
    root["architectures"] = archs;
    root["k_users"] = cfg.k_users;
    root["m_streams"] = cfg.m_streams;
    root["n_t"] = cfg.n_t_list;
    root["n_r"] = cfg.n_r_list;
    root["p_t_dbw"] = cfg.p_t_dbw;
    root["carrier_freq_ghz"] = cfg.channel.carrier_freq_ghz;
    root["bandwidth_hz"] = cfg.bandwidth_hz;
    root["noise_figure_db"] = cfg.noise_figure_db;
    root["noise_density_dbm_hz"] = cfg.noise_density_dbm_hz;
    root["drops"] = cfg.drops;
    root["base_seed"] = cfg.base_seed;
    root["n_q"] = cfg.n_q;
    root["an_min_sep_deg"] = cfg.an_min_sep_deg;
    root["bcd_max_iters"] = cfg.bcd_max_iters;
    root["bcd_rel_tol"] = cfg.bcd_rel_tol;
    root["approx_target"] = to_string(cfg.approx_target);
    root["channel"] = {
        {"n_cl", cfg.channel.n_cl},
        {"n_ray_per_cluster", cfg.channel.n_ray_per_cluster},
        {"cell_radius_m", cfg.channel.cell_radius_m},
        {"min_distance_m", cfg.channel.min_distance_m},
        {"angle_spread_deg", cfg.channel.angle_spread_deg},
        {"los_mode", cfg.channel.los_mode == LosMode::off ? "off" : "forced_on"},
        {"pathloss",
         {{"ref_db", cfg.channel.pathloss.ref_db},
          {"freq_slope_db", cfg.channel.pathloss.freq_slope_db},
          {"nlos_exponent", cfg.channel.pathloss.nlos_exponent},
          {"los_exponent", cfg.channel.pathloss.los_exponent}}},
    };
    root["power"] = {
        {"p_rfc_mw", cfg.power.p_rfc_mw},       {"p_dac_mw", cfg.power.p_dac_mw},
        {"p_adc_mw", cfg.power.p_adc_mw},       {"p_pa_mw", cfg.power.p_pa_mw},
        {"p_lna_mw", cfg.power.p_lna_mw},       {"p_bb_mw", cfg.power.p_bb_mw},
        {"p_ps_mw", cfg.power.p_ps_mw},         {"p_element_mw", cfg.power.p_element_mw},
        {"p_sw_mw", cfg.power.p_sw_mw},         {"p_ps_fixed_mw", cfg.power.p_ps_fixed_mw},
        {"eta", cfg.power.eta},
    };
    root["output"] = cfg.output_path;
    return root.dump();
}

void validate(const SimConfig& cfg) {
    if (cfg.architectures.empty()) throw ConfigError("config: architecture list is empty");
    std::set<Architecture> seen;
    for (Architecture a : cfg.architectures)
        if (!seen.insert(a).second)
            throw ConfigError(std::string("config: duplicate architecture '") + to_string(a) +
                              "'");
    if (cfg.k_users < 1) throw ConfigError("config: k_users must be >= 1");
    if (cfg.m_streams.empty()) throw ConfigError("config: m_streams list is empty");
    for (int m : cfg.m_streams)
        if (m < 1) throw ConfigError("config: stream counts must be >= 1");
    if (cfg.n_t_list.empty() || cfg.n_r_list.empty())
        throw ConfigError("config: antenna sweep lists must be non-empty");
    for (int n : cfg.n_t_list)
        if (n < 1) throw ConfigError("config: n_t values must be >= 1");
    for (int n : cfg.n_r_list)
        if (n < 1) throw ConfigError("config: n_r values must be >= 1");
    if (cfg.bandwidth_hz <= 0.0) throw ConfigError("config: bandwidth must be positive");
    if (cfg.drops < 1) throw ConfigError("config: drops must be >= 1");
    if (cfg.n_q < 2) throw ConfigError("config: n_q must be >= 2");
    if (cfg.an_min_sep_deg < 0.0) throw ConfigError("config: an_min_sep_deg must be >= 0");
    if (cfg.bcd_max_iters < 1) throw ConfigError("config: bcd_max_iters must be >= 1");
    if (cfg.bcd_rel_tol < 0.0) throw ConfigError("config: bcd_rel_tol must be >= 0");
    if (cfg.approx_target != Architecture::cm_fd && cfg.approx_target != Architecture::pzf_fd)
        throw ConfigError("config: approx_target must be cm-fd or pzf-fd");
    if (cfg.output_path.empty()) throw ConfigError("config: output path is empty");

    // Channel sanity (n_t/n_r are injected per sweep point, check the rest).
    ChannelParams probe = cfg.channel;
    probe.n_t = cfg.n_t_list.front();
    probe.n_r = cfg.n_r_list.front();
    if (probe.n_cl < 1 || probe.n_ray_per_cluster < 1)
        throw ConfigError("config: cluster and ray counts must be >= 1");
    if (probe.carrier_freq_ghz <= 0.0)
        throw ConfigError("config: carrier frequency must be positive");
    if (probe.min_distance_m <= 0.0)
        throw ConfigError("config: min_distance_m must be positive");
    if (!(probe.min_distance_m < probe.cell_radius_m))
        throw ConfigError("config: min_distance_m must be below cell_radius_m");
    if (probe.angle_spread_deg < 0.0)
        throw ConfigError("config: angle_spread_deg must be >= 0");
    validate(cfg.power);
}

}  // namespace mmwsim
