#include "mmwsim/power.hpp"

#include <string>

#include "mmwsim/errors.hpp"

namespace mmwsim {

const char* to_string(Architecture a) {
    switch (a) {
        case Architecture::cm_fd: return "cm-fd";
        case Architecture::pzf_fd: return "pzf-fd";
        case Architecture::pzf_hy: return "pzf-hy";
        case Architecture::an: return "an";
        case Architecture::sw_phsh: return "sw-phsh";
        case Architecture::sw: return "sw";
    }
    throw ConfigError("unknown architecture tag value");
}

Architecture architecture_from_string(const std::string& tag) {
    for (Architecture a : kAllArchitectures)
        if (tag == to_string(a)) return a;
    throw ConfigError("unknown architecture tag '" + tag + "'");
}

void validate(const PowerConstants& c) {
    const double values[] = {c.p_rfc_mw, c.p_dac_mw, c.p_adc_mw,     c.p_pa_mw,
                             c.p_lna_mw, c.p_bb_mw,  c.p_ps_mw,      c.p_element_mw,
                             c.p_sw_mw,  c.p_ps_fixed_mw};
    for (double v : values)
        if (!(v > 0.0)) throw ConfigError("power constants must all be strictly positive");
    if (!(c.eta > 1.0)) throw ConfigError("amplifier inefficiency eta must exceed 1");
}

RfChainCounts rf_chain_counts(Architecture a, int n_t, int n_r, int k_users, int m_streams) {
    if (n_t < 1 || n_r < 1 || k_users < 1 || m_streams < 1)
        throw ConfigError("rf_chain_counts: dimensions must be >= 1");
    switch (a) {
        case Architecture::cm_fd:
        case Architecture::pzf_fd:
            return {n_t, n_r};
        case Architecture::pzf_hy:
        case Architecture::an:
        case Architecture::sw_phsh:
        case Architecture::sw:
            return {k_users * m_streams, m_streams};
    }
    throw ConfigError("unknown architecture tag value");
}

double tx_circuit_power(Architecture a, int n_t, int n_t_rf, int n_q, const PowerConstants& c) {
    if (n_t < 1 || n_t_rf < 1)
        throw ConfigError("tx_circuit_power: dimensions must be >= 1");
    const double nt = n_t;
    const double nrf = n_t_rf;
    double mw = 0.0;
    switch (a) {
        case Architecture::cm_fd:
        case Architecture::pzf_fd:
            mw = nt * (c.p_rfc_mw + c.p_dac_mw + c.p_pa_mw) + c.p_bb_mw;
            break;
        case Architecture::pzf_hy:
            mw = nrf * (c.p_rfc_mw + c.p_dac_mw + nt * c.p_ps_mw) + nt * c.p_pa_mw + c.p_bb_mw;
            break;
        case Architecture::an:
            mw = nrf * (c.p_rfc_mw + nt * c.p_element_mw + c.p_dac_mw);
            break;
        case Architecture::sw_phsh:
            if (n_q < 2) throw ConfigError("tx_circuit_power: n_q must be >= 2");
            mw = nrf * (c.p_rfc_mw + c.p_dac_mw + n_q * c.p_ps_fixed_mw) +
                 nt * (nrf * c.p_sw_mw + c.p_pa_mw) + c.p_bb_mw;
            break;
        case Architecture::sw:
            mw = nrf * (c.p_rfc_mw + c.p_dac_mw + c.p_sw_mw) + nrf * c.p_pa_mw + c.p_bb_mw;
            break;
    }
    return mw * 1e-3;
}

double rx_circuit_power(Architecture a, int n_r, int n_r_rf, int n_q, const PowerConstants& c) {
    if (n_r < 1 || n_r_rf < 1)
        throw ConfigError("rx_circuit_power: dimensions must be >= 1");
    const double nr = n_r;
    const double nrf = n_r_rf;
    double mw = 0.0;
    switch (a) {
        case Architecture::cm_fd:
        case Architecture::pzf_fd:
            mw = nr * (c.p_rfc_mw + c.p_adc_mw + c.p_lna_mw) + c.p_bb_mw;
            break;
        case Architecture::pzf_hy:
            mw = nrf * (c.p_rfc_mw + c.p_adc_mw + nr * c.p_ps_mw) + nr * c.p_lna_mw + c.p_bb_mw;
            break;
        case Architecture::an:
            mw = nrf * (c.p_rfc_mw + nr * c.p_element_mw + c.p_adc_mw);
            break;
        case Architecture::sw_phsh:
            if (n_q < 2) throw ConfigError("rx_circuit_power: n_q must be >= 2");
            mw = nrf * (c.p_rfc_mw + c.p_adc_mw + n_q * c.p_ps_fixed_mw) +
                 nr * (nrf * c.p_sw_mw + c.p_lna_mw) + c.p_bb_mw;
            break;
        case Architecture::sw:
            mw = nrf * (c.p_rfc_mw + c.p_adc_mw + c.p_sw_mw) + nrf * c.p_lna_mw + c.p_bb_mw;
            break;
    }
    return mw * 1e-3;
}

}  // namespace mmwsim
