#pragma once

#include "mmwsim/arch.hpp"

namespace mmwsim {

// Per-component power draws (milliwatts) plus the amplifier inefficiency used
// in the energy-efficiency denominator. Overridable from the configuration
// file and echoed into output metadata.
struct PowerConstants {
    double p_rfc_mw = 40.0;      // one RF chain
    double p_dac_mw = 110.0;     // digital-to-analog converter
    double p_adc_mw = 200.0;     // analog-to-digital converter
    double p_pa_mw = 16.0;       // power amplifier
    double p_lna_mw = 30.0;      // low-noise amplifier
    double p_bb_mw = 243.0;      // baseband processor
    double p_ps_mw = 30.0;       // tunable phase shifter (hybrid RF stage)
    double p_element_mw = 27.0;  // active element of an analog phased array
    double p_sw_mw = 5.0;        // switch
    double p_ps_fixed_mw = 1.0;  // fixed (non-adaptive) phase shifter
    double eta = 2.0;            // amplifier inefficiency, > 1
};

// RF-chain counts implied by each architecture at the given dimensions:
// fully digital structures use one chain per antenna; the constrained
// structures use k_users*m_streams transmit chains and m_streams receive
// chains.
struct RfChainCounts {
    int tx = 0;
    int rx = 0;
};

RfChainCounts rf_chain_counts(Architecture a, int n_t, int n_r, int k_users, int m_streams);

// Transmitter circuit power in watts. n_q is the fixed-phase-shifter bank
// size (used by the switch+phase-shifter architecture only).
double tx_circuit_power(Architecture a, int n_t, int n_t_rf, int n_q, const PowerConstants& c);

// Receiver circuit power in watts (one user device).
double rx_circuit_power(Architecture a, int n_r, int n_r_rf, int n_q, const PowerConstants& c);

void validate(const PowerConstants& c);  // throws ConfigError on violation

}  // namespace mmwsim
