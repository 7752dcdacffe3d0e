#pragma once

#include <optional>
#include <vector>

#include "mmwsim/linalg.hpp"
#include "mmwsim/rng.hpp"

namespace mmwsim {

// Close-in path-loss model: PL_dB = ref_db + freq_slope_db*log10(f_GHz)
//                                 + 10*exponent*log10(d_m).
struct PathLossParams {
    double ref_db = 32.4;
    double freq_slope_db = 20.0;
    double nlos_exponent = 3.19;  // scattered paths
    double los_exponent = 2.0;    // direct path
};

enum class LosMode { off, forced_on };

struct ChannelParams {
    int n_t = 100;  // base-station antennas (ULA)
    int n_r = 30;   // user antennas (ULA)
    int n_cl = 2;   // scattering clusters
    int n_ray_per_cluster = 20;
    double carrier_freq_ghz = 73.0;
    double cell_radius_m = 100.0;
    double min_distance_m = 10.0;
    double angle_spread_deg = 5.0;  // per-ray Laplacian std dev around cluster center
    LosMode los_mode = LosMode::off;
    PathLossParams pathloss;
};

// One propagation component: complex gain, linear power attenuation and the
// departure/arrival angles seen by the transmit and receive arrays.
struct PathComponent {
    double aod = 0.0;  // radians in [-pi/2, pi/2]
    double aoa = 0.0;  // radians in [-pi/2, pi/2]
    Complex gain;      // CN(0,1) for scattered rays; unit-modulus rotation for the direct ray
    double attenuation = 1.0;  // linear power gain in [0, 1]
};

// Sampled geometry of one user's link. The direct component is drawn here
// (when enabled) so that channel assembly stays a deterministic function.
struct UserGeometry {
    double distance_m = 0.0;
    std::vector<PathComponent> paths;  // scattered rays, cluster-major order
    std::optional<PathComponent> los;  // present iff los_mode == forced_on
};

struct ChannelRealization {
    int n_t = 0;
    int n_r = 0;
    CMatrix h;              // n_r x n_t
    UserGeometry geometry;  // retained for path-based beamformers
};

// Unit-norm ULA steering vector; element m carries phase -pi*m*sin(angle).
CVector steering_vector(double angle_rad, int n_elements);

double path_loss_db(double distance_m, double carrier_freq_ghz,
                    const PathLossParams& pl = PathLossParams{}, bool los = false);

// Linear power gain 10^(-PL_dB/10).
double path_loss(double distance_m, double carrier_freq_ghz,
                 const PathLossParams& pl = PathLossParams{}, bool los = false);

// Thermal noise power in watts over the given bandwidth:
// 10^((noise_figure_db + noise_density_dbm_hz - 30)/10) * bandwidth_hz.
double noise_variance(double noise_figure_db, double noise_density_dbm_hz, double bandwidth_hz);

// Samples one user's link geometry: distance uniform in
// [min_distance_m, cell_radius_m]; per cluster a central AoD/AoA pair uniform
// in [-pi/2, pi/2]; per ray, Laplacian angle offsets (clipped to the sector)
// and a CN(0,1) gain; all rays share the link's distance attenuation.
UserGeometry draw_geometry(const ChannelParams& p, Rng& rng);

// Deterministically assembles the channel matrix from sampled geometry:
// h = gamma * sum_paths gain*sqrt(att) * a_r(aoa) a_t(aod)^H  (+ direct term),
// gamma = sqrt(n_r*n_t / #paths).
ChannelRealization assemble_channel(const ChannelParams& p, const UserGeometry& g);

// Convenience: draw + assemble for k_users independent users.
std::vector<ChannelRealization> draw_user_channels(const ChannelParams& p, int k_users, Rng& rng);

}  // namespace mmwsim
