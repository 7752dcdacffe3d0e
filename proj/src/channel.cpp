#include "mmwsim/channel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mmwsim/errors.hpp"

namespace mmwsim {

namespace {

void check_params(const ChannelParams& p) {
    if (p.n_t < 1 || p.n_r < 1)
        throw ConfigError("channel: antenna counts must be >= 1");
    if (p.n_cl < 1 || p.n_ray_per_cluster < 1)
        throw ConfigError("channel: cluster and ray counts must be >= 1");
    if (p.carrier_freq_ghz <= 0.0)
        throw ConfigError("channel: carrier frequency must be positive");
    if (p.min_distance_m <= 0.0)
        throw ConfigError("channel: min_distance_m must be positive");
    if (!(p.min_distance_m < p.cell_radius_m))
        throw ConfigError("channel: min_distance_m must be below cell_radius_m");
    if (p.angle_spread_deg < 0.0)
        throw ConfigError("channel: angle_spread_deg must be non-negative");
}

}  // namespace

CVector steering_vector(double angle_rad, int n) {
    if (n < 1)
        throw ConfigError("steering_vector: need at least one element, got " + std::to_string(n));
    CVector a(n);
    const double c = -kPi * std::sin(angle_rad);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (int m = 0; m < n; ++m) a(m) = std::polar(scale, c * static_cast<double>(m));
    return a;
}

double path_loss_db(double distance_m, double carrier_freq_ghz, const PathLossParams& pl,
                    bool los) {
    if (distance_m <= 0.0)
        throw ConfigError("path_loss: distance must be positive");
    const double n = los ? pl.los_exponent : pl.nlos_exponent;
    return pl.ref_db + pl.freq_slope_db * std::log10(carrier_freq_ghz) +
           10.0 * n * std::log10(distance_m);
}

double path_loss(double distance_m, double carrier_freq_ghz, const PathLossParams& pl, bool los) {
    return std::pow(10.0, -path_loss_db(distance_m, carrier_freq_ghz, pl, los) / 10.0);
}

double noise_variance(double noise_figure_db, double noise_density_dbm_hz, double bandwidth_hz) {
    if (bandwidth_hz <= 0.0)
        throw ConfigError("noise_variance: bandwidth must be positive");
    return std::pow(10.0, (noise_figure_db + noise_density_dbm_hz - 30.0) / 10.0) * bandwidth_hz;
}

UserGeometry draw_geometry(const ChannelParams& p, Rng& rng) {
    check_params(p);
    const double half_pi = 0.5 * kPi;
    // Laplacian scale for the requested standard deviation (var = 2 b^2).
    const double b = (p.angle_spread_deg * kPi / 180.0) / std::sqrt(2.0);
    auto clip = [half_pi](double a) { return std::clamp(a, -half_pi, half_pi); };

    UserGeometry g;
    g.distance_m = rng.uniform(p.min_distance_m, p.cell_radius_m);
    const double att = path_loss(g.distance_m, p.carrier_freq_ghz, p.pathloss, false);
    g.paths.reserve(static_cast<std::size_t>(p.n_cl) * p.n_ray_per_cluster);
    for (int c = 0; c < p.n_cl; ++c) {
        const double aod_center = rng.uniform(-half_pi, half_pi);
        const double aoa_center = rng.uniform(-half_pi, half_pi);
        for (int r = 0; r < p.n_ray_per_cluster; ++r) {
            PathComponent pc;
            pc.aod = clip(aod_center + rng.laplacian(b));
            pc.aoa = clip(aoa_center + rng.laplacian(b));
            pc.gain = rng.complex_gaussian();
            pc.attenuation = att;
            g.paths.push_back(pc);
        }
    }
    if (p.los_mode == LosMode::forced_on) {
        PathComponent los;
        los.aod = rng.uniform(-half_pi, half_pi);
        los.aoa = rng.uniform(-half_pi, half_pi);
        los.gain = std::polar(1.0, rng.uniform(0.0, 2.0 * kPi));
        los.attenuation = path_loss(g.distance_m, p.carrier_freq_ghz, p.pathloss, true);
        g.los = los;
    }
    return g;
}

ChannelRealization assemble_channel(const ChannelParams& p, const UserGeometry& g) {
    check_params(p);
    if (g.paths.empty())
        throw ConfigError("assemble_channel: geometry has no paths");

    ChannelRealization ch;
    ch.n_t = p.n_t;
    ch.n_r = p.n_r;
    ch.geometry = g;

    const double gamma = std::sqrt(static_cast<double>(p.n_r) * static_cast<double>(p.n_t) /
                                   static_cast<double>(g.paths.size()));
    CMatrix h = CMatrix::Zero(p.n_r, p.n_t);
    for (const PathComponent& pc : g.paths) {
        const CVector ar = steering_vector(pc.aoa, p.n_r);
        const CVector at = steering_vector(pc.aod, p.n_t);
        h.noalias() += (pc.gain * std::sqrt(pc.attenuation)) * (ar * at.adjoint());
    }
    h *= gamma;
    if (g.los) {
        const PathComponent& pc = *g.los;
        const double s = std::sqrt(static_cast<double>(p.n_r) * static_cast<double>(p.n_t) *
                                   pc.attenuation);
        h.noalias() += (s * pc.gain) *
                       (steering_vector(pc.aoa, p.n_r) * steering_vector(pc.aod, p.n_t).adjoint());
    }
    ch.h = std::move(h);
    return ch;
}

std::vector<ChannelRealization> draw_user_channels(const ChannelParams& p, int k_users, Rng& rng) {
    if (k_users < 1)
        throw ConfigError("draw_user_channels: k_users must be >= 1");
    std::vector<ChannelRealization> out;
    out.reserve(k_users);
    for (int k = 0; k < k_users; ++k) out.push_back(assemble_channel(p, draw_geometry(p, rng)));
    return out;
}

}  // namespace mmwsim
